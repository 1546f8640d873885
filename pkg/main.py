"""
奇特多项式普查工具
"""

import argparse
import asyncio
import logging
import os
import sys
from dataclasses import dataclass, field, replace
from datetime import datetime
from functools import partial
from logging.handlers import RotatingFileHandler
from typing import Any, Dict, List, Optional, Tuple

import config
from api.report_writer import FORMATS, ReportWriter
from service.census_store import CensusStore
from service.classify import (BoundViolation, EnumerationReport, check_bounds, check_conjecture,
                              check_nonempty, check_recursion, solve_variant, stein_filter)
from service.homotopy import (AmbiguousClustering, BudgetExceeded, PathResult, Precision,
                              QualityFailure, TrackOptions)
from utils.intpoly import (KNOWN_ANSWER_RESIDUAL, Certificate, IntPoly, MismatchReport, certify_irreducible,
                           load_known_answers, verify_known_answers)
from utils.locales import Locale
from utils.poly_core import NonConvergence
from utils.systems import CapacityExceeded, Variant
from utils.tools import complex_pair

EXIT_OK = 0
EXIT_AUDIT = 1
EXIT_SOLVER = 2

COMMANDS = ("enumerate", "verify", "bounds", "stein", "conjecture", "irreducible")

SETS = {
    'all': Variant.FULL,
    'p0': Variant.P0_REDUCED,
    'p1': Variant.P1_REDUCED,
    'pt': Variant.TRUE_PECULIAR,
    'nonzero': Variant.NONZERO,
}

# 各命令支持的次数范围
DEGREE_RANGE = {
    'enumerate': (2, 8),
    'verify': (2, 4),
    'bounds': (3, 8),
    'stein': (2, 8),
    'conjecture': (4, 8),
}

AUDIT_FLAGS = ('accounting_balanced', 'partition', 'residual_certificate', 'conjugation_closed')

SOLVER_FAILURES = (QualityFailure, NonConvergence, AmbiguousClustering, BudgetExceeded, CapacityExceeded)

class DailyRotatingHandler(RotatingFileHandler):
    """按天切换的日志处理器"""

    def __init__(self, log_dir, encoding='utf-8'):
        self.log_dir = log_dir
        os.makedirs(log_dir, exist_ok=True)

        super().__init__(self._get_filename(), mode='a', maxBytes=0, backupCount=0, encoding=encoding)
        self.current_date = datetime.now().strftime("%Y-%m-%d")

    def _get_filename(self):
        today = datetime.now().strftime("%Y-%m-%d")
        return os.path.join(self.log_dir, f"{today}.log")

    def shouldRollover(self, record):
        return datetime.now().strftime("%Y-%m-%d") != self.current_date

    def doRollover(self):
        if self.stream:
            self.stream.close()
            self.stream = None

        self.current_date = datetime.now().strftime("%Y-%m-%d")
        self.baseFilename = self._get_filename()

        if not self.delay:
            self.stream = self._open()

def setup_logging(level: str = None):
    """日志写到按天切换的文件与 stderr，报告走 stdout"""
    for handler in logging.root.handlers[:]:
        logging.root.removeHandler(handler)

    logging.basicConfig(
        level=getattr(logging, (level or config.LOG_LEVEL), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            DailyRotatingHandler(config.LOG_DIR),
            logging.StreamHandler(sys.stderr),
        ]
    )

    # 第三方库日志级别
    for logger_name in ['numba', 'asyncio', 'aiosqlite']:
        logging.getLogger(logger_name).setLevel(logging.ERROR)

    return logging.getLogger()

logger = logging.getLogger(__name__)

@dataclass
class RunConfig:
    command: str
    degree_n: Optional[int] = None
    variant: Variant = Variant.FULL
    fmt: str = "json"
    out: Optional[str] = None
    options: TrackOptions = field(default_factory=TrackOptions.from_config)
    prime_bound: int = config.PRIME_BOUND
    trace: Optional[str] = None
    use_cache: bool = config.CENSUS_CACHE
    lang: str = config.LANG
    poly: Optional[str] = None
    known_answers: bool = False
    printed_eq_true: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command}")
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt}")
        if self.command in DEGREE_RANGE:
            low, high = DEGREE_RANGE[self.command]
            if self.degree_n is None or not low <= self.degree_n <= high:
                raise ValueError(f"{self.command} supports {low} <= N <= {high}, got {self.degree_n}")
        if self.command == "irreducible" and not (self.poly or self.known_answers):
            raise ValueError("irreducible needs --poly or --known-answers")
        if self.poly:
            IntPoly.parse(self.poly)

# ---------------------------------------------------------------- 命令行

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="peculiar", description="Census and audits of peculiar polynomials")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("-N", "--degree", type=int, dest="degree_n")
    parser.add_argument("--set", choices=sorted(SETS), default="all", dest="subset")
    parser.add_argument("--seed", type=int, default=config.GAMMA_SEED)
    parser.add_argument("--format", choices=FORMATS, default="json", dest="fmt")
    parser.add_argument("--out")
    parser.add_argument("--workers", type=int, default=config.WORKERS)
    parser.add_argument("--tol-accept", type=float, default=config.ACCEPT_TOL)
    parser.add_argument("--tol-dedup", type=float, default=config.DEDUP_TOL)
    parser.add_argument("--precision", choices=[p.value for p in Precision], default=config.REFINE_PRECISION)
    parser.add_argument("--prime-bound", type=int, default=config.PRIME_BOUND)
    parser.add_argument("--trace", metavar="PATH")
    parser.add_argument("--no-cache", action="store_true")
    parser.add_argument("--lang", choices=["en", "zh", "ja"], default=config.LANG)
    parser.add_argument("--poly", metavar="EXPR")
    parser.add_argument("--known-answers", action="store_true")
    parser.add_argument("--printed-eq-true", action="store_true")
    parser.add_argument("--tracking", choices=["projective", "affine"], default=config.TRACKING)
    parser.add_argument("--predictor", choices=["rk4", "euler"], default=config.PREDICTOR)
    return parser

def parse_args(argv: Optional[List[str]] = None) -> RunConfig:
    """解析参数；非法组合经 parser.error 退出"""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        options = replace(
            TrackOptions.from_config(),
            gamma_seed=args.seed,
            workers=args.workers,
            accept_tol=args.tol_accept,
            dedup_tol=args.tol_dedup,
            refine_precision=Precision(args.precision),
            tracking=args.tracking,
            predictor=args.predictor,
            trace=bool(args.trace),
        )
        return RunConfig(
            command=args.command,
            degree_n=args.degree_n,
            variant=SETS[args.subset],
            fmt=args.fmt,
            out=args.out,
            options=options,
            prime_bound=args.prime_bound,
            trace=args.trace,
            use_cache=config.CENSUS_CACHE and not args.no_cache,
            lang=args.lang,
            poly=args.poly,
            known_answers=args.known_answers,
            printed_eq_true=args.printed_eq_true,
        )
    except ValueError as e:
        parser.error(str(e))

# ---------------------------------------------------------------- 执行

class Runner:
    """按命令组织求解、审计与输出"""

    def __init__(self, run_config: RunConfig):
        self.config = run_config
        self.opts = run_config.options
        self.writer = ReportWriter(Locale(run_config.lang))
        self.store = CensusStore() if run_config.use_cache else None
        self.trace: List[PathResult] = []

    def _settings(self) -> Dict[str, Any]:
        settings: Dict[str, Any] = dict(self.opts.tolerances())
        settings.update({
            'precision': self.opts.refine_precision.value,
            'tracking': self.opts.tracking,
            'predictor': self.opts.predictor,
            'extended_dps': self.opts.extended_dps,
        })
        return settings

    async def census(self, variant: Variant, n: int, **build_kwargs) -> EnumerationReport:
        """求解一个变体；同步的求解放在线程池中运行，缓存命中时直接读取"""
        key = None
        if self.store is not None and not self.config.trace:
            settings = self._settings()
            settings.update(build_kwargs)
            key = CensusStore.make_key(variant.value, n, self.opts.gamma_seed, settings)
            cached = await self.store.load(key)
            if cached is not None:
                logger.info(f"📦 使用缓存 {variant.value} N={n}")
                return cached

        sink = self.trace if self.config.trace else None
        loop = asyncio.get_running_loop()
        report = await loop.run_in_executor(
            None, partial(solve_variant, variant, n, self.opts, None, sink, **build_kwargs))

        if key is not None:
            await self.store.save(key, report)
        return report

    def _build_kwargs(self, variant: Variant) -> Dict[str, Any]:
        if variant is Variant.TRUE_PECULIAR and self.config.printed_eq_true:
            return {'printed': True}
        return {}

    async def cmd_enumerate(self) -> Tuple[int, Dict[str, Any], Optional[EnumerationReport]]:
        variant = self.config.variant
        report = await self.census(variant, self.config.degree_n, **self._build_kwargs(variant))
        if variant is Variant.FULL:
            report.audits['nonempty'] = check_nonempty(report)
        failed = [name for name in AUDIT_FLAGS if report.audits.get(name) is False]
        if report.counts.get('unverified'):
            failed.append('unverified')
        if variant is Variant.FULL and not report.audits['nonempty']['passed']:
            failed.append('nonempty')
        payload = report.to_dict()
        if failed:
            payload['failed_audits'] = failed
            return EXIT_AUDIT, payload, report
        return EXIT_OK, payload, report

    async def cmd_verify(self):
        n = self.config.degree_n
        report = await self.census(Variant.FULL, n)
        try:
            audit = verify_known_answers(n, report, precision=self.opts.refine_precision.value,
                                         residual_tol=KNOWN_ANSWER_RESIDUAL)
        except MismatchReport as e:
            logger.error(f"❌ {e}")
            return EXIT_AUDIT, {'degree': n, 'passed': False, 'unmatched': _jsonable(e.unmatched)}, None
        return EXIT_OK, {'degree': n, 'passed': True, 'known_answers': audit}, None

    async def cmd_bounds(self):
        n = self.config.degree_n
        report = await self.census(Variant.FULL, n)
        try:
            bounds = check_bounds(report)
        except BoundViolation as e:
            logger.error(f"❌ {e}")
            return EXIT_AUDIT, {'degree': n, 'passed': False, 'violation': str(e), 'counts': report.counts}, None

        previous = await self.census(Variant.FULL, n - 1)
        recursion = check_recursion(report, previous)
        nonempty = check_nonempty(report)
        payload = {
            'degree': n,
            'counts': report.counts,
            'bounds': bounds,
            'recursion': recursion,
            'nonempty': nonempty,
        }
        payload['passed'] = bounds['passed'] and recursion and nonempty['passed']
        return (EXIT_OK if payload['passed'] else EXIT_AUDIT), payload, None

    async def cmd_stein(self):
        n = self.config.degree_n
        report = await self.census(Variant.FULL, n)
        survivors = stein_filter(report)
        payload = {
            'degree': n,
            'count': len(survivors),
            'solutions': [
                {'y': [v.real for v in s.y], 'class': s.class_tag.value, 'multiplicity': s.multiplicity}
                for s in survivors
            ],
        }
        return EXIT_OK, payload, None

    async def cmd_conjecture(self):
        n = self.config.degree_n
        full_report = await self.census(Variant.FULL, n)
        loop = asyncio.get_running_loop()
        summary = await loop.run_in_executor(
            None, partial(check_conjecture, n, self.opts, None, full_report))
        # 探测结论本身不是审计；只有与普查不一致才算失败
        census = summary.get('census', {})
        return (EXIT_OK if all(census.values()) else EXIT_AUDIT), summary, None

    async def cmd_irreducible(self):
        targets: List[Tuple[str, IntPoly]] = []
        if self.config.poly:
            targets.append(("poly", IntPoly.parse(self.config.poly)))
        if self.config.known_answers:
            for ka in load_known_answers():
                if ka.defining_poly.degree >= 2:
                    targets.append((f"N={ka.degree_n} {ka.class_tag.value}", ka.defining_poly))

        results = []
        for label, f in targets:
            outcome = certify_irreducible(f, self.config.prime_bound)
            entry = {'source': label, 'poly': str(f), 'degree': f.degree}
            if isinstance(outcome, Certificate):
                entry.update({'irreducible': True, 'prime': outcome.prime})
            else:
                entry.update({'irreducible': None, 'inconclusive': outcome.reason,
                              'prime_bound': outcome.prime_bound})
            results.append(entry)
            logger.info(f"🔍 {label}: {entry}")
        return EXIT_OK, {'prime_bound': self.config.prime_bound, 'certificates': results}, None

    async def run(self) -> int:
        handler = getattr(self, f"cmd_{self.config.command}")
        status, payload, report = await handler()
        text = self.writer.render(self.config.fmt, payload, report)
        await self.writer.write(text, self.config.out)
        if self.config.trace:
            await self.writer.write_trace(self.trace, self.config.trace)
        return status

def _jsonable(items) -> list:
    result = []
    for item in items:
        entry = dict(item)
        if 'y' in entry:
            entry['y'] = [complex_pair(v) for v in entry['y']]
        result.append(entry)
    return result

async def run(run_config: RunConfig) -> int:
    """执行一次命令，返回退出码"""
    try:
        return await Runner(run_config).run()
    except BoundViolation as e:
        logger.error(f"❌ 计数超出上界: {e}", exc_info=True)
        return EXIT_AUDIT
    except MismatchReport as e:
        logger.error(f"❌ 已知解不一致: {e}", exc_info=True)
        return EXIT_AUDIT
    except SOLVER_FAILURES as e:
        logger.error(f"❌ 求解失败: {e}", exc_info=True)
        return EXIT_SOLVER

async def main(argv: Optional[List[str]] = None) -> int:
    run_config = parse_args(argv)
    setup_logging()
    logger.info(f"🚀 {run_config.command} N={run_config.degree_n} seed={run_config.options.gamma_seed}")
    return await run(run_config)

if __name__ == "__main__":
    try:
        sys.exit(asyncio.run(main()))
    except KeyboardInterrupt:
        logger.info("🔴 程序已被用户中断")
        sys.exit(130)
