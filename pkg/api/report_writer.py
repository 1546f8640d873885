"""
报告输出：json / csv / table 三种格式，文件写入先落临时文件再原子替换
"""

import csv
import io
import json
import logging
import os
import sys
from typing import Any, Dict, Iterable, List, Optional

import aiofiles
import aiofiles.os

import config
from service.classify import EnumerationReport
from service.homotopy import PathResult
from utils.locales import Locale

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "table")

COUNT_CLASSES = {'p0': 'P0', 'p1_minus_p0': 'P1minusP0', 'pt': 'Pt'}

def _format_complex(z: complex, digits: int = 10) -> str:
    z = complex(z)
    if abs(z.imag) <= 10.0 ** -digits * max(1.0, abs(z)):
        return f"{z.real + 0.0:.{digits}g}"
    sign = '+' if z.imag >= 0 else '-'
    return f"{z.real + 0.0:.{digits}g}{sign}{abs(z.imag):.{digits}g}i"

class ReportWriter:
    """按格式渲染报告并写出"""

    def __init__(self, locale: Optional[Locale] = None):
        self.locale = locale or config.locale

    # ------------------------------------------------------------ 渲染

    def render_json(self, payload: Dict[str, Any]) -> str:
        # float 经 repr 输出：可精确往返的最短十进制，至多 17 位有效数字
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"

    def render_csv(self, report: EnumerationReport) -> str:
        """每行一个解：degree, class, multiplicity, residual, y1_re, y1_im, ..."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        header = ['degree', 'class', 'multiplicity', 'residual']
        for k in range(1, report.degree_n + 1):
            header += [f'y{k}_re', f'y{k}_im']
        writer.writerow(header)
        for s in report.solutions:
            row = [report.degree_n, s.class_tag.value, s.multiplicity, repr(s.residual)]
            for v in s.y:
                row += [repr(v.real + 0.0), repr(v.imag + 0.0)]
            writer.writerow(row)
        return buffer.getvalue()

    def render_table(self, report: EnumerationReport) -> str:
        """本地化表头的对齐文本表"""
        loc = self.locale
        header = [loc.column('index'), loc.column('class'), loc.column('multiplicity'),
                  loc.column('residual'), loc.column('real'), loc.column('coefficients')]
        rows = []
        for i, s in enumerate(report.solutions, start=1):
            rows.append([
                str(i),
                loc.klass(s.class_tag.value),
                str(s.multiplicity),
                f"{s.residual:.2e}",
                '✓' if s.is_real else '',
                ', '.join(_format_complex(v) for v in s.y),
            ])
        lines = [f"N = {report.degree_n}  {report.variant}  seed = {report.gamma_seed}"]
        lines.append(self._align([header] + rows) if rows else loc.audit('empty'))

        accounting = report.path_accounting
        lines.append("")
        lines.append(f"{loc.audit('paths')}: bezout={accounting.bezout} converged={accounting.converged} "
                     f"at_infinity={accounting.at_infinity} failed={accounting.failed}")
        counts = [[loc.klass(COUNT_CLASSES.get(key, key)), str(value)]
                  for key, value in report.counts.items()]
        lines.append(f"{loc.audit('summary')}:")
        lines.append(self._align([[loc.column('class'), loc.column('count')]] + counts))
        return "\n".join(lines) + "\n"

    def render_mapping(self, payload: Dict[str, Any]) -> str:
        """审计结果等嵌套字典的缩进文本"""
        lines: List[str] = []

        def walk(value, indent):
            pad = "  " * indent
            if isinstance(value, dict):
                for key, item in value.items():
                    if isinstance(item, (dict, list)) and item:
                        lines.append(f"{pad}{key}:")
                        walk(item, indent + 1)
                    else:
                        lines.append(f"{pad}{key}: {item}")
            elif isinstance(value, list):
                for item in value:
                    if isinstance(item, (dict, list)):
                        lines.append(f"{pad}-")
                        walk(item, indent + 1)
                    else:
                        lines.append(f"{pad}- {item}")
            else:
                lines.append(f"{pad}{value}")

        walk(payload, 0)
        return "\n".join(lines) + "\n"

    def render_bounds(self, payload: Dict[str, Any]) -> str:
        """上界审计：每个不等式一行（计数、上界、关系），其余审计项按缩进文本附后"""
        loc = self.locale
        bounds = payload['bounds']
        lines = [f"N = {payload['degree']}"]
        extra: Dict[str, Any] = {}
        if bounds.get('applicable'):
            header = [loc.column('index'), loc.column('count'), loc.column('bound'), loc.column('relation')]
            rows = [[name, str(item['count']), str(item['bound']), loc.audit(item['relation'])]
                    for name, item in bounds['inequalities'].items()]
            lines.append(self._align([header] + rows))
            extra.update({key: bounds[key] for key in ('strict', 'conditional_equalities') if bounds.get(key)})
        else:
            lines.append(loc.audit('not_applicable'))
        extra.update({key: value for key, value in payload.items()
                      if key not in ('degree', 'counts', 'bounds', 'passed')})
        if extra:
            lines.append(self.render_mapping(extra).rstrip("\n"))
        lines.append(self._verdict(payload['passed']))
        return "\n".join(lines) + "\n"

    def render_certificates(self, payload: Dict[str, Any]) -> str:
        """不可约性证书，每个多项式一行"""
        loc = self.locale
        lines = []
        for entry in payload['certificates']:
            if entry['irreducible']:
                verdict = f"{loc.audit('certificate')} {entry['prime']}"
            else:
                verdict = f"{loc.audit('inconclusive')} ({entry['inconclusive']}, p <= {entry['prime_bound']})"
            lines.append(f"{entry['source']}: {entry['poly']}  [{verdict}]")
        if not lines:
            lines.append(loc.audit('empty'))
        return "\n".join(lines) + "\n"

    def _verdict(self, passed: bool) -> str:
        return self.locale.audit('passed' if passed else 'failed')

    def render(self, fmt: str, payload: Dict[str, Any], report: Optional[EnumerationReport] = None) -> str:
        if fmt not in FORMATS:
            raise ValueError(f"unknown format {fmt}")
        if fmt == "json":
            return self.render_json(payload)
        if report is None:
            # 非普查命令没有逐解表格，csv 与 table 都退化为文本
            if isinstance(payload.get('bounds'), dict) and 'applicable' in payload['bounds']:
                return self.render_bounds(payload)
            if 'certificates' in payload:
                return self.render_certificates(payload)
            return self.render_mapping(payload)
        if fmt == "csv":
            return self.render_csv(report)
        return self.render_table(report)

    @staticmethod
    def _align(rows: List[List[str]]) -> str:
        widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
        return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows)

    # ------------------------------------------------------------ 写出

    @staticmethod
    def resolve(path: str) -> str:
        """相对路径落在 OUTPUT_DIR 下"""
        if os.path.isabs(path):
            return path
        return os.path.join(config.OUTPUT_DIR, path)

    async def write(self, text: str, path: Optional[str] = None) -> None:
        """写到 path（原子替换）或标准输出"""
        if not path:
            sys.stdout.write(text)
            sys.stdout.flush()
            return

        path = self.resolve(path)
        directory = os.path.dirname(path)
        await aiofiles.os.makedirs(directory, exist_ok=True)
        tmp_path = f"{path}.tmp"
        try:
            async with aiofiles.open(tmp_path, 'w', encoding='utf-8') as f:
                await f.write(text)
            await aiofiles.os.replace(tmp_path, path)
            logger.info(f"💾 报告已写入 {path}")
        except Exception:
            if await aiofiles.os.path.exists(tmp_path):
                await aiofiles.os.remove(tmp_path)
            raise

    async def write_trace(self, results: Iterable[PathResult], path: str) -> None:
        """逐行追踪日志：path=<i> step=<k> t=<t> h=<h> norm=<norm>"""
        lines = []
        for r in results:
            for step, t, h, norm in r.trace:
                lines.append(f"path={r.start_index} step={step} t={t!r} h={h!r} norm={norm!r}")
            lines.append(f"path={r.start_index} status={r.status.value} steps={r.steps_taken}")
        await self.write("\n".join(lines) + "\n", path)
