"""
普查与审计：奇特性复核、P0 / P1\\P0 / Pt 分类、计数上界、递推对应、Stein 实系数筛选
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional

import numpy as np

import config
from service.homotopy import PathAccounting, TrackOptions, Tracker, is_conjugation_closed, solve
from utils.poly_core import MonicPoly, NonConvergence, is_peculiar
from utils.systems import (ClassTag, SolutionPoint, Variant, build, build_p1_reduced, build_y1_one_subset,
                           residual, restrict)
from utils.tools import bottleneck_assignment, canonical_key, complex_pair, inf_norm, pair_complex, relative_distance

logger = logging.getLogger(__name__)

CLASS_ORDER = {ClassTag.P0: 0, ClassTag.P1_MINUS_P0: 1, ClassTag.PT: 2, ClassTag.UNCLASSIFIED: 3}

# 计数键 → 对应的上界
BOUND_COUNTS = {
    'ineq1': 'total_distinct',
    'ineq2': 'p0',
    'ineq3': 'p1',
    'ineq4': 'p_minus_p0',
    'ineq5': 'p1_minus_p0',
    'ineq6': 'pt',
}

class BoundViolation(AssertionError):
    """计数超出上界：求解器缺陷的信号"""

@dataclass
class EnumerationReport:
    degree_n: int
    variant: str
    solutions: List[SolutionPoint]
    counts: Dict[str, int]
    bounds: Dict[str, int]
    path_accounting: PathAccounting
    gamma_seed: int
    tolerances: Dict[str, float]
    audits: Dict[str, Any] = field(default_factory=dict)

    @property
    def verified(self) -> List[SolutionPoint]:
        return [s for s in self.solutions if s.verified is not False]

    def by_class(self, tag: ClassTag) -> List[SolutionPoint]:
        return [s for s in self.solutions if s.class_tag is tag]

    def to_dict(self) -> dict:
        """JSON 报告；复数为 [re, im]"""
        return {
            'schema_version': config.SCHEMA_VERSION,
            'tool_version': config.VERSION,
            'degree': self.degree_n,
            'variant': self.variant,
            'gamma_seed': self.gamma_seed,
            'tolerances': dict(self.tolerances),
            'path_accounting': self.path_accounting.to_dict(),
            'solutions': [
                {
                    'y': [complex_pair(v) for v in s.y],
                    'residual': s.residual,
                    'multiplicity': s.multiplicity,
                    'class': s.class_tag.value,
                    'is_real': s.is_real,
                    'verified': s.verified,
                }
                for s in self.solutions
            ],
            'counts': dict(self.counts),
            'bounds': dict(self.bounds),
            'audits': self.audits,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'EnumerationReport':
        if data.get('schema_version') != config.SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {data.get('schema_version')}")
        accounting = data['path_accounting']
        solutions = []
        for item in data['solutions']:
            y = [pair_complex(v) for v in item['y']]
            solutions.append(SolutionPoint(
                y=tuple(y),
                coords=tuple(y),
                residual=float(item['residual']),
                multiplicity=int(item['multiplicity']),
                class_tag=ClassTag(item['class']),
                is_real=bool(item['is_real']),
                verified=item.get('verified'),
            ))
        return cls(
            degree_n=int(data['degree']),
            variant=data['variant'],
            solutions=solutions,
            counts=dict(data['counts']),
            bounds=dict(data['bounds']),
            path_accounting=PathAccounting(
                accounting['bezout'], accounting['converged'], accounting['at_infinity'],
                accounting['failed'], int(data['gamma_seed'])),
            gamma_seed=int(data['gamma_seed']),
            tolerances=dict(data['tolerances']),
            audits=dict(data.get('audits', {})),
        )

def bound_values(n: int) -> Dict[str, int]:
    """六个计数上界；N < 3 时不适用"""
    if n < 3:
        return {}
    f1 = math.factorial(n - 1)
    f2 = math.factorial(n - 2)
    return {
        'ineq1': math.factorial(n),
        'ineq2': f1,
        'ineq3': f1,
        'ineq4': (n - 1) * f1,
        'ineq5': (n - 2) * f2,
        'ineq6': (n * n - 3 * n + 3) * f2,
    }

def _scale(y) -> float:
    return max(1.0, inf_norm(y))

def classify_solution(p: SolutionPoint, tol: float) -> ClassTag:
    """优先级 P0 → P1\\P0 → Pt，容差相对于 max(1, ‖y‖∞)"""
    y = np.asarray(p.y, dtype=np.complex128)
    limit = tol * _scale(y)
    if np.any(np.abs(y) <= limit):
        return ClassTag.P0
    if np.any(np.abs(y - 1.0) <= limit):
        return ClassTag.P1_MINUS_P0
    return ClassTag.PT

def _has_unit(p: SolutionPoint, tol: float) -> bool:
    y = np.asarray(p.y, dtype=np.complex128)
    return bool(np.any(np.abs(y - 1.0) <= tol * _scale(y)))

def _verify(p: SolutionPoint, tol: float) -> bool:
    try:
        return is_peculiar(MonicPoly(p.y), tol)
    except NonConvergence as e:
        logger.warning(f"⚠️ 复核求根失败 {canonical_key(p.y, 8)}: {e}")
        return False

def _sort_key(p: SolutionPoint):
    return CLASS_ORDER[p.class_tag], canonical_key(p.y, 10)

def _counts(solutions: List[SolutionPoint], tol: float) -> Dict[str, int]:
    verified = [s for s in solutions if s.verified]
    tags = [s.class_tag for s in verified]
    counts = {
        'total_distinct': len(verified),
        'p0': tags.count(ClassTag.P0),
        'p1_minus_p0': tags.count(ClassTag.P1_MINUS_P0),
        'pt': tags.count(ClassTag.PT),
        'p1': sum(1 for s in verified if _has_unit(s, tol)),
        'unverified': len(solutions) - len(verified),
    }
    counts['p_minus_p0'] = counts['total_distinct'] - counts['p0']
    return counts

def build_report(variant: Variant, n: int, solutions: List[SolutionPoint],
                 accounting: PathAccounting, opts: TrackOptions) -> EnumerationReport:
    """复核、分类、计数并附上基本审计"""
    tol = opts.dedup_tol
    tagged = []
    for s in solutions:
        ok = _verify(s, tol)
        tag = classify_solution(s, tol) if ok else ClassTag.UNCLASSIFIED
        tagged.append(replace(s, class_tag=tag, verified=ok))
    tagged.sort(key=_sort_key)

    tolerances = opts.tolerances()
    report = EnumerationReport(
        degree_n=n,
        variant=Variant(variant).value,
        solutions=tagged,
        counts=_counts(tagged, tol),
        bounds=bound_values(n),
        path_accounting=accounting,
        gamma_seed=accounting.gamma_seed,
        tolerances=tolerances,
    )
    report.counts['real_all_nonzero'] = len(stein_filter(report))

    multiplicities = sorted((s.multiplicity for s in tagged), reverse=True)
    report.audits.update({
        'accounting_balanced': accounting.balanced,
        'partition': report.counts['p0'] + report.counts['p1_minus_p0'] + report.counts['pt']
                     == report.counts['total_distinct'],
        'multiplicity_sum': sum(multiplicities),
        'multiple_points': [canonical_key(s.y, 8) for s in tagged if s.multiplicity > 1],
        'residual_certificate': all(s.residual <= opts.accept_tol for s in tagged),
        'conjugation_closed': is_conjugation_closed([s.y for s in tagged], tol),
        'unverified': report.counts['unverified'],
    })
    if report.counts['unverified']:
        logger.warning(f"⚠️ N={n}: {report.counts['unverified']} 个解未通过奇特性复核")
    return report

def enumerate_degree(n: int, opts: Optional[TrackOptions] = None,
                     tracker: Optional[Tracker] = None, trace_sink: Optional[list] = None) -> EnumerationReport:
    """完整方程组的普查"""
    if not 2 <= n <= 8:
        raise ValueError(f"enumeration supports 2 <= N <= 8, got {n}")
    return solve_variant(Variant.FULL, n, opts, tracker, trace_sink)

def solve_variant(variant: Variant, n: int, opts: Optional[TrackOptions] = None,
                  tracker: Optional[Tracker] = None, trace_sink: Optional[list] = None,
                  **build_kwargs) -> EnumerationReport:
    """任一方程组变体的求解报告，端点嵌入为完整系数向量后复核"""
    opts = opts or TrackOptions.from_config()
    system = build(variant, n, **build_kwargs)
    solutions, accounting = solve(system, opts, tracker, trace_sink)
    report = build_report(variant, n, solutions, accounting, opts)
    logger.info(f"✅ {report.variant} N={n}: {report.counts}")
    return report

# ---------------------------------------------------------------- 审计

def _match_sets(a: List[np.ndarray], b: List[np.ndarray], tol: float) -> bool:
    """两组向量能否在相对距离 tol 内一一对应"""
    if len(a) != len(b):
        return False
    if not a:
        return True
    dist = np.array([[relative_distance(x, y) for y in b] for x in a])
    _, _, worst = bottleneck_assignment(dist)
    return worst <= tol

def check_recursion(r_n: EnumerationReport, r_prev: EnumerationReport) -> bool:
    """p_N(z) = z·p_{N−1}(z)：上一阶的全部解补零后恰为本阶的 P0 解"""
    if r_n.degree_n != r_prev.degree_n + 1:
        raise ValueError(f"check_recursion needs consecutive degrees, got {r_prev.degree_n} and {r_n.degree_n}")
    tol = r_n.tolerances.get('dedup', config.DEDUP_TOL)
    lifted = [np.append(np.asarray(s.y, dtype=np.complex128), 0.0) for s in r_prev.verified]
    p0 = [np.asarray(s.y, dtype=np.complex128) for s in r_n.by_class(ClassTag.P0)]
    return _match_sets(lifted, p0, tol)

def _relation(count: int, bound: int) -> str:
    if count > bound:
        return 'violated'
    return 'equal' if count == bound else 'strict'

def check_bounds(r: EnumerationReport) -> Dict[str, Any]:
    """
    核对六个上界与严格不等式

    同时按两种读法报告条件性等式：正文读法（ineq1–3 取等）与结论读法（ineq4–6 取等），
    后者与严格不等式相容。

    Raises:
        BoundViolation: 某计数超出上界
    """
    n = r.degree_n
    if n < 3:
        return {'applicable': False, 'passed': True}

    bounds = bound_values(n)
    inequalities = {}
    for name, key in BOUND_COUNTS.items():
        count = r.counts[key]
        inequalities[name] = {'count': count, 'bound': bounds[name], 'relation': _relation(count, bounds[name])}

    violated = [name for name, item in inequalities.items() if item['relation'] == 'violated']
    if violated:
        raise BoundViolation(f"N={n}: counts exceed bounds {violated}: {inequalities}")

    strict = {}
    if n == 4:
        strict['strict1'] = r.counts['p1_minus_p0'] == 3 and inequalities['ineq5']['relation'] == 'strict'
    if n >= 4:
        strict['strict2'] = inequalities['ineq1']['relation'] == 'strict'
        strict['strict3'] = inequalities['ineq3']['relation'] == 'strict'

    readings = None
    if n >= 5:
        def equalities(names):
            return all(inequalities[name]['relation'] == 'equal' for name in names)
        readings = {
            'text': {'inequalities': ['ineq1', 'ineq2', 'ineq3'],
                     'holds': equalities(['ineq1', 'ineq2', 'ineq3'])},
            'conclusions': {'inequalities': ['ineq4', 'ineq5', 'ineq6'],
                            'holds': equalities(['ineq4', 'ineq5', 'ineq6'])},
            'consistent_reading': 'conclusions',
        }

    return {
        'applicable': True,
        'inequalities': inequalities,
        'strict': strict,
        'conditional_equalities': readings,
        'passed': all(strict.values()),
    }

def check_nonempty(r: EnumerationReport) -> Dict[str, Any]:
    """N ≥ 3 时三个子集均非空；N = 2 的 Pt 为空集，豁免"""
    counts = {key: r.counts[key] for key in ('p0', 'p1_minus_p0', 'pt')}
    if r.degree_n < 3:
        return {'applicable': False, 'counts': counts, 'pt_empty': counts['pt'] == 0, 'passed': True}
    return {'applicable': True, 'counts': counts, 'passed': all(v > 0 for v in counts.values())}

def stein_filter(r: EnumerationReport, tol: Optional[float] = None) -> List[SolutionPoint]:
    """系数全为实数且全不为零的解"""
    tol = r.tolerances.get('dedup', config.DEDUP_TOL) if tol is None else tol
    result = []
    for s in r.verified:
        y = np.asarray(s.y, dtype=np.complex128)
        limit = tol * _scale(y)
        if np.all(np.abs(y.imag) <= limit) and np.all(np.abs(y) > limit):
            result.append(s)
    return result

def cross_system_consistency(full_report: EnumerationReport, p1_report: EnumerationReport) -> bool:
    """完整方程组的 P1\\P0 解与 P1NonZero 方程组中 y_N ≠ 0 的解一一对应"""
    if full_report.degree_n != p1_report.degree_n:
        raise ValueError("reports concern different degrees")
    tol = full_report.tolerances.get('dedup', config.DEDUP_TOL)
    full_side = [np.asarray(s.y, dtype=np.complex128) for s in full_report.by_class(ClassTag.P1_MINUS_P0)]
    reduced_side = [np.asarray(s.y, dtype=np.complex128) for s in p1_report.solutions
                    if abs(s.y[-1]) > tol * _scale(s.y)]
    return _match_sets(full_side, reduced_side, tol)

def check_conjecture(n: int, opts: Optional[TrackOptions] = None, tracker: Optional[Tracker] = None,
                     full_report: Optional[EnumerationReport] = None) -> Dict[str, Any]:
    """
    独立求解 P1NonZero 与 Pt 方程组，核对条件性计数并检查退化解

    退化解（y_N ≈ 0 或 y_{N−1} ≈ −1）的出现与不可约性假设矛盾；N = 4 时确实出现。
    """
    if n < 4:
        raise ValueError(f"check_conjecture requires N >= 4, got {n}")
    opts = opts or TrackOptions.from_config()
    tol = opts.dedup_tol
    f2 = math.factorial(n - 2)

    p1_report = solve_variant(Variant.P1_NONZERO, n, opts, tracker)
    pt_report = solve_variant(Variant.TRUE_PECULIAR, n, opts, tracker)

    def near(s: SolutionPoint, index: int, value: float) -> bool:
        return abs(s.y[index] - value) <= tol * _scale(s.y)

    p1_distinct = len(p1_report.solutions)
    degenerate = {
        'y_n_zero': sum(1 for s in p1_report.solutions if near(s, n - 1, 0.0)),
        'y_n_minus_1_minus_one': sum(1 for s in p1_report.solutions if near(s, n - 2, -1.0)),
    }
    pt_true = len(pt_report.by_class(ClassTag.PT))

    # P1NonZero 的解须同时满足 P1 约化方程组与 y_1 = y_0 子集的仿射图
    subsets = {}
    for name, system in (('p1_reduced', build_p1_reduced(n)), ('y1_one_chart', build_y1_one_subset(n))):
        subsets[name] = all(residual(system, restrict(system, s.y)) <= opts.accept_tol
                            for s in p1_report.solutions)
    summary = {
        'degree': n,
        'p1_nonzero': {
            'distinct': p1_distinct,
            'expected': (n - 2) * f2,
            'path_accounting': p1_report.path_accounting.to_dict(),
        },
        'pt': {
            'distinct': len(pt_report.solutions),
            'truly_peculiar': pt_true,
            'expected': (n * n - 3 * n + 3) * f2,
            'path_accounting': pt_report.path_accounting.to_dict(),
        },
        'degenerate': degenerate,
        'subsets': subsets,
    }
    summary['consistent'] = (
        p1_distinct - degenerate['y_n_zero'] == summary['p1_nonzero']['expected']
        and pt_true == summary['pt']['expected']
        and not any(degenerate.values())
        and all(subsets.values())
    )
    if full_report is not None:
        summary['census'] = {
            'p1_minus_p0': full_report.counts['p1_minus_p0'] == p1_distinct - degenerate['y_n_zero'],
            'pt': full_report.counts['pt'] == pt_true,
            'cross_system': cross_system_consistency(full_report, p1_report),
        }
    logger.info(f"🔄 N={n} 猜想探测: {summary['consistent']}")
    return summary
