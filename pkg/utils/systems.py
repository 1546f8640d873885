"""
各代数方程组的显式构造：稀疏多元多项式、求值、Jacobian、次数与 Bézout 数

方程在 sympy 中以整数系数精确展开，再转为项列表；
浮点转换只发生在 compile() 生成的数值核数组里。
"""

import logging
import math
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from utils import kernels

logger = logging.getLogger(__name__)

MAX_DEGREE_N = 10

class CapacityExceeded(ValueError):
    """项数超出容量（N > 10）"""

class DimensionMismatch(ValueError):
    """向量长度与未知数个数不符"""

class Variant(str, Enum):
    FULL = "Full"
    P0_REDUCED = "P0Reduced"
    P1_REDUCED = "P1Reduced"
    NONZERO = "NonZero"
    P1_NONZERO = "P1NonZero"
    TRUE_PECULIAR = "TruePeculiar"
    Y1_ONE_SUBSET = "Y1OneSubset"
    START = "TotalDegreeStart"

Term = Tuple[Tuple[int, ...], Fraction]

@dataclass(frozen=True)
class MultiPoly:
    """稀疏多元多项式：(指数向量, 精确有理系数) 项列表"""
    num_vars: int
    terms: Tuple[Term, ...]

    def __post_init__(self):
        merged: Dict[Tuple[int, ...], Fraction] = {}
        for exps, coef in self.terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.num_vars:
                raise ValueError(f"exponent vector {exps} does not match {self.num_vars} variables")
            merged[exps] = merged.get(exps, Fraction(0)) + Fraction(coef)
        cleaned = tuple(sorted(((e, c) for e, c in merged.items() if c != 0), reverse=True))
        object.__setattr__(self, 'terms', cleaned)

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> 'MultiPoly':
        terms = [(monom, Fraction(int(c.p), int(c.q))) for monom, c in poly.terms()]
        return cls(len(poly.gens), tuple(terms))

    @property
    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(exps) for exps, _ in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(exps) for exps, _ in self.terms}) <= 1

    def evaluate(self, y: Sequence[complex]) -> complex:
        """逐项复数求值"""
        total = 0j
        for exps, coef in self.terms:
            m = complex(coef)
            for value, e in zip(y, exps):
                if e:
                    m *= complex(value) ** e
            total += m
        return total

    def evaluate_exact(self, point: Sequence[Fraction]) -> Fraction:
        """有理点上的精确求值"""
        total = Fraction(0)
        for exps, coef in self.terms:
            m = coef
            for value, e in zip(point, exps):
                if e:
                    m *= Fraction(value) ** e
            total += m
        return total

@dataclass(frozen=True)
class CompiledSystem:
    """数值核使用的扁平数组"""
    coeffs: np.ndarray
    exps: np.ndarray
    owners: np.ndarray
    n_eq: int
    degrees: np.ndarray

    def eval(self, y: np.ndarray) -> np.ndarray:
        return kernels.eval_terms(self.coeffs, self.exps, self.owners, self.n_eq, y)

    def eval_jac(self, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return kernels.eval_jac_terms(self.coeffs, self.exps, self.owners, self.n_eq, y)

@dataclass(frozen=True)
class AlgebraicSystem:
    """方程组：变体、次数 N、未知数、方程及固定坐标"""
    variant: Variant
    degree_n: int
    unknowns: Tuple[str, ...]
    equations: Tuple[MultiPoly, ...]
    # 嵌入完整系数向量时补回的坐标：(下标 k, 值) 表示 y_k 固定
    fixed: Tuple[Tuple[int, int], ...] = ()
    projective: bool = False
    note: str = field(default="", compare=False)

    def __post_init__(self):
        for eq in self.equations:
            if eq.num_vars != len(self.unknowns):
                raise ValueError(f"equation has {eq.num_vars} variables, system has {len(self.unknowns)}")
        expected = len(self.unknowns) - (1 if self.projective else 0)
        if len(self.equations) != expected:
            raise ValueError(f"{self.variant.value}: {len(self.equations)} equations for {expected} unknowns")

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(eq.total_degree for eq in self.equations)

    @property
    def bezout(self) -> int:
        return math.prod(self.degrees)

    @property
    def num_unknowns(self) -> int:
        return len(self.unknowns)

    @cached_property
    def compiled(self) -> CompiledSystem:
        return compile_system(self)

class ClassTag(str, Enum):
    P0 = "P0"
    P1_MINUS_P0 = "P1minusP0"
    PT = "Pt"
    UNCLASSIFIED = "Unclassified"

@dataclass(frozen=True)
class SolutionPoint:
    """方程组的一个解：完整系数向量 y_1..y_N 与未知数坐标"""
    y: Tuple[complex, ...]
    coords: Tuple[complex, ...]
    residual: float
    multiplicity: int = 1
    class_tag: ClassTag = ClassTag.UNCLASSIFIED
    is_real: bool = False
    # 独立求根复核结果，未复核为 None
    verified: Optional[bool] = None

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError(f"multiplicity must be >= 1, got {self.multiplicity}")
        object.__setattr__(self, 'y', tuple(complex(v) for v in self.y))
        object.__setattr__(self, 'coords', tuple(complex(v) for v in self.coords))

def compile_system(s: AlgebraicSystem) -> CompiledSystem:
    """展平为 numba 核可用的数组"""
    coeffs, exps, owners = [], [], []
    for row, eq in enumerate(s.equations):
        for e, c in eq.terms:
            coeffs.append(complex(c))
            exps.append(e)
            owners.append(row)
    n_vars = s.num_unknowns
    return CompiledSystem(
        coeffs=np.ascontiguousarray(coeffs, dtype=np.complex128),
        exps=np.ascontiguousarray(np.reshape(exps, (len(exps), n_vars)), dtype=np.int64),
        owners=np.ascontiguousarray(owners, dtype=np.int64),
        n_eq=len(s.equations),
        degrees=np.asarray(s.degrees, dtype=np.int64),
    )

# ---------------------------------------------------------------- 构造工具

def _check_capacity(n: int, minimum: int) -> None:
    if n < minimum:
        raise ValueError(f"degree N={n} below the minimum {minimum} for this system")
    if n > MAX_DEGREE_N:
        raise CapacityExceeded(f"degree N={n} exceeds the supported maximum {MAX_DEGREE_N}")

def _generators(names: Sequence[str]):
    gens = sympy.symbols(list(names))
    polys = [sympy.Poly(g, *gens, domain='ZZ') for g in gens]
    return gens, polys

def _elementary(values: Sequence[sympy.Poly], one: sympy.Poly) -> List[sympy.Poly]:
    """递推 e_m(v_1..v_k) = e_m(v_1..v_{k−1}) + v_k·e_{m−1}(v_1..v_{k−1})，返回 e_0..e_K"""
    e = [one] + [one * 0 for _ in values]
    for k, v in enumerate(values, start=1):
        for m in range(k, 0, -1):
            e[m] = e[m] + v * e[m - 1]
    return e

def _product(values: Sequence[sympy.Poly], one: sympy.Poly) -> sympy.Poly:
    result = one
    for v in values:
        result = result * v
    return result

def _make(variant: Variant, n: int, names: Sequence[str], polys: Sequence[sympy.Poly],
          fixed=(), projective: bool = False, note: str = "") -> AlgebraicSystem:
    return AlgebraicSystem(
        variant=variant,
        degree_n=n,
        unknowns=tuple(names),
        equations=tuple(MultiPoly.from_sympy(p) for p in polys),
        fixed=tuple(fixed),
        projective=projective,
        note=note,
    )

def _names(first: int, last: int) -> List[str]:
    return [f"y{k}" for k in range(first, last + 1)]

# ---------------------------------------------------------------- 各方程组

def build_full(n: int) -> AlgebraicSystem:
    """σ_m(y) = (−1)^m y_m，1 ≤ m ≤ N"""
    _check_capacity(n, 1)
    names = _names(1, n)
    gens, ys = _generators(names)
    one = sympy.Poly(1, *gens, domain='ZZ')
    e = _elementary(ys, one)
    eqs = [e[m] - (-1) ** m * ys[m - 1] for m in range(1, n + 1)]
    return _make(Variant.FULL, n, names, eqs)

def build_p0_reduced(n: int) -> AlgebraicSystem:
    """y_N = 0 代入，去掉 m = N 的恒等式"""
    _check_capacity(n, 2)
    names = _names(1, n - 1)
    gens, ys = _generators(names)
    one = sympy.Poly(1, *gens, domain='ZZ')
    e = _elementary(ys, one)
    eqs = [e[m] - (-1) ** m * ys[m - 1] for m in range(1, n)]
    return _make(Variant.P0_REDUCED, n, names, eqs, fixed=((n, 0),))

def build_p1_reduced(n: int) -> AlgebraicSystem:
    """y_1 = 1 仿射图上的 P1 方程组，去掉多余的 m = N 方程"""
    _check_capacity(n, 3)
    names = _names(2, n)
    gens, ys = _generators(names)
    one = sympy.Poly(1, *gens, domain='ZZ')
    e = _elementary([one] + ys, one)
    # σ_1(1, y_2..y_N) = −1
    eqs = [e[1] + 1]
    eqs += [e[m] - (-1) ** m * ys[m - 2] for m in range(2, n)]
    return _make(Variant.P1_REDUCED, n, names, eqs, fixed=((1, 1),))

def build_nonzero(n: int) -> AlgebraicSystem:
    """m = N 方程两边除以 y_N"""
    _check_capacity(n, 3)
    names = _names(1, n)
    gens, ys = _generators(names)
    one = sympy.Poly(1, *gens, domain='ZZ')
    e = _elementary(ys, one)
    eqs = [e[m] - (-1) ** m * ys[m - 1] for m in range(1, n)]
    eqs.append(_product(ys[:n - 1], one) - (-1) ** n)
    return _make(Variant.NONZERO, n, names, eqs)

def build_p1_nonzero(n: int) -> AlgebraicSystem:
    """P1\\P0 方程组：y_2+…+y_N = −2，σ_m(1,y_2,…) = (−1)^m y_m，y_2···y_{N−1} = (−1)^N"""
    _check_capacity(n, 4)
    names = _names(2, n)
    gens, ys = _generators(names)
    one = sympy.Poly(1, *gens, domain='ZZ')
    e = _elementary([one] + ys, one)
    eqs = [sum(ys[1:], ys[0]) + 2]
    eqs += [e[m] - (-1) ** m * ys[m - 2] for m in range(2, n - 1)]
    eqs.append(_product(ys[:n - 2], one) - (-1) ** n)
    return _make(Variant.P1_NONZERO, n, names, eqs, fixed=((1, 1),))

def build_pt(n: int, printed: bool = False) -> AlgebraicSystem:
    """
    真奇特多项式满足的方程组

    最后一个方程由 p(y_1) 减去 m = 1 方程再除以 y_1 − 1 得到：
    2y_1 Σ_{l=0}^{N−2} y_1^l + Σ_{k=2}^{N−1} y_k Σ_{l=0}^{N−k−1} y_1^l = 0。
    printed=True 时 k 从 1 开始（排印形式，P_t 的点不满足它）。
    """
    _check_capacity(n, 3)
    names = _names(1, n)
    gens, ys = _generators(names)
    one = sympy.Poly(1, *gens, domain='ZZ')
    e = _elementary(ys, one)
    y1 = ys[0]

    def geometric(top: int) -> sympy.Poly:
        total = one * 0
        power = one
        for _ in range(top + 1):
            total = total + power
            power = power * y1
        return total

    eqs = [e[m] - (-1) ** m * ys[m - 1] for m in range(1, n - 1)]
    eqs.append(_product(ys[:n - 1], one) - (-1) ** n)
    last = 2 * y1 * geometric(n - 2)
    first_k = 1 if printed else 2
    for k in range(first_k, n):
        last = last + ys[k - 1] * geometric(n - k - 1)
    eqs.append(last)
    note = "printed" if printed else ""
    return _make(Variant.TRUE_PECULIAR, n, names, eqs, note=note)

def build_y1_one_subset(n: int) -> AlgebraicSystem:
    """y_1 = y_0 子集的射影方程组（m 取 2..N−2），在 y_0 = 1 图上去齐次化"""
    _check_capacity(n, 4)
    names = ["y0"] + _names(2, n)
    gens, polys = _generators(names)
    one = sympy.Poly(1, *gens, domain='ZZ')
    y0, ys = polys[0], polys[1:]
    e = _elementary([y0] + ys, one)
    eqs = [e[1] + y0]
    eqs += [e[m] - (-1) ** m * y0 ** (m - 1) * ys[m - 2] for m in range(2, n - 1)]
    eqs.append(_product(ys[:n - 2], one) - (-1) ** n * y0 ** (n - 2))
    projective = _make(Variant.Y1_ONE_SUBSET, n, names, eqs, fixed=((1, 1),), projective=True)
    return dehomogenize(projective)

def start_system_for(degrees: Sequence[int], unknowns: Sequence[str], degree_n: int) -> AlgebraicSystem:
    """总次数起始方程组 y_i^{d_i} − 1 = 0"""
    k = len(unknowns)
    equations = []
    for i, d in enumerate(degrees):
        exps = [0] * k
        exps[i] = int(d)
        equations.append(MultiPoly(k, ((tuple(exps), Fraction(1)), (tuple([0] * k), Fraction(-1)))))
    return AlgebraicSystem(Variant.START, degree_n, tuple(unknowns), tuple(equations))

# ---------------------------------------------------------------- 射影化

def homogenize(s: AlgebraicSystem) -> AlgebraicSystem:
    """引入 y_0 使每个方程齐次，次数不变"""
    if s.projective:
        return s
    k = s.num_unknowns
    equations = []
    for eq in s.equations:
        d = eq.total_degree
        terms = tuple(((d - sum(exps),) + exps, c) for exps, c in eq.terms)
        equations.append(MultiPoly(k + 1, terms))
    return replace(s, unknowns=("y0",) + s.unknowns, equations=tuple(equations), projective=True)

def _restrict_y0(s: AlgebraicSystem, value: int) -> Tuple[MultiPoly, ...]:
    k = s.num_unknowns - 1
    equations = []
    for eq in s.equations:
        terms = []
        for exps, c in eq.terms:
            if value == 0 and exps[0] > 0:
                continue
            terms.append((exps[1:], c * Fraction(value) ** exps[0]))
        equations.append(MultiPoly(k, tuple(terms)))
    return tuple(equations)

def dehomogenize(s: AlgebraicSystem) -> AlgebraicSystem:
    """取 y_0 = 1 的仿射图"""
    if not s.projective:
        return s
    return replace(s, unknowns=s.unknowns[1:], equations=_restrict_y0(s, 1), projective=False)

def at_infinity(s: AlgebraicSystem) -> AlgebraicSystem:
    """取 y_0 = 0 的"无穷远"方程组"""
    projective = homogenize(s)
    return replace(projective, unknowns=projective.unknowns[1:],
                   equations=_restrict_y0(projective, 0), projective=False)

# ---------------------------------------------------------------- 求值

def _as_vector(s: AlgebraicSystem, y) -> np.ndarray:
    arr = np.ascontiguousarray(y, dtype=np.complex128).reshape(-1)
    if arr.shape[0] != s.num_unknowns:
        raise DimensionMismatch(f"{s.variant.value} expects {s.num_unknowns} values, got {arr.shape[0]}")
    return arr

def eval_system(s: AlgebraicSystem, y) -> np.ndarray:
    """逐项精确求值"""
    return s.compiled.eval(_as_vector(s, y))

def jacobian(s: AlgebraicSystem, y) -> np.ndarray:
    """Jacobian (i, j) = ∂F_i/∂y_j"""
    _, jac = s.compiled.eval_jac(_as_vector(s, y))
    return jac

def residual(s: AlgebraicSystem, y) -> float:
    """max_i |F_i(y)| / max(1, ‖y‖∞)^{d_i}"""
    arr = _as_vector(s, y)
    values = np.abs(s.compiled.eval(arr))
    size = max(1.0, float(np.max(np.abs(arr))) if arr.size else 1.0)
    scaled = values / size ** s.compiled.degrees.astype(np.float64)
    return float(np.max(scaled)) if scaled.size else 0.0

def evaluate_exact(s: AlgebraicSystem, point: Sequence[Fraction]) -> List[Fraction]:
    """有理点上的精确求值"""
    if len(point) != s.num_unknowns:
        raise DimensionMismatch(f"{s.variant.value} expects {s.num_unknowns} values, got {len(point)}")
    return [eq.evaluate_exact(point) for eq in s.equations]

# ---------------------------------------------------------------- 坐标嵌入

_INDEX = re.compile(r"^y(\d+)$")

def _index_of(name: str) -> int:
    match = _INDEX.match(name)
    if not match:
        raise ValueError(f"unknown variable name {name}")
    return int(match.group(1))

def embed(s: AlgebraicSystem, y: Sequence[complex]) -> List[complex]:
    """补回固定坐标，得到完整系数向量 y_1..y_N"""
    if s.projective:
        raise ValueError("embed requires an affine system")
    values = list(_as_vector(s, y))
    full: List[Optional[complex]] = [None] * s.degree_n
    for name, value in zip(s.unknowns, values):
        full[_index_of(name) - 1] = complex(value)
    for index, value in s.fixed:
        full[index - 1] = complex(value)
    if any(v is None for v in full):
        raise ValueError(f"{s.variant.value} does not determine every coefficient")
    return full

def restrict(s: AlgebraicSystem, y_full: Sequence[complex]) -> List[complex]:
    """完整系数向量 → 未知数坐标"""
    if len(y_full) != s.degree_n:
        raise DimensionMismatch(f"expected {s.degree_n} coefficients, got {len(y_full)}")
    return [complex(y_full[_index_of(name) - 1]) for name in s.unknowns]

# ---------------------------------------------------------------- JSON

def to_json(s: AlgebraicSystem) -> dict:
    """调试与跨实现比对用的 JSON 描述"""
    return {
        'variant': s.variant.value,
        'degree_n': s.degree_n,
        'unknowns': list(s.unknowns),
        'fixed': [[k, v] for k, v in s.fixed],
        'projective': s.projective,
        'degrees': list(s.degrees),
        'bezout': s.bezout,
        'equations': [[[str(c), list(e)] for e, c in eq.terms] for eq in s.equations],
    }

def from_json(data: dict) -> AlgebraicSystem:
    k = len(data['unknowns'])
    equations = tuple(
        MultiPoly(k, tuple((tuple(e), Fraction(c)) for c, e in eq))
        for eq in data['equations']
    )
    return AlgebraicSystem(
        variant=Variant(data['variant']),
        degree_n=int(data['degree_n']),
        unknowns=tuple(data['unknowns']),
        equations=equations,
        fixed=tuple((int(a), int(b)) for a, b in data.get('fixed', [])),
        projective=bool(data.get('projective', False)),
    )

BUILDERS = {
    Variant.FULL: build_full,
    Variant.P0_REDUCED: build_p0_reduced,
    Variant.P1_REDUCED: build_p1_reduced,
    Variant.NONZERO: build_nonzero,
    Variant.P1_NONZERO: build_p1_nonzero,
    Variant.TRUE_PECULIAR: build_pt,
    Variant.Y1_ONE_SUBSET: build_y1_one_subset,
}

def build(variant: Variant, n: int, **kwargs) -> AlgebraicSystem:
    """按变体构造"""
    return BUILDERS[Variant(variant)](n, **kwargs)
