"""
一元多项式基础：对称函数、Ulam 变换、复根求解与奇特性判定
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

import numpy as np

from utils.tools import UnionFind, bottleneck_assignment, canonical_key

logger = logging.getLogger(__name__)

# 初始猜测的固定无理角偏移
_ANGLE_OFFSET = np.sqrt(2.0) / 2.0

class NonConvergence(ArithmeticError):
    """同时迭代在限定步数内未达到容差"""

@dataclass(frozen=True)
class MonicPoly:
    """首一多项式 z^N + Σ y_m z^{N−m}，只存 y_1..y_N"""
    coeffs: Tuple[complex, ...]

    def __post_init__(self):
        values = tuple(complex(c) for c in self.coeffs)
        if not values:
            raise ValueError("MonicPoly requires degree N >= 1")
        object.__setattr__(self, 'coeffs', values)

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def to_numpy(self) -> np.ndarray:
        """降幂系数数组 [1, y_1, ..., y_N]"""
        return np.concatenate(([1.0 + 0.0j], np.asarray(self.coeffs, dtype=np.complex128)))

@dataclass(frozen=True)
class RootCluster:
    """合并后的根簇"""
    value: complex
    multiplicity: int = 1

@dataclass(frozen=True)
class ZeroSet:
    """零点多重集（无序）"""
    elements: Tuple[complex, ...]
    clusters: Tuple[RootCluster, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'elements', tuple(complex(x) for x in self.elements))
        object.__setattr__(self, 'clusters', tuple(self.clusters))

    @classmethod
    def from_clusters(cls, clusters: Iterable[RootCluster]) -> 'ZeroSet':
        """由根簇展开为多重集"""
        clusters = tuple(clusters)
        elements = []
        for cluster in clusters:
            elements.extend([cluster.value] * cluster.multiplicity)
        return cls(tuple(elements), clusters)

    def __len__(self) -> int:
        return len(self.elements)

@dataclass(frozen=True)
class RootOptions:
    """求根选项"""
    residual_tol: float = 1e-9
    max_iters: int = 500
    merge_tol: float = 1e-6
    polish_iters: int = 5

def scale(p: MonicPoly) -> float:
    """scale(p) = max(1, max|y_m|)"""
    return max(1.0, max(abs(c) for c in p.coeffs))

def conj(x: ZeroSet) -> ZeroSet:
    """逐元素共轭"""
    return ZeroSet(tuple(z.conjugate() for z in x.elements))

def _sorted_elements(x: ZeroSet) -> List[complex]:
    return sorted(x.elements, key=lambda z: canonical_key([z]))

def elementary_symmetric(x: ZeroSet) -> List[complex]:
    """
    初等对称函数 σ_1..σ_N

    按 (re, im) 排序后逐个展开 ∏(z − x_n)，与输入顺序无关
    """
    if len(x) == 0:
        raise ValueError("elementary_symmetric requires a nonempty multiset")
    expanded = np.poly(np.asarray(_sorted_elements(x), dtype=np.complex128))
    return [complex((-1) ** m * expanded[m]) for m in range(1, len(x) + 1)]

def ulam_transform(x: ZeroSet) -> MonicPoly:
    """Ulam 变换 y_m = (−1)^m σ_m(x)"""
    sigma = elementary_symmetric(x)
    return MonicPoly(tuple((-1) ** m * s for m, s in enumerate(sigma, start=1)))

def eval_poly(p: MonicPoly, z):
    """Horner 求值，z 可为标量或数组"""
    value = np.polyval(p.to_numpy(), z)
    if np.ndim(value) == 0:
        return complex(value)
    return value

def _root_tolerance(p: MonicPoly, z: np.ndarray, residual_tol: float) -> np.ndarray:
    return residual_tol * scale(p) * np.maximum(1.0, np.abs(z)) ** p.degree

def _merge_roots(z: np.ndarray, radius: float) -> List[RootCluster]:
    """单链接合并距离在 radius 内的根"""
    n = len(z)
    uf = UnionFind(n)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= radius:
                uf.union(i, j)
    clusters = [RootCluster(complex(np.mean(z[members])), len(members)) for members in uf.groups()]
    return sorted(clusters, key=lambda c: canonical_key([c.value]))

def find_roots(p: MonicPoly, opts: Optional[RootOptions] = None) -> ZeroSet:
    """
    Aberth–Ehrlich 同时迭代求全部复根

    初值取半径 1 + max|y_m| 的圆周，加固定无理角偏移；
    残差达标后至少再迭代 polish_iters 步；
    收敛后把相对距离 merge_tol·scale 内的根合并为带重数的根簇。

    Raises:
        NonConvergence: max_iters 步内残差未达标
    """
    opts = opts or RootOptions()
    n = p.degree
    coeffs = p.to_numpy()

    if n == 1:
        return ZeroSet.from_clusters([RootCluster(-p.coeffs[0], 1)])

    deriv = np.polyder(coeffs)
    radius = 1.0 + max(abs(c) for c in p.coeffs)
    angles = 2.0 * np.pi * np.arange(n) / n + _ANGLE_OFFSET
    z = radius * np.exp(1j * angles)

    eps = np.finfo(np.float64).eps
    polished = 0
    previous = np.inf
    for _ in range(opts.max_iters):
        pz = np.polyval(coeffs, z)
        converged = bool(np.all(np.abs(pz) <= _root_tolerance(p, z, opts.residual_tol)))

        dpz = np.polyval(deriv, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        with np.errstate(divide='ignore', invalid='ignore'):
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            repulsion = inv.sum(axis=1)
            step = pz / (dpz - pz * repulsion)
        step[(pz == 0) | ~np.isfinite(step)] = 0.0
        z = z - step

        # 重根只线性收敛：残差达标后继续迭代，直到步长到达机器精度或不再减小
        size = float(np.max(np.abs(step))) / max(1.0, float(np.max(np.abs(z))))
        if converged:
            polished += 1
            if polished >= opts.polish_iters and (size <= 4.0 * eps or size >= previous):
                break
        previous = size

    pz = np.polyval(coeffs, z)
    if not np.all(np.abs(pz) <= _root_tolerance(p, z, opts.residual_tol)):
        worst = float(np.max(np.abs(pz)))
        raise NonConvergence(f"Aberth iteration did not converge for degree {n} (residual {worst:.3e})")

    clusters = _merge_roots(z, opts.merge_tol * scale(p))
    return ZeroSet.from_clusters(clusters)

def match_multisets(a: ZeroSet, b: ZeroSet, tol: float) -> Optional[List[Tuple[int, int]]]:
    """
    多重集匹配：最优指派使最大配对距离最小，最大距离 ≤ tol 时返回配对

    Returns:
        [(i, j), ...] 表示 a[i] ↔ b[j]；无合法配对时返回 None
    """
    if len(a) != len(b):
        raise ValueError(f"match_multisets requires equal sizes, got {len(a)} and {len(b)}")
    left = np.asarray(a.elements, dtype=np.complex128)
    right = np.asarray(b.elements, dtype=np.complex128)
    dist = np.abs(left[:, None] - right[None, :])
    rows, cols, worst = bottleneck_assignment(dist)
    if worst > tol:
        return None
    return [(int(i), int(j)) for i, j in zip(rows, cols)]

def is_peculiar(p: MonicPoly, tol: float = 1e-6, opts: Optional[RootOptions] = None) -> bool:
    """零点多重集能否与系数逐一对应（容差相对 scale(p)）"""
    roots = find_roots(p, opts)
    coefficients = ZeroSet(p.coeffs)
    return match_multisets(roots, coefficients, tol * scale(p)) is not None

def satisfies_eq3(p: MonicPoly, tol: float = 1e-9) -> bool:
    """每个系数都是 p 的零点：p(y_m) = 0（必要但不充分）"""
    values = np.asarray(p.coeffs, dtype=np.complex128)
    residual = np.abs(eval_poly(p, values))
    return bool(np.all(residual <= _root_tolerance(p, values, tol)))
