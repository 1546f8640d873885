"""
总次数同伦延拓：起始方程组、路径追踪、端点聚类与重数估计

默认在射影空间中追踪：目标方程组齐次化，起始方程组取 y_i^{d_i} − y_0^{d_i}，
再加一个随机仿射片 a·Y = 1 使方程组为方阵，所有路径保持有界。
"""

import itertools
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
from scipy.spatial import cKDTree

import config
from utils.poly_core import NonConvergence
from utils.systems import (AlgebraicSystem, SolutionPoint, embed, homogenize,
                           residual, start_system_for)
from utils.tools import UnionFind, canonical_key, inf_norm, relative_distance

logger = logging.getLogger(__name__)

# 精化目标残差
DOUBLE_RESIDUAL = 1e-13
EXTENDED_RESIDUAL = 1e-25

class BudgetExceeded(RuntimeError):
    """Bézout 数超出配置的路径预算"""

class QualityFailure(RuntimeError):
    """重试一次后仍有失败路径，或有界解在精化下漂移"""

class AmbiguousClustering(RuntimeError):
    """簇间距离落在去重容差的 10 倍以内"""

class Precision(str, Enum):
    DOUBLE = "double"
    EXTENDED = "extended"

class PathStatus(str, Enum):
    CONVERGED = "Converged"
    AT_INFINITY = "AtInfinity"
    FAILED = "Failed"

@dataclass(frozen=True)
class TrackOptions:
    """路径追踪选项"""
    gamma_seed: int = 1
    step_init: float = 0.05
    step_min: float = 1e-8
    step_max: float = 0.1
    corrector_tol: float = 1e-10
    accept_tol: float = 1e-8
    dedup_tol: float = 1e-6
    infinity_threshold: float = 1e8
    max_steps: int = 10000
    refine_precision: Precision = Precision.EXTENDED
    predictor: str = "rk4"
    tracking: str = "projective"
    end_zone: float = 1e-5
    budget: int = 50000
    trace: bool = False
    workers: int = 1
    extended_dps: int = 34

    def __post_init__(self):
        object.__setattr__(self, 'refine_precision', Precision(self.refine_precision))
        if not 0 < self.step_min <= self.step_init <= 1:
            raise ValueError(f"step sizes must satisfy 0 < step_min <= step_init <= 1, "
                             f"got {self.step_min}, {self.step_init}")
        if self.step_max < self.step_init:
            raise ValueError("step_max must be at least step_init")
        for name in ('corrector_tol', 'accept_tol', 'dedup_tol', 'infinity_threshold', 'end_zone'):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.predictor not in ("rk4", "euler"):
            raise ValueError(f"unknown predictor {self.predictor}")
        if self.tracking not in ("projective", "affine"):
            raise ValueError(f"unknown tracking mode {self.tracking}")
        if self.workers < 1 or self.max_steps < 1:
            raise ValueError("workers and max_steps must be positive")

    @classmethod
    def from_config(cls) -> 'TrackOptions':
        """由 config 模块的环境变量默认值构造"""
        return cls(
            gamma_seed=config.GAMMA_SEED,
            step_init=config.STEP_INIT,
            step_min=config.STEP_MIN,
            step_max=config.STEP_MAX,
            corrector_tol=config.CORRECTOR_TOL,
            accept_tol=config.ACCEPT_TOL,
            dedup_tol=config.DEDUP_TOL,
            infinity_threshold=config.INFINITY_THRESHOLD,
            max_steps=config.MAX_STEPS,
            refine_precision=Precision(config.REFINE_PRECISION),
            predictor=config.PREDICTOR,
            tracking=config.TRACKING,
            end_zone=config.END_ZONE,
            budget=config.BEZOUT_BUDGET,
            workers=config.WORKERS,
            extended_dps=config.EXTENDED_DPS,
        )

    def tolerances(self) -> Dict[str, float]:
        return {
            'corrector': self.corrector_tol,
            'accept': self.accept_tol,
            'dedup': self.dedup_tol,
            'infinity': self.infinity_threshold,
            'step_min': self.step_min,
            'step_init': self.step_init,
            'step_max': self.step_max,
        }

@dataclass
class PathResult:
    start_index: int
    status: PathStatus
    endpoint: Optional[np.ndarray]
    steps_taken: int
    t_final: float = 0.0
    norm: float = 0.0
    trace: List[Tuple[int, float, float, float]] = field(default_factory=list)

@dataclass(frozen=True)
class PathAccounting:
    """路径计数：converged + at_infinity + failed = bezout"""
    bezout: int
    converged: int
    at_infinity: int
    failed: int
    gamma_seed: int
    retried: bool = False

    @property
    def balanced(self) -> bool:
        return self.converged + self.at_infinity + self.failed == self.bezout

    def to_dict(self) -> dict:
        return {
            'bezout': self.bezout,
            'converged': self.converged,
            'at_infinity': self.at_infinity,
            'failed': self.failed,
        }

Tracker = Callable[[AlgebraicSystem, AlgebraicSystem, List[Tuple[int, np.ndarray]], TrackOptions], List[PathResult]]

# ---------------------------------------------------------------- 起始方程组

def start_system(s: AlgebraicSystem, opts: Optional[TrackOptions] = None) -> Tuple[AlgebraicSystem, List[np.ndarray]]:
    """
    总次数起始方程组 y_i^{d_i} − 1 = 0 及其全部 bezout(s) 个解

    解按各分量单位根下标的字典序排列，下标即路径编号。
    """
    if s.projective:
        raise ValueError("start_system expects an affine system")
    degrees = s.degrees
    start_sys = start_system_for(degrees, s.unknowns, s.degree_n)
    roots = [np.exp(2j * np.pi * np.arange(d) / d) for d in degrees]
    points = [np.array(combo, dtype=np.complex128) for combo in itertools.product(*roots)]
    return start_sys, points

# ---------------------------------------------------------------- 同伦

class _Homotopy:
    """H(Y, t) = (1 − t)·γ·G(Y) + t·F(Y)，射影模式下附加仿射片方程"""

    def __init__(self, target: AlgebraicSystem, start_sys: AlgebraicSystem, gamma_seed: int, tracking: str):
        rng = np.random.default_rng(gamma_seed)
        self.gamma = complex(np.exp(2j * np.pi * rng.uniform()))
        self.projective = tracking == "projective"
        if self.projective:
            self.target = homogenize(target).compiled
            self.start = homogenize(start_sys).compiled
            k = target.num_unknowns + 1
            patch = rng.standard_normal(k) + 1j * rng.standard_normal(k)
            self.patch = patch / np.linalg.norm(patch)
        else:
            self.target = target.compiled
            self.start = start_sys.compiled
            self.patch = None

    def lift(self, y: np.ndarray) -> np.ndarray:
        if not self.projective:
            return np.array(y, dtype=np.complex128)
        Y = np.concatenate(([1.0 + 0.0j], y))
        return Y / (self.patch @ Y)

    def affine(self, Y: np.ndarray) -> Tuple[Optional[np.ndarray], float]:
        """去齐次化坐标与其无穷范数；Y_0 = 0 时返回 (None, inf)"""
        if not self.projective:
            return Y, inf_norm(Y)
        if Y[0] == 0:
            return None, float('inf')
        y = Y[1:] / Y[0]
        return y, inf_norm(y)

    def derivatives(self, Y: np.ndarray, t: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """返回 (H, ∂H/∂Y, ∂H/∂t)"""
        F, JF = self.target.eval_jac(Y)
        G, JG = self.start.eval_jac(Y)
        s = (1.0 - t) * self.gamma
        H = s * G + t * F
        J = s * JG + t * JF
        Ht = F - self.gamma * G
        if self.projective:
            H = np.append(H, self.patch @ Y - 1.0)
            J = np.vstack((J, self.patch))
            Ht = np.append(Ht, 0.0)
        return H, J, Ht

    def velocity(self, Y: np.ndarray, t: float) -> np.ndarray:
        """Davidenko 方程 dY/dt = −(∂H/∂Y)^{-1} ∂H/∂t"""
        _, J, Ht = self.derivatives(Y, t)
        return -np.linalg.solve(J, Ht)

@lru_cache(maxsize=16)
def _homotopy_for(target: AlgebraicSystem, start_sys: AlgebraicSystem, gamma_seed: int, tracking: str) -> _Homotopy:
    return _Homotopy(target, start_sys, gamma_seed, tracking)

def _predict(h: _Homotopy, Y: np.ndarray, t: float, dt: float, method: str) -> np.ndarray:
    k1 = h.velocity(Y, t)
    if method == "euler":
        return Y + dt * k1
    k2 = h.velocity(Y + 0.5 * dt * k1, t + 0.5 * dt)
    k3 = h.velocity(Y + 0.5 * dt * k2, t + 0.5 * dt)
    k4 = h.velocity(Y + dt * k3, t + dt)
    return Y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

def _correct(h: _Homotopy, Y: np.ndarray, t: float, tol: float, max_iters: int = 3) -> Tuple[np.ndarray, bool]:
    """固定 t 的 Newton 校正，最多 max_iters 步；步长增大即判失败"""
    previous = None
    for _ in range(max_iters):
        H, J, _ = h.derivatives(Y, t)
        delta = np.linalg.solve(J, -H)
        Y = Y + delta
        size = np.linalg.norm(delta)
        if size <= tol * (1.0 + np.linalg.norm(Y)):
            return Y, True
        if previous is not None and size > previous:
            return Y, False
        previous = size
    return Y, False

def _end_newton(h: _Homotopy, Y: np.ndarray, max_iters: int = 100) -> np.ndarray:
    """t = 1 处的最小二乘 Newton，奇异端点上线性收敛"""
    eps = np.finfo(np.float64).eps
    for _ in range(max_iters):
        H, J, _ = h.derivatives(Y, 1.0)
        delta = np.linalg.lstsq(J, -H, rcond=None)[0]
        if not np.all(np.isfinite(delta)):
            break
        Y = Y + delta
        if np.linalg.norm(delta) <= 4.0 * eps * (1.0 + np.linalg.norm(Y)):
            break
    return Y

def _diverging(norm: float, opts: TrackOptions) -> bool:
    """范数超过 sqrt(infinity_threshold) 且不稳定的端点按无穷远处理"""
    return norm > np.sqrt(opts.infinity_threshold)

def _polish(target: AlgebraicSystem, y: np.ndarray, max_iters: int = 5) -> np.ndarray:
    """仿射 Newton 抛光（最小二乘步）"""
    compiled = target.compiled
    for _ in range(max_iters):
        F, J = compiled.eval_jac(y)
        delta = np.linalg.lstsq(J, -F, rcond=None)[0]
        if not np.all(np.isfinite(delta)):
            break
        y = y + delta
        if inf_norm(delta) <= 1e-15 * max(1.0, inf_norm(y)):
            break
    return y

def track_path(target: AlgebraicSystem, start_sys: AlgebraicSystem, start: np.ndarray,
               opts: TrackOptions, index: int = 0) -> PathResult:
    """
    预测-校正追踪一条路径 t: 0 → 1

    校正失败则步长减半，连续两次成功则放大 1.5 倍（不超过 step_max）；
    步长低于 step_min 时，若已进入终点区 1 − t ≤ end_zone 则直接在 t = 1 做 Newton，
    否则判为 Failed。
    """
    h = _homotopy_for(target, start_sys, opts.gamma_seed, opts.tracking)
    Y = h.lift(np.asarray(start, dtype=np.complex128))
    t = 0.0
    step = opts.step_init
    successes = 0
    steps = 0
    trace: List[Tuple[int, float, float, float]] = []

    def result(status, endpoint=None, norm=0.0):
        return PathResult(index, status, endpoint, steps, t, norm, trace)

    while t < 1.0:
        if steps >= opts.max_steps:
            logger.debug(f"⚠️ 路径 {index} 超出最大步数 (t={t:.6g})")
            return result(PathStatus.FAILED)
        steps += 1
        dt = min(step, 1.0 - t)
        t_next = 1.0 if dt >= 1.0 - t else t + dt
        try:
            predicted = _predict(h, Y, t, t_next - t, opts.predictor)
            corrected, ok = _correct(h, predicted, t_next, opts.corrector_tol)
            ok = ok and bool(np.all(np.isfinite(corrected)))
        except np.linalg.LinAlgError:
            ok = False

        if ok:
            Y, t = corrected, t_next
            successes += 1
            if successes >= 2:
                step = min(step * 1.5, opts.step_max)
                successes = 0
            _, norm = h.affine(Y)
            if opts.trace:
                trace.append((steps, t, dt, norm))
            if not h.projective and norm > opts.infinity_threshold:
                return result(PathStatus.AT_INFINITY, norm=norm)
        else:
            step *= 0.5
            successes = 0
            if step < opts.step_min:
                if 1.0 - t <= opts.end_zone:
                    break
                logger.debug(f"⚠️ 路径 {index} 步长下溢 (t={t:.6g})")
                return result(PathStatus.FAILED)

    Y = _end_newton(h, Y)
    y, norm = h.affine(Y)
    if y is None or not np.isfinite(norm) or norm > opts.infinity_threshold:
        return result(PathStatus.AT_INFINITY, norm=norm)
    polished = _polish(target, y)
    if not np.all(np.isfinite(polished)) or relative_distance(polished, y) > opts.dedup_tol:
        # 端点在仿射 Newton 下不稳定，尚未落在有限解上
        if _diverging(norm, opts):
            return result(PathStatus.AT_INFINITY, norm=norm)
        logger.debug(f"⚠️ 路径 {index} 端点在抛光下不稳定 (norm={norm:.3e})")
        return result(PathStatus.FAILED, norm=norm)
    if residual(target, polished) <= opts.accept_tol:
        return result(PathStatus.CONVERGED, endpoint=polished, norm=inf_norm(polished))
    logger.debug(f"⚠️ 路径 {index} 端点残差未达标")
    return result(PathStatus.FAILED, norm=norm)

def track_paths(target: AlgebraicSystem, start_sys: AlgebraicSystem,
                starts: List[Tuple[int, np.ndarray]], opts: TrackOptions) -> List[PathResult]:
    """串行追踪一组路径"""
    return [track_path(target, start_sys, point, opts, index) for index, point in starts]

# ---------------------------------------------------------------- 精化

def _mp_terms(s: AlgebraicSystem):
    return [[(mpmath.mpf(c.numerator) / c.denominator, exps) for exps, c in eq.terms] for eq in s.equations]

def _mp_eval_jac(terms, y, n_vars):
    F = []
    J = mpmath.zeros(len(terms), n_vars)
    for i, eq in enumerate(terms):
        total = mpmath.mpc(0)
        for coef, exps in eq:
            powers = [y[j] ** e if e else mpmath.mpc(1) for j, e in enumerate(exps)]
            monomial = coef
            for p in powers:
                monomial *= p
            total += monomial
            for j, e in enumerate(exps):
                if e == 0:
                    continue
                d = coef * e * y[j] ** (e - 1)
                for k, p in enumerate(powers):
                    if k != j:
                        d *= p
                J[i, j] += d
        F.append(total)
    return F, J

def _mp_residual(F, y, degrees) -> float:
    size = max(mpmath.mpf(1), max(abs(v) for v in y))
    return float(max(abs(f) / size ** d for f, d in zip(F, degrees)))

def _mp_solve(J, b):
    """LU 求解；奇异时退化为 Tikhonov 正则化的正规方程"""
    try:
        return mpmath.lu_solve(J, b)
    except ZeroDivisionError:
        JH = J.H
        A = JH * J
        shift = mpmath.mpf(10) ** (-mpmath.mp.dps) * (1 + mpmath.mnorm(A, 1))
        for i in range(A.rows):
            A[i, i] += shift
        return mpmath.lu_solve(A, JH * b)

def _refine_extended(s: AlgebraicSystem, y: np.ndarray, dps: int, max_iters: int = 100) -> Tuple[np.ndarray, float]:
    with mpmath.workdps(dps):
        terms = _mp_terms(s)
        values = [mpmath.mpc(complex(v)) for v in y]
        n = len(values)
        degrees = s.degrees
        F, J = _mp_eval_jac(terms, values, n)
        res = _mp_residual(F, values, degrees)
        for _ in range(max_iters):
            if res < EXTENDED_RESIDUAL:
                break
            delta = _mp_solve(J, mpmath.matrix([-f for f in F]))
            values = [v + delta[i] for i, v in enumerate(values)]
            F, J = _mp_eval_jac(terms, values, n)
            res = _mp_residual(F, values, degrees)
        if res >= EXTENDED_RESIDUAL:
            raise NonConvergence(f"extended refinement stalled at residual {res:.3e}")
        return np.array([complex(v) for v in values], dtype=np.complex128), res

def _refine_double(s: AlgebraicSystem, y: np.ndarray, max_iters: int = 50) -> Tuple[np.ndarray, float]:
    compiled = s.compiled
    y = np.asarray(y, dtype=np.complex128)
    res = residual(s, y)
    for _ in range(max_iters):
        if res < DOUBLE_RESIDUAL:
            break
        F, J = compiled.eval_jac(y)
        delta = np.linalg.lstsq(J, -F, rcond=None)[0]
        y = y + delta
        res = residual(s, y)
    if res >= DOUBLE_RESIDUAL:
        raise NonConvergence(f"double refinement stalled at residual {res:.3e}")
    return y, res

def refine(s: AlgebraicSystem, y, precision: Precision = Precision.DOUBLE,
           dps: int = 34) -> np.ndarray:
    """
    t = 1 处的 Newton 精化

    Double: 残差 < 1e-13；Extended: mpmath 在 dps 位下精化到残差 < 1e-25。

    Raises:
        NonConvergence: 迭代上限内未达到目标残差
    """
    return _refine(s, y, precision, dps)[0]

def _refine(s: AlgebraicSystem, y, precision: Precision, dps: int) -> Tuple[np.ndarray, float]:
    y = np.asarray(y, dtype=np.complex128)
    if Precision(precision) is Precision.EXTENDED:
        return _refine_extended(s, y, dps)
    return _refine_double(s, y)

# ---------------------------------------------------------------- 聚类

def cluster(points: Sequence[Sequence[complex]], dedup_tol: float) -> List[Tuple[np.ndarray, int]]:
    """
    单链接聚类（相对半径 dedup_tol），代表元为分量均值

    Raises:
        AmbiguousClustering: 两个不同簇的最近距离不超过 10·dedup_tol
    """
    if len(points) == 0:
        return []
    ordered = sorted((np.asarray(p, dtype=np.complex128) for p in points), key=canonical_key)
    arr = np.array(ordered)
    n = len(arr)
    embedded = np.hstack((arr.real, arr.imag))
    radius = 10.0 * dedup_tol * max(1.0, float(np.max(np.abs(arr))))
    pairs = cKDTree(embedded).query_pairs(r=radius, p=np.inf, output_type='ndarray')
    if len(pairs):
        pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]

    uf = UnionFind(n)
    near = []
    for i, j in pairs:
        d = relative_distance(arr[i], arr[j])
        if d <= dedup_tol:
            uf.union(int(i), int(j))
        elif d <= 10.0 * dedup_tol:
            near.append((int(i), int(j), d))
    for i, j, d in near:
        if uf.find(i) != uf.find(j):
            raise AmbiguousClustering(
                f"clusters {canonical_key(arr[i], 8)} and {canonical_key(arr[j], 8)} "
                f"are {d:.3e} apart, within 10x dedup_tol={dedup_tol}")

    clusters = [(arr[members].mean(axis=0), len(members)) for members in uf.groups()]
    return sorted(clusters, key=lambda c: canonical_key(c[0]))

def is_conjugation_closed(points: Sequence[Sequence[complex]], tol: float) -> bool:
    """点集在分量共轭下封闭（相对容差 tol）"""
    if len(points) == 0:
        return True
    arr = np.array([np.asarray(p, dtype=np.complex128) for p in points])
    tree = cKDTree(np.hstack((arr.real, arr.imag)))
    _, nearest = tree.query(np.hstack((arr.real, -arr.imag)), p=np.inf)
    return all(relative_distance(arr[i].conj(), arr[j]) <= tol for i, j in enumerate(nearest))

# ---------------------------------------------------------------- 求解

def _default_tracker(opts: TrackOptions) -> Tracker:
    if opts.workers > 1:
        from service.path_pool import PathPool
        return PathPool(opts.workers)
    return track_paths

def _accounting(results: List[PathResult], bezout: int, seed: int, retried: bool) -> PathAccounting:
    counts = {status: 0 for status in PathStatus}
    for r in results:
        counts[r.status] += 1
    return PathAccounting(bezout, counts[PathStatus.CONVERGED], counts[PathStatus.AT_INFINITY],
                          counts[PathStatus.FAILED], seed, retried)

def collect(s: AlgebraicSystem, results: List[PathResult], opts: TrackOptions) -> Tuple[List[SolutionPoint], int]:
    """
    收敛端点聚类、精化代表元，得到带重数的解

    精化后偏离超过 dedup_tol 的发散代表元改记为无穷远，返回其路径数。
    簇间距离大于 10·dedup_tol，代表元移动不超过 dedup_tol，精化后的解仍两两分离。

    Raises:
        QualityFailure: 有界代表元在精化下偏离超过 dedup_tol
    """
    endpoints = [r.endpoint for r in sorted(results, key=lambda r: r.start_index)
                 if r.status is PathStatus.CONVERGED]
    points = []
    escaped = 0
    for representative, multiplicity in cluster(endpoints, opts.dedup_tol):
        diverging = _diverging(inf_norm(representative), opts)
        try:
            y, res = _refine(s, representative, opts.refine_precision, opts.extended_dps)
        except NonConvergence:
            if not diverging:
                raise
            y = None
        if y is None or relative_distance(y, representative) > opts.dedup_tol:
            if not diverging:
                raise QualityFailure(f"refinement moved {canonical_key(representative, 8)} "
                                     f"by more than dedup_tol={opts.dedup_tol}")
            logger.debug(f"⚠️ 代表元 {canonical_key(representative, 3)} 精化后偏离，记为无穷远")
            escaped += multiplicity
            continue
        full = embed(s, y)
        size = max(1.0, inf_norm(full))
        points.append(SolutionPoint(
            y=tuple(full),
            coords=tuple(y),
            residual=res,
            multiplicity=multiplicity,
            is_real=all(abs(v.imag) <= opts.dedup_tol * size for v in full),
        ))
    return points, escaped

def solve(s: AlgebraicSystem, opts: Optional[TrackOptions] = None,
          tracker: Optional[Tracker] = None, trace_sink: Optional[List[PathResult]] = None) -> Tuple[List[SolutionPoint], PathAccounting]:
    """
    追踪全部 bezout(s) 条路径并聚类

    若有失败路径，以 gamma_seed + 1 整体重试一次。
    trace_sink 非空时收集最终一轮的路径结果。

    Raises:
        BudgetExceeded: bezout(s) 超出 opts.budget
        QualityFailure: 重试后仍有失败路径，或有界代表元在精化下漂移
    """
    opts = opts or TrackOptions.from_config()
    if s.bezout > opts.budget:
        raise BudgetExceeded(f"{s.variant.value} N={s.degree_n}: bezout {s.bezout} exceeds budget {opts.budget}")
    tracker = tracker or _default_tracker(opts)
    start_sys, points = start_system(s, opts)
    starts = list(enumerate(points))

    logger.info(f"🔄 追踪 {s.variant.value} N={s.degree_n}: {len(starts)} 条路径 (seed={opts.gamma_seed})")
    results = tracker(s, start_sys, starts, opts)
    accounting = _accounting(results, s.bezout, opts.gamma_seed, False)

    if accounting.failed:
        retry = replace(opts, gamma_seed=opts.gamma_seed + 1)
        logger.warning(f"⚠️ {accounting.failed} 条路径失败，使用 seed={retry.gamma_seed} 重试")
        results = tracker(s, start_sys, starts, retry)
        accounting = _accounting(results, s.bezout, retry.gamma_seed, True)
        if accounting.failed:
            raise QualityFailure(f"{accounting.failed} of {s.bezout} paths failed after retry")
        opts = retry

    if trace_sink is not None:
        trace_sink.extend(results)
    solutions, escaped = collect(s, results, opts)
    if escaped:
        accounting = replace(accounting, converged=accounting.converged - escaped,
                             at_infinity=accounting.at_infinity + escaped)
    logger.info(f"✅ {s.variant.value} N={s.degree_n}: 收敛 {accounting.converged}，"
                f"无穷远 {accounting.at_infinity}，不同解 {len(solutions)}")
    return solutions, accounting
