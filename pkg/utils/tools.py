import hashlib
import json
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

logger = logging.getLogger(__name__)

def canonical_key(values: Iterable[complex], digits: Optional[int] = None) -> Tuple[float, ...]:
    """复数向量的规范排序键：逐坐标按 (实部, 虚部) 字典序"""
    key = []
    for z in values:
        z = complex(z)
        re, im = z.real, z.imag
        if digits is not None:
            re, im = round(re, digits), round(im, digits)
            # 消除 -0.0
            re, im = re + 0.0, im + 0.0
        key.append(re)
        key.append(im)
    return tuple(key)

def inf_norm(values: Sequence[complex]) -> float:
    """无穷范数"""
    arr = np.asarray(values, dtype=np.complex128)
    if arr.size == 0:
        return 0.0
    return float(np.max(np.abs(arr)))

def relative_distance(a: Sequence[complex], b: Sequence[complex]) -> float:
    """相对距离 ‖a−b‖∞ / max(1, ‖a‖∞, ‖b‖∞)"""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    return float(np.max(np.abs(a - b))) / max(1.0, inf_norm(a), inf_norm(b))

def bottleneck_assignment(dist: np.ndarray) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    瓶颈指派：在所有完美匹配中最小化最大配对距离

    先对阈值二分，用 linear_sum_assignment 判断阈值以下是否存在完美匹配；
    再在该阈值下最小化总距离，保证结果确定。

    Args:
        dist: 方阵，dist[i, j] 为左侧 i 与右侧 j 的距离

    Returns:
        (row_ind, col_ind, bottleneck)
    """
    dist = np.asarray(dist, dtype=np.float64)
    n = dist.shape[0]
    if dist.shape != (n, n):
        raise ValueError(f"bottleneck_assignment requires a square matrix, got {dist.shape}")
    if n == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, 0.0

    thresholds = np.unique(dist)
    lo, hi = 0, len(thresholds) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        blocked = (dist > thresholds[mid]).astype(np.float64)
        rows, cols = linear_sum_assignment(blocked)
        if blocked[rows, cols].sum() == 0:
            hi = mid
        else:
            lo = mid + 1
    bottleneck = float(thresholds[lo])

    # 阈值内再按总距离最小化
    penalty = float(dist.max()) * n + 1.0
    cost = np.where(dist > bottleneck, penalty, dist)
    rows, cols = linear_sum_assignment(cost)
    return rows, cols, bottleneck

class UnionFind:
    """并查集（路径压缩 + 按秩合并）"""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        px, py = self.find(x), self.find(y)
        if px == py:
            return
        if self.rank[px] < self.rank[py]:
            px, py = py, px
        self.parent[py] = px
        if self.rank[px] == self.rank[py]:
            self.rank[px] += 1

    def groups(self) -> List[List[int]]:
        """按最小成员下标排序的分组"""
        result: Dict[int, List[int]] = {}
        for i in range(len(self.parent)):
            result.setdefault(self.find(i), []).append(i)
        return sorted(result.values(), key=lambda members: members[0])

def complex_pair(z: complex) -> List[float]:
    """复数转 [re, im]"""
    z = complex(z)
    return [z.real + 0.0, z.imag + 0.0]

def pair_complex(pair: Sequence[float]) -> complex:
    """[re, im] 转复数"""
    return complex(float(pair[0]), float(pair[1]))

def fingerprint(data: dict) -> str:
    """字典的稳定指纹，用作缓存键"""
    payload = json.dumps(data, sort_keys=True, separators=(',', ':'))
    return hashlib.sha1(payload.encode('utf-8')).hexdigest()[:16]
