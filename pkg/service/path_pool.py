"""
并行路径追踪：asyncio 驱动进程池，结果按起点编号合并
"""

import asyncio
import logging
import math
import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

import numpy as np

from service.homotopy import PathResult, TrackOptions, track_paths
from utils.systems import AlgebraicSystem

logger = logging.getLogger(__name__)

def _chunks(starts: List[Tuple[int, np.ndarray]], count: int) -> List[List[Tuple[int, np.ndarray]]]:
    """连续分块，块数为 count"""
    size = max(1, math.ceil(len(starts) / count))
    return [starts[i:i + size] for i in range(0, len(starts), size)]

class PathPool:
    """进程池路径追踪器，可直接作为 homotopy.solve 的 tracker 使用"""

    def __init__(self, workers: Optional[int] = None, chunks_per_worker: int = 4):
        self.workers = workers or os.cpu_count() or 1
        self.chunks_per_worker = chunks_per_worker

    async def track_all(self, target: AlgebraicSystem, start_sys: AlgebraicSystem,
                        starts: List[Tuple[int, np.ndarray]], opts: TrackOptions) -> List[PathResult]:
        """分块提交到进程池，全部完成后按 start_index 排序"""
        if not starts:
            return []
        # 预先编译，子进程随 pickle 一并收到数组
        target.compiled
        start_sys.compiled

        loop = asyncio.get_running_loop()
        chunks = _chunks(starts, self.workers * self.chunks_per_worker)
        logger.info(f"🔄 {len(starts)} 条路径分为 {len(chunks)} 块，{self.workers} 个进程")

        # 调用方可能在线程池中运行，子进程用 spawn 启动
        context = multiprocessing.get_context("spawn")
        with ProcessPoolExecutor(max_workers=self.workers, mp_context=context) as executor:
            futures = [
                loop.run_in_executor(executor, track_paths, target, start_sys, chunk, opts)
                for chunk in chunks
            ]
            batches = await asyncio.gather(*futures)

        results = [r for batch in batches for r in batch]
        return sorted(results, key=lambda r: r.start_index)

    def __call__(self, target: AlgebraicSystem, start_sys: AlgebraicSystem,
                 starts: List[Tuple[int, np.ndarray]], opts: TrackOptions) -> List[PathResult]:
        """同步入口；须在没有运行中事件循环的线程里调用"""
        return asyncio.run(self.track_all(target, start_sys, starts, opts))
