"""
批量执行器
负责在线程池中并行执行独立的验证任务，结果按输入序号合并
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Dict, Generic, List, Optional, Sequence, TypeVar

import psutil

from ..services.config import config_manager
from ..services.logger import logger_manager

T = TypeVar('T')
R = TypeVar('R')


@dataclass
class BatchItem(Generic[R]):
    """单个任务的结果：成功时 value 有值，几何失败时 error 记录异常类型与信息"""

    index: int
    value: Optional[R] = None
    error: Optional[str] = None
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_dict(self) -> Dict[str, Any]:
        return {"index": self.index, "ok": self.ok, "error": self.error}


def host_info() -> Dict[str, str]:
    """获取主机信息"""
    return {
        'cpu_count': str(psutil.cpu_count()),
        'cpu_count_physical': str(psutil.cpu_count(logical=False)),
        'memory_total': f"{psutil.virtual_memory().total / (1024 ** 3):.2f} GB",
        'memory_available': f"{psutil.virtual_memory().available / (1024 ** 3):.2f} GB",
    }


class BatchRunner:
    """批量任务执行器"""

    def __init__(self, workers: Optional[int] = None):
        """
        初始化执行器

        Args:
            workers: 工作线程数，None 读取配置 runner.workers，0 表示按CPU核心数确定
        """
        if workers is None:
            workers = int(config_manager.get_runner_config().get('workers', 0))
        if workers < 0:
            raise ValueError(f"工作线程数不能为负: {workers}")
        self.workers = workers or max(1, psutil.cpu_count() or 1)

    def _run_one(self, func: Callable[[T], R], index: int, item: T) -> BatchItem[R]:
        start = time.perf_counter()
        try:
            value = func(item)
        except ValueError as e:
            # GeometryError 以及线性代数中的退化都记入结果
            logger_manager.warning(f"第 {index} 个任务失败: {type(e).__name__}: {e}")
            return BatchItem(index, error=f"{type(e).__name__}: {e}",
                             elapsed=time.perf_counter() - start)
        return BatchItem(index, value=value, elapsed=time.perf_counter() - start)

    def map(self, func: Callable[[T], R], items: Sequence[T]) -> List[BatchItem[R]]:
        """
        并行执行 func(item)，结果按输入顺序返回

        几何失败（GeometryError 及其他 ValueError）被记录在对应结果中，其他异常直接抛出。

        Args:
            func: 任务函数
            items: 任务输入

        Returns:
            与 items 等长、同序的结果列表
        """
        logger_manager.info(f"批量执行开始: {len(items)} 个任务, {self.workers} 个工作线程")
        logger_manager.debug(f"主机信息: {host_info()}")
        # 单线程时不建线程池
        if self.workers == 1 or len(items) <= 1:
            results = [self._run_one(func, i, item) for i, item in enumerate(items)]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                futures = [pool.submit(self._run_one, func, i, item)
                           for i, item in enumerate(items)]
                results = [f.result() for f in futures]
        failed = sum(1 for r in results if not r.ok)
        logger_manager.info(f"批量执行完成: 成功 {len(results) - failed}, 失败 {failed}")
        return results
