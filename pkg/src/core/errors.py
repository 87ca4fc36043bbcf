"""
几何异常定义
所有几何计算失败均继承自 GeometryError，命令行层据此映射退出码
"""

from typing import Optional


class GeometryError(ValueError):
    """几何计算异常基类"""


class ZeroInputError(GeometryError):
    """输入为零向量（射影点未定义）"""


class BoundaryPointError(GeometryError):
    """点位于 Study 边界 B 上，运动学作用未定义"""


class NotThroughIdentityError(GeometryError):
    """直线不经过单位元 𝔢"""


class ZeroDirectionError(GeometryError):
    """旋转轴方向为零"""


class UndefinedChartError(GeometryError):
    """基点 u 的 u₀ 为零，F_u 未定义"""


class CenterOfProjectionError(GeometryError):
    """点为球极投影中心 (0:0:0:0:1)"""


class CollinearWitnessesError(GeometryError):
    """三个见证点共线，无法确定二维平面"""


class ReducibleSectionError(GeometryError):
    """平面截线可约（限制二次型秩小于3）"""


class BaseLocusError(GeometryError):
    """点位于轨道映射的基轨迹 F_u 中"""


class BaseLocusOnLineError(GeometryError):
    """整条直线位于基轨迹 F_u 中"""


class DegenerateMotionError(GeometryError):
    """双线性运动退化（五个双二次型全为零或张成维数不足）"""


class BasepointError(GeometryError):
    """双二次映射在该参数处五个分量同时为零"""


class NotACyclideError(GeometryError):
    """隐式化得到的二次型束维数不为2"""

    def __init__(self, message: str, pencil_dim: Optional[int] = None):
        super().__init__(message)
        self.pencil_dim = pencil_dim


class IndeterminateCountError(GeometryError):
    """不同探测参数给出的交点数不一致"""

    def __init__(self, message: str, counts=None):
        super().__init__(message)
        self.counts = list(counts or [])


class SameCircleError(GeometryError):
    """两个圆相同，共球判定无意义"""


class DegenerateCircleError(GeometryError):
    """轨道退化为点，无法提升为直线"""


class CenterChartError(GeometryError):
    """经过点位于 x₀ = 0 的坐标卡之外"""


class DegenerateConfigurationError(GeometryError):
    """三直线构造退化（张成空间维数不为3）"""


class NotDoublyRuledError(GeometryError):
    """二次曲面不是双直纹的（秩或符号差不符）"""


class OrbitMismatchError(GeometryError):
    """重建二次曲面的轨道不在目标环面上"""


class NoConvergenceError(GeometryError):
    """数值分解在重启预算内未收敛"""

    def __init__(self, message: str, best_residual: float = float("inf")):
        super().__init__(message)
        self.best_residual = best_residual


class InvalidBiquadraticError(GeometryError):
    """双二次映射不满足 Möbius 恒等式"""


class StudyViolationError(GeometryError):
    """运动不满足 Study 条件"""


class InvalidDivisorClassError(GeometryError):
    """除子类不在二次曲线类集合中"""


class PipelineStageError(GeometryError):
    """流水线某一阶段失败，stage 记录阶段名，cause 为原始异常"""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"阶段 {stage} 失败: {type(cause).__name__}: {cause}")
        self.stage = stage
        self.cause = cause
