"""
轨道映射
orb_u : S∖F_u → S³、直线的轨道（圆或点）、双线性运动的轨道（双二次映射）
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

import numpy as np

from .algebra import DualQuaternion, Quaternion, bilinear_product, component_grid
from .errors import (BaseLocusError, BaseLocusOnLineError, BasepointError,
                     DegenerateMotionError, InvalidBiquadraticError, StudyViolationError)
from .moebius import Circle, MoebiusPoint, Point, circle_from_samples
from .study import BaseLocusSpec, StudyLine, in_F_u, random_study_point
from ..services.config import config_manager
from ..services.logger import logger_manager
from ..utils.forms import (BILINEAR_INDEX, Grid, P1Point, eval_grid, grid_flat, grid_is_zero,
                           grid_mul, grid_scale, grid_sub, veronese)
from ..utils.linalg import is_exact, magnitude, nullspace, rank

# 直线采样参数 (λ:μ)，两个坐标卡中各取 0, 1, −1, 2, 1/2
LINE_SAMPLES: Tuple[P1Point, ...] = ((1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1),
                                     (2, -1), (1, -2))


def orb(spec: BaseLocusSpec, h: DualQuaternion) -> MoebiusPoint:
    """
    轨道映射 orb_u(h) = (p p̄ : w₁ : w₂ : w₃ : 4q q̄ + p p̄|v|² + 2(q v p̄ − p v q̄))

    其中 w = p v p̄ + p q̄ − q p̄。p p̄ ≠ 0 时 τ(orb_u(h)) 即 act(h, v) 的齐次化。

    Args:
        spec: 基点
        h: S 上的点

    Returns:
        S³ 上的点

    Raises:
        BaseLocusError: h ∈ F_u
    """
    if in_F_u(spec, h):
        raise BaseLocusError(f"点位于基轨迹 F_u 中: {h.coords}")
    p, q, v = h.p, h.q, spec.v
    # p p̄ = 0 时像点落在 ∞ 上
    pp = p.norm()
    w = p * v * p.conj() + p * q.conj() - q * p.conj()
    cross_term = (q * v * p.conj() - p * v * q.conj()).w
    last = 4 * q.norm() + pp * v.norm() + 2 * cross_term
    return (pp, w.x, w.y, w.z, last)


def transport_to(spec: BaseLocusSpec) -> DualQuaternion:
    """
    把基点 𝔬 移到 u 的平移 e = 1 − (v/2)ε

    满足 orb_𝔬(e) = u 以及 orb_u(h) = orb_𝔬(h·e)。
    """
    return DualQuaternion.translation(spec.v.vector)


def orbit_of_line(spec: BaseLocusSpec, line: StudyLine) -> Union[Circle, Point]:
    """
    直线的轨道：圆或点

    在固定参数处采样，落入 F_u 的采样点被跳过。

    Raises:
        BaseLocusOnLineError: 有效采样点不足5个（直线整体位于 F_u 中）
    """
    images: List[MoebiusPoint] = []
    for lam, mu in LINE_SAMPLES:
        h = line.point(lam, mu)
        if in_F_u(spec, h):
            logger_manager.debug(f"采样点 ({lam}:{mu}) 位于基轨迹中，跳过")
            continue
        images.append(orb(spec, h))
    if len(images) < 5:
        raise BaseLocusOnLineError("直线上的有效采样点不足5个")
    return circle_from_samples(images)


@dataclass(frozen=True)
class BilinearMotion:
    """
    双线性运动 H(s, t) = a(s, t) + b(s, t)ε

    系数顺序 a₀₀, a₀₁, a₁₀, a₁₁ 对应单项式 s₀t₀, s₀t₁, s₁t₀, s₁t₁。
    """

    a: Tuple[Quaternion, Quaternion, Quaternion, Quaternion]
    b: Tuple[Quaternion, Quaternion, Quaternion, Quaternion]

    def corner(self, k: int) -> DualQuaternion:
        """第 k 个系数点 a_k + b_kε"""
        return DualQuaternion(self.a[k], self.b[k])

    def corners(self) -> List[DualQuaternion]:
        return [self.corner(k) for k in range(4)]

    def evaluate(self, s: P1Point, t: P1Point) -> DualQuaternion:
        """在 (s, t) 处求值"""
        total = None
        for k, (i, j) in enumerate(BILINEAR_INDEX):
            term = self.corner(k).scale(s[i] * t[j])
            total = term if total is None else total + term
        return total

    @property
    def is_exact(self) -> bool:
        return is_exact([c for h in self.corners() for c in h.coords])

    def to_float(self) -> "BilinearMotion":
        """转换为浮点系数"""
        conv = lambda q: Quaternion(*(float(c) for c in q.coords))
        return BilinearMotion(tuple(conv(q) for q in self.a), tuple(conv(q) for q in self.b))

    def study_grid(self) -> Grid:
        """Study 配对 a·b 作为双二次形式的系数网格（9个系数）"""
        grid = [[0] * 3 for _ in range(3)]
        for (i, j), x in zip(BILINEAR_INDEX, self.a):
            for (k, l), y in zip(BILINEAR_INDEX, self.b):
                grid[i + k][j + l] += x.dot(y)
        return tuple(tuple(row) for row in grid)

    def satisfies_study(self) -> bool:
        scale = max(magnitude(h.coords) for h in self.corners()) ** 2
        return grid_is_zero(self.study_grid(), max(scale, 1.0))

    def span_rank(self) -> int:
        """四个系数点在 P⁷ 中张成空间的秩"""
        return rank([h.coords for h in self.corners()])

    def validate(self) -> None:
        """
        检查双线性运动的不变量

        Raises:
            StudyViolationError: Study 条件不恒成立
            DegenerateMotionError: 系数点不张成三维射影空间
        """
        if not self.satisfies_study():
            raise StudyViolationError("双线性运动不满足Study条件")
        r = self.span_rank()
        if r != 4:
            raise DegenerateMotionError(f"系数点张成空间秩为 {r}，应为4")


@dataclass(frozen=True)
class BiquadraticMap:
    """五个双二次形式 X₀..X₄，每个为 3×3 系数网格"""

    X: Tuple[Grid, Grid, Grid, Grid, Grid]

    @property
    def is_exact(self) -> bool:
        return is_exact([c for g in self.X for c in grid_flat(g)])

    def scale(self) -> float:
        return max(magnitude(grid_flat(g)) for g in self.X)

    def identity_defect(self) -> Grid:
        """X₀X₄ − X₁² − X₂² − X₃² 的系数网格"""
        defect = grid_mul(self.X[0], self.X[4])
        for k in (1, 2, 3):
            defect = grid_sub(defect, grid_mul(self.X[k], self.X[k]))
        return defect

    def satisfies_identity(self) -> bool:
        return grid_is_zero(self.identity_defect(), max(self.scale(), 1.0) ** 2)

    def validate(self) -> None:
        """
        Raises:
            InvalidBiquadraticError: Möbius 恒等式不成立
        """
        if not self.satisfies_identity():
            raise InvalidBiquadraticError("双二次映射不满足 X₀X₄ = X₁²+X₂²+X₃²")


def orbit_of_quadric(motion: BilinearMotion) -> BiquadraticMap:
    """
    双线性运动的轨道 (a ā : vec(a b̄ − b ā) : 4 b b̄)

    Args:
        motion: 满足 Study 条件的双线性运动

    Returns:
        双二次映射

    Raises:
        StudyViolationError: 运动不满足 Study 条件
        DegenerateMotionError: 五个形式全为零
    """
    if not motion.satisfies_study():
        raise StudyViolationError("双线性运动不满足Study条件")
    a_bar = [q.conj() for q in motion.a]
    b_bar = [q.conj() for q in motion.b]
    aa = bilinear_product(motion.a, a_bar)
    bb = bilinear_product(motion.b, b_bar)
    ab = bilinear_product(motion.a, b_bar)
    ba = bilinear_product(motion.b, a_bar)
    # a b̄ − b ā 是纯四元数，实部恒为零
    diff = tuple(tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(ab, ba))

    X = (component_grid(aa, 0),
         component_grid(diff, 1),
         component_grid(diff, 2),
         component_grid(diff, 3),
         grid_scale(component_grid(bb, 0), 4))
    result = BiquadraticMap(X)
    if all(grid_is_zero(g) for g in X) if result.is_exact else result.scale() == 0.0:
        raise DegenerateMotionError("五个双二次形式全为零")
    logger_manager.debug("双线性运动的轨道映射计算完成")
    return result


def eval_biquadratic(X: BiquadraticMap, s: P1Point, t: P1Point) -> MoebiusPoint:
    """
    在 (s, t) 处求值

    Raises:
        BasepointError: 五个分量同时为零
    """
    point = tuple(eval_grid(g, s, t) for g in X.X)
    if magnitude(point) == 0.0 or (not is_exact(point)
                                   and magnitude(point) <= 1.0e-14 * max(X.scale(), 1.0)):
        raise BasepointError(f"参数 ({s}, {t}) 是双二次映射的基点")
    return point


def image_quadrics(sample_count: int = 60, seed: int = None) -> Dict[str, int]:
    """
    轨道映射像的支配性证书

    在随机 Study 点上采样 orb_𝔬，经过全部采样点的二次型只有 Möbius 型
    （Veronese 零空间维数恰为1），说明像的 Zariski 闭包是整个 S³。

    Returns:
        {"quadric_dim": 零空间维数, "samples": 采样数}
    """
    seed = config_manager.get('sampling.seed', 20240501) if seed is None else seed
    rng = np.random.default_rng(seed)
    spec = BaseLocusSpec.origin()
    # 零空间维数为1时只剩 Möbius 型
    rows = [veronese(orb(spec, random_study_point(rng))) for _ in range(sample_count)]
    dim = len(nullspace(rows))
    certificate = {"quadric_dim": dim, "samples": sample_count}
    logger_manager.log_certificate("orbit_dominance", certificate)
    return certificate
