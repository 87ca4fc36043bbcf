"""
Study 二次曲面
P⁷ 中的 Study 二次曲面 S、边界 B、运动学作用 φ、过单位元的直线及其分类，
以及轨道映射基轨迹 F_u 的成员判定
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from .algebra import DualQuaternion, IDENTITY, Quaternion, ZERO
from .errors import (BoundaryPointError, NotThroughIdentityError, UndefinedChartError,
                     ZeroDirectionError, ZeroInputError, GeometryError)
from ..services.logger import logger_manager
from ..utils.linalg import (Scalar, cross, div, is_exact, is_zero, magnitude, rank)

# 对偶四元数视为 Study 点时只按射影等价类使用
StudyPoint = DualQuaternion


def study_pairing(h: DualQuaternion) -> Scalar:
    """Study 二次型 p₀q₄ + p₁q₅ + p₂q₆ + p₃q₇"""
    return h.p.dot(h.q)


def study_polar(h: DualQuaternion, g: DualQuaternion) -> Scalar:
    """Study 二次型的极化 B(h, g) = p·q′ + p′·q，满足 B(h, h) = 2⟨h⟩"""
    return h.p.dot(g.q) + g.p.dot(h.q)


def polar_row(h: DualQuaternion) -> Tuple[Scalar, ...]:
    """线性函数 x ↦ B(h, x) 的系数向量（交换 p 与 q 两半）"""
    return h.q.coords + h.p.coords


def on_study(h: DualQuaternion) -> bool:
    """
    判断点是否在 Study 二次曲面上

    Raises:
        ZeroInputError: h 为零
    """
    if h.is_zero():
        raise ZeroInputError("零对偶四元数不是射影点")
    return is_zero(study_pairing(h), magnitude(h.coords) ** 2)


def on_boundary(h: DualQuaternion) -> bool:
    """p p̄ = 0，实数域上即 p = 0"""
    return is_zero(h.p.norm(), magnitude(h.coords) ** 2)


def act(h: DualQuaternion, v: Quaternion) -> Quaternion:
    """
    运动学作用 φ(h, v) = (p v p̄ + p q̄ − q p̄) / (p p̄)

    Args:
        h: S∖B 中的点
        v: 纯四元数表示的空间点

    Returns:
        位移后的点（纯四元数）

    Raises:
        BoundaryPointError: h 位于边界 B 上
    """
    p, q = h.p, h.q
    n = p.norm()
    if is_zero(n, magnitude(h.coords) ** 2):
        raise BoundaryPointError(f"点位于Study边界上，作用未定义: {h.coords}")
    image = p * v * p.conj() + p * q.conj() - q * p.conj()
    return Quaternion(0, div(image.x, n), div(image.y, n), div(image.z, n))


def random_study_point(rng: np.random.Generator, bound: int = 5,
                       scalar: str = "exact") -> DualQuaternion:
    """
    随机生成 S∖B 上的有理点：随机 p, q 后把 q 投影到 p 的正交补上

    Args:
        rng: numpy 随机数生成器
        bound: 整数坐标范围
        scalar: exact / float
    """
    while True:
        p = [int(x) for x in rng.integers(-bound, bound + 1, size=4)]
        q = [int(x) for x in rng.integers(-bound, bound + 1, size=4)]
        if any(p):
            break
    pp = sum(x * x for x in p)
    pq = sum(x * y for x, y in zip(p, q))
    # 投影后 p·q = 0，即 h 落在 S 上
    q = [Fraction(y) - Fraction(pq, pp) * x for x, y in zip(p, q)]
    h = DualQuaternion.from_coords(p + q)
    if scalar == "float":
        return DualQuaternion.from_coords([float(c) for c in h.coords])
    return h


class LineKind(Enum):
    """过单位元直线的类型"""
    ROTATION = "rotation"
    TRANSLATION = "translation"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class StudyLine:
    """
    S 中由两点张成的直线

    kind 只对经过 𝔢 的直线有意义，其他直线为 None。
    """

    g1: DualQuaternion
    g2: DualQuaternion
    kind: Optional[LineKind] = None

    def point(self, lam: Scalar, mu: Scalar) -> DualQuaternion:
        """参数 (λ:μ) 处的点 λg₁ + μg₂"""
        return self.g1.scale(lam) + self.g2.scale(mu)

    def contains(self, h: DualQuaternion) -> bool:
        return rank([self.g1.coords, self.g2.coords, h.coords]) == 2

    def same_as(self, other: "StudyLine") -> bool:
        """作为射影直线相等"""
        return rank([self.g1.coords, self.g2.coords,
                     other.g1.coords, other.g2.coords]) == 2

    def right_mul(self, h: DualQuaternion) -> "StudyLine":
        """逐点右乘 h 得到的直线 {g·h}"""
        return make_line(self.g1 * h, self.g2 * h)

    def left_mul(self, h: DualQuaternion) -> "StudyLine":
        """逐点左乘 h 得到的直线 {h·g}"""
        return make_line(h * self.g1, h * self.g2)

    def generator(self) -> DualQuaternion:
        """
        直线上 𝔢 分量（p₀）为零的点，与 𝔢 一起张成直线

        Raises:
            NotThroughIdentityError: 直线不经过 𝔢
        """
        if rank([self.g1.coords, self.g2.coords, IDENTITY.coords]) != 2:
            raise NotThroughIdentityError("直线不经过单位元 𝔢")
        a, b = self.g1.p.w, self.g2.p.w
        # 消去 p₀ 分量
        g = self.g2.scale(a) - self.g1.scale(b)
        if g.is_zero():
            g = self.g2 if is_zero(b) else self.g1
        return g


def make_line(g1: DualQuaternion, g2: DualQuaternion) -> StudyLine:
    """
    构造 S 中的直线并缓存其类型

    Raises:
        GeometryError: 两点射影相关，或直线不在 S 上
    """
    if rank([g1.coords, g2.coords]) != 2:
        raise GeometryError("张成直线的两点射影相关")
    scale = max(magnitude(g1.coords), magnitude(g2.coords)) ** 2
    for value in (study_pairing(g1), study_pairing(g2), study_polar(g1, g2)):
        if not is_zero(value, scale):
            raise GeometryError("直线不在Study二次曲面上")
    # 不过 𝔢 的直线没有类型
    line = StudyLine(g1, g2)
    try:
        kind = classify_line(line)
    except NotThroughIdentityError:
        kind = None
    return StudyLine(g1, g2, kind)


def classify_line(line: StudyLine) -> LineKind:
    """
    过 𝔢 直线的分类

    先把第二个生成元规范为 𝔢 分量为零，再看原部的向量部分：
    非零为旋转；原部为零且对偶部为纯四元数为平移；否则退化。

    Raises:
        NotThroughIdentityError: 直线不经过 𝔢
    """
    g = line.generator()
    if not g.p.is_zero():
        return LineKind.ROTATION
    if g.q.is_pure():
        return LineKind.TRANSLATION
    return LineKind.DEGENERATE


def rotation_line(axis_point: Sequence[Scalar], axis_dir: Sequence[Scalar]) -> StudyLine:
    """
    绕轴 {c + λd} 旋转的单参数子群

    生成元 g = d + (d×c)ε，满足 act(g, c) = c。

    Args:
        axis_point: 轴上一点 c
        axis_dir: 轴方向 d（无需单位化）

    Raises:
        ZeroDirectionError: d 为零
    """
    if all(is_zero(x) for x in axis_dir) if not is_exact(axis_dir) else not any(axis_dir):
        raise ZeroDirectionError("旋转轴方向为零")
    g = DualQuaternion(Quaternion.from_vector(axis_dir),
                       Quaternion.from_vector(cross(axis_dir, axis_point)))
    return make_line(IDENTITY, g)


def translation_line(direction: Sequence[Scalar]) -> StudyLine:
    """
    沿 direction 平移的单参数子群 span(𝔢, tε)

    Raises:
        ZeroDirectionError: 方向为零
    """
    if all(is_zero(x) for x in direction):
        raise ZeroDirectionError("平移方向为零")
    return make_line(IDENTITY, DualQuaternion(ZERO, Quaternion.from_vector(direction)))


def rotation_axis(line: StudyLine) -> Tuple[Tuple[Scalar, ...], Tuple[Scalar, ...]]:
    """
    旋转直线的轴：返回 (轴上一点, 方向)

    生成元 d + mε 中 m = d×c，取 c = (m×d)/|d|²（轴上离原点最近的点）。
    """
    g = line.generator()
    d = g.p.vector
    m = g.q.vector
    dd = sum(x * x for x in d)
    # 旋转直线的 d 非零
    c = tuple(div(x, dd) for x in cross(m, d))
    return c, d


@dataclass(frozen=True)
class BaseLocusSpec:
    """
    轨道映射的基点 u 及其欧氏坐标 v = τ(u) 去齐次化

    Raises:
        UndefinedChartError: u₀ = 0
    """

    u: Tuple[Scalar, ...] = (1, 0, 0, 0, 0)

    def __post_init__(self):
        if len(self.u) != 5:
            raise ValueError(f"基点需要5个坐标，收到 {len(self.u)} 个")
        if is_zero(self.u[0], magnitude(self.u)):
            raise UndefinedChartError(f"基点 u₀ = 0，F_u 未定义: {self.u}")

    @classmethod
    def origin(cls) -> "BaseLocusSpec":
        """基点 𝔬 = (1:0:0:0:0)"""
        return cls((1, 0, 0, 0, 0))

    @property
    def v(self) -> Quaternion:
        u0 = self.u[0]
        return Quaternion(0, div(self.u[1], u0), div(self.u[2], u0), div(self.u[3], u0))

    @property
    def is_origin(self) -> bool:
        return all(is_zero(x, magnitude(self.u)) for x in self.u[1:])


def base_locus_terms(spec: BaseLocusSpec, h: DualQuaternion):
    """
    F_u 定义中的三个表达式

    Returns:
        (p p̄, p v p̄ + p q̄ − q p̄, 4q q̄ + 2(q v p̄ − p v q̄)) 均为四元数
    """
    p, q, v = h.p, h.q, spec.v
    first = p * p.conj()
    second = p * v * p.conj() + p * q.conj() - q * p.conj()
    third = (q * q.conj()).scale(4) + (q * v * p.conj() - p * v * q.conj()).scale(2)
    return first, second, third


def in_F_u(spec: BaseLocusSpec, h: DualQuaternion) -> bool:
    """
    判断点是否位于基轨迹 F_u 中

    实数域上只要 p ≠ 0 或 q ≠ 0 就不在 F_u 中（平方和论证）。
    """
    scale = max(magnitude(h.coords), 1.0) ** 2 * max(magnitude(spec.v.coords), 1.0)
    for term in base_locus_terms(spec, h):
        if not all(is_zero(c, scale) for c in term.coords):
            return False
    return True


def axis_through(line: StudyLine, spec: BaseLocusSpec) -> bool:
    """
    旋转直线的轴是否经过 τ(u)

    成立时该直线在 orb_u 下的轨道退化为一点。平移直线恒返回 False。
    """
    if line.kind != LineKind.ROTATION:
        return False
    g = line.generator()
    d, m = g.p.vector, g.q.vector
    v = spec.v.vector
    expected = cross(d, v)
    scale = max(magnitude(d), 1.0) * max(magnitude(v), magnitude(m), 1.0)
    collapsed = all(is_zero(a - b, scale) for a, b in zip(expected, m))
    if collapsed:
        logger_manager.debug(f"旋转轴经过基点 {v}，轨道退化为点")
    return collapsed
