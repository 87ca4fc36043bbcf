"""
Möbius 二次曲面 S³ ⊂ P⁴
球极投影及其逆、圆（S³ 上的不可约二次曲线）、圆的欧氏视图与圆的交点
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from .errors import (CenterOfProjectionError, CollinearWitnessesError, GeometryError,
                     ReducibleSectionError, SameCircleError, ZeroInputError)
from ..services.logger import logger_manager
from ..utils.forms import binary_roots
from ..utils.linalg import (Scalar, Vector, cross, div, dot, exact_sqrt, is_exact,
                            is_perfect_square, is_zero, magnitude, normalize, nullspace,
                            projectively_equal, rank, sign)

MoebiusPoint = Tuple[Scalar, ...]

ORIGIN: MoebiusPoint = (1, 0, 0, 0, 0)
CENTER: MoebiusPoint = (0, 0, 0, 0, 1)


def moebius_form(x: Sequence[Scalar]) -> Scalar:
    """x₀x₄ − x₁² − x₂² − x₃²"""
    return x[0] * x[4] - x[1] * x[1] - x[2] * x[2] - x[3] * x[3]


def moebius_bilinear(x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
    """Möbius 二次型的 2 倍极化形式，满足 moebius_bilinear(x, x) = 2·moebius_form(x)"""
    return (x[0] * y[4] + x[4] * y[0]
            - 2 * (x[1] * y[1] + x[2] * y[2] + x[3] * y[3]))


def on_sphere(x: Sequence[Scalar]) -> bool:
    """
    判断点是否在 S³ 上

    Raises:
        ZeroInputError: x 为零
    """
    if all(is_zero(c) for c in x) if not is_exact(x) else not any(x):
        raise ZeroInputError("零向量不是射影点")
    return is_zero(moebius_form(x), magnitude(x) ** 2)


def stereo(x: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    """
    球极投影 τ：(x₀:…:x₄) ↦ (x₀:x₁:x₂:x₃)

    Raises:
        CenterOfProjectionError: x 为投影中心
    """
    head = tuple(x[:4])
    if all(is_zero(c, magnitude(x)) for c in head):
        raise CenterOfProjectionError("投影中心 (0:0:0:0:1) 没有像")
    return head


def stereo_inv(v: Sequence[Scalar]) -> MoebiusPoint:
    """逆球极投影 v ↦ (1 : v₁ : v₂ : v₃ : |v|²)"""
    return (1, v[0], v[1], v[2], v[0] * v[0] + v[1] * v[1] + v[2] * v[2])


def to_euclidean(x: Sequence[Scalar]) -> Tuple[Scalar, Scalar, Scalar]:
    """S³ 上的有限点去齐次化为 ℝ³ 中的点"""
    head = stereo(x)
    return tuple(div(c, head[0]) for c in head[1:])


@dataclass(frozen=True)
class Circle:
    """
    S³ 上的圆：P⁴ 中的二维平面（两个线性型）加三个见证点
    """

    plane: Tuple[Vector, Vector]
    witnesses: Tuple[MoebiusPoint, MoebiusPoint, MoebiusPoint]

    @property
    def through_center(self) -> bool:
        """平面是否经过投影中心（欧氏像为直线）"""
        scale = max(magnitude(f) for f in self.plane)
        return all(is_zero(f[4], scale) for f in self.plane)

    @property
    def through_origin(self) -> bool:
        scale = max(magnitude(f) for f in self.plane)
        return all(is_zero(f[0], scale) for f in self.plane)

    def contains(self, x: Sequence[Scalar]) -> bool:
        scale = magnitude(x)
        return (all(is_zero(dot(f, x), scale * magnitude(f)) for f in self.plane)
                and on_sphere(x))

    def same_as(self, other: "Circle") -> bool:
        return rank(list(self.plane) + list(other.plane)) == 2


Point = MoebiusPoint


def circle_through(a: Sequence[Scalar], b: Sequence[Scalar],
                   c: Sequence[Scalar]) -> Circle:
    """
    经过三点的圆

    Args:
        a, b, c: S³ 上两两不同的点

    Returns:
        圆（平面为三点的零化子）

    Raises:
        CollinearWitnessesError: 三点不张成二维平面
        ReducibleSectionError: 限制二次型秩小于3
    """
    points = [tuple(a), tuple(b), tuple(c)]
    if rank(points) != 3:
        raise CollinearWitnessesError("三个见证点共线或重合")
    # Möbius 型限制在三点张成的平面上必须非退化
    gram = [[moebius_bilinear(x, y) for y in points] for x in points]
    if rank(gram) < 3:
        raise ReducibleSectionError("平面截线可约，不是圆")
    # 平面的两个线性型是三点的零化子
    plane = tuple(normalize(f) for f in nullspace(points))
    return Circle(plane=plane, witnesses=tuple(points))


def circle_from_samples(samples: Sequence[Sequence[Scalar]]) -> Union[Circle, Point]:
    """
    由一组采样点判定圆或点

    零向量（基点）被丢弃；全部射影相等时返回该点，秩为3时返回圆。

    Raises:
        GeometryError: 采样点不足或不共面
    """
    # 基点处采样值为零
    points = [tuple(x) for x in samples if magnitude(x) > 0]
    if not points:
        raise GeometryError("采样点全部为零")
    if all(projectively_equal(points[0], x) for x in points[1:]):
        return normalize(points[0])

    r = rank(points)
    if r != 3:
        raise GeometryError(f"采样点张成维数 {r} ≠ 3，不是二次曲线")

    # 第一组线性无关的三点作见证点
    distinct: List[MoebiusPoint] = []
    for x in points:
        if not any(projectively_equal(x, y) for y in distinct):
            distinct.append(x)
    for i in range(len(distinct)):
        for j in range(i + 1, len(distinct)):
            for k in range(j + 1, len(distinct)):
                triple = [distinct[i], distinct[j], distinct[k]]
                if rank(triple) == 3:
                    return circle_through(*triple)
    raise CollinearWitnessesError("采样点中找不到三个独立的见证点")


@dataclass(frozen=True)
class EuclideanCircle:
    """τ(C) 的欧氏数据：圆心、单位法向、半径"""

    center: Tuple[float, float, float]
    normal: Tuple[float, float, float]
    radius: float


@dataclass(frozen=True)
class EuclideanLine:
    """经过投影中心的圆在 ℝ³ 中的像：直线（离原点最近的点与单位方向）"""

    point: Tuple[float, float, float]
    direction: Tuple[float, float, float]


EuclideanView = Union[EuclideanCircle, EuclideanLine]


@dataclass(frozen=True)
class CircleAxis:
    """
    圆的精确轴数据

    圆的情形：圆心、未单位化法向与半径平方；直线情形：直线上一点与方向，
    radius_sq 为 None。
    """

    point: Tuple[Scalar, Scalar, Scalar]
    direction: Tuple[Scalar, Scalar, Scalar]
    radius_sq: Scalar = None

    @property
    def is_line(self) -> bool:
        return self.radius_sq is None


def _finite_witnesses(circle: Circle) -> List[Tuple[Scalar, Scalar, Scalar]]:
    finite = []
    for w in circle.witnesses:
        if not is_zero(w[0], magnitude(w)):
            finite.append(to_euclidean(w))
    return finite


def circle_axis(circle: Circle) -> CircleAxis:
    """
    圆的精确轴：由三个有限见证点求外心与法向

    精确输入得到有理结果，供提升为 Study 直线使用。
    """
    finite = _finite_witnesses(circle)
    if circle.through_center:
        # 投影中心本身可能是见证点，有限见证点至少两个
        a, b = finite[0], finite[1]
        return CircleAxis(point=a, direction=tuple(y - x for x, y in zip(a, b)))

    a, b, c = finite[:3]
    u = tuple(y - x for x, y in zip(a, b))
    w = tuple(y - x for x, y in zip(a, c))
    n = cross(u, w)
    nn = dot(n, n)
    uu, ww = dot(u, u), dot(w, w)
    # 外心 = a + (|u|²(w×n) + |w|²(n×u)) / 2|n|²
    offset = tuple(uu * p + ww * q for p, q in zip(cross(w, n), cross(n, u)))
    center = tuple(x + div(o, 2 * nn) for x, o in zip(a, offset))
    radius_sq = sum((x - m) * (x - m) for x, m in zip(a, center))
    return CircleAxis(point=center, direction=n, radius_sq=radius_sq)


def _canonical_direction(v: Sequence[Scalar]) -> Tuple[float, float, float]:
    arr = np.array([float(x) for x in v])
    arr = arr / np.linalg.norm(arr)
    for x in arr:
        if abs(x) > 1.0e-12:
            if x < 0:
                arr = -arr
            break
    return tuple(float(x) for x in arr)


def euclidean_view(circle: Circle) -> EuclideanView:
    """
    圆在球极投影下的欧氏视图

    法向规范为第一个非零分量为正。
    """
    axis = circle_axis(circle)
    if axis.is_line:
        direction = _canonical_direction(axis.direction)
        a = np.array([float(x) for x in axis.point])
        d = np.array(direction)
        # 垂足：直线上离原点最近的点
        foot = a - np.dot(a, d) * d
        return EuclideanLine(point=tuple(float(x) for x in foot), direction=direction)
    return EuclideanCircle(
        center=tuple(float(x) for x in axis.point),
        normal=_canonical_direction(axis.direction),
        radius=float(np.sqrt(float(axis.radius_sq))),
    )


def _rational_frame(n: Sequence[Scalar]) -> Tuple[Vector, Vector]:
    """有理单位向量 n 的有理正交补：Householder 反射把 e₃ 映到 n"""
    w = (n[0], n[1], n[2] - 1)
    ww = dot(w, w)
    if ww == 0:
        return (1, 0, 0), (0, 1, 0)

    def reflect(e):
        k = div(2 * dot(w, e), ww)
        return tuple(x - k * y for x, y in zip(e, w))

    return reflect((1, 0, 0)), reflect((0, 1, 0))


def circle_from_euclidean(view: EuclideanView) -> Circle:
    """
    欧氏视图的逆：取三个点提升到 S³ 后求圆

    直线情形以投影中心为一个见证点。精确视图（有理圆心、有理半径、
    |n|² 为完全平方的法向）得到精确圆，其余情形按浮点构造。
    """
    if isinstance(view, EuclideanLine):
        a = tuple(view.point)
        b = tuple(x + d for x, d in zip(view.point, view.direction))
        return circle_through(CENTER, stereo_inv(a), stereo_inv(b))

    if view.radius <= 0:
        raise ValueError(f"半径必须为正数: {view.radius}")
    data = tuple(view.center) + tuple(view.normal) + (view.radius,)
    if is_exact(data) and is_perfect_square(dot(view.normal, view.normal)):
        # 有理单位法向的反射标架是有理的，三个见证点因而都是有理点
        length = exact_sqrt(dot(view.normal, view.normal))
        e1, e2 = _rational_frame([div(x, length) for x in view.normal])
        r = view.radius
        samples = [tuple(c + r * u for c, u in zip(view.center, e)) for e in (e1, e2)]
        samples.append(tuple(c - r * u for c, u in zip(view.center, e1)))
        return circle_through(*[stereo_inv(p) for p in samples])

    m = np.array([float(x) for x in view.center])
    n = np.array([float(x) for x in view.normal])
    n = n / np.linalg.norm(n)
    # 取与 n 最不平行的坐标轴构造平面内的正交标架
    helper = np.eye(3)[int(np.argmin(np.abs(n)))]
    e1 = np.cross(n, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    r = float(view.radius)
    samples = [m + r * e1, m + r * e2, m - r * e1]
    return circle_through(*[stereo_inv(tuple(float(x) for x in p)) for p in samples])


def circle_intersection(first: Circle, second: Circle) -> List[MoebiusPoint]:
    """
    两圆的实交点

    四个线性型秩为4时平面交于一点，检验其是否在 S³ 上；秩为3时平面交于
    直线，按限制二次型的判别式求 0、1 或 2 个交点。精确模式下无理交点以
    浮点近似给出。

    Raises:
        SameCircleError: 两圆共面（相同）
    """
    forms = list(first.plane) + list(second.plane)
    r = rank(forms)
    if r == 2:
        raise SameCircleError("两个圆位于同一平面")
    kernel = nullspace(forms)
    if r == 4:
        # 两个平面交于一点
        x = kernel[0]
        return [normalize(x)] if on_sphere(x) else []

    # 两个平面交于直线 span(x, y)，Möbius 型限制为二元二次型
    x, y = kernel
    coeffs = (moebius_form(x), moebius_bilinear(x, y), moebius_form(y))
    count = _quadratic_real_count(coeffs)
    if count == 0:
        return []
    if count == 1:
        # 二重根 (−b : 2a)
        a, b, _ = coeffs
        lam, mu = (-b, 2 * a) if not is_zero(a, magnitude(coeffs)) else (1, 0)
        return [normalize(tuple(lam * p + mu * q for p, q in zip(x, y)))]
    exact = is_exact(coeffs) and is_perfect_square(coeffs[1] ** 2 - 4 * coeffs[0] * coeffs[2])
    if not exact:
        # 判别式不是完全平方，交点无理
        coeffs = tuple(float(c) for c in coeffs)
        x = tuple(float(c) for c in x)
        y = tuple(float(c) for c in y)
    points: List[MoebiusPoint] = []
    for lam, mu in binary_roots(coeffs):
        z = normalize(tuple(lam * a + mu * b for a, b in zip(x, y)))
        if not any(projectively_equal(z, w) for w in points):
            points.append(z)
    logger_manager.debug(f"两圆交于直线，实交点 {len(points)} 个")
    return points


def _quadratic_real_count(coeffs: Sequence[Scalar]) -> int:
    a, b, c = coeffs
    disc = b * b - 4 * a * c
    scale = max(magnitude(coeffs), 1.0e-300) ** 2
    if all(is_zero(x, magnitude(coeffs)) for x in coeffs):
        raise GeometryError("直线整条位于 S³ 上")
    s = sign(disc, scale)
    return {-1: 0, 0: 1, 1: 2}[s]


def circle_intersection_count(first: Circle, second: Circle) -> int:
    """两圆实交点个数（精确模式下只用判别式符号，不求根）"""
    forms = list(first.plane) + list(second.plane)
    r = rank(forms)
    if r == 2:
        raise SameCircleError("两个圆位于同一平面")
    kernel = nullspace(forms)
    if r == 4:
        return 1 if on_sphere(kernel[0]) else 0
    x, y = kernel
    return _quadratic_real_count((moebius_form(x), moebius_bilinear(x, y), moebius_form(y)))
