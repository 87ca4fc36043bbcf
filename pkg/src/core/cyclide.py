"""
Darboux 环面
双二次映射的像：数值隐式化（二次型束）、圆族成员、族间交点数与共球判定
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np

from .errors import BasepointError, IndeterminateCountError, NotACyclideError, SameCircleError
from .moebius import (Circle, MoebiusPoint, Point, circle_from_samples,
                      circle_intersection_count)
from .orbit import BiquadraticMap, eval_biquadratic
from ..services.config import config_manager
from ..services.logger import logger_manager
from ..utils.forms import P1Point, veronese, veronese_index
from ..utils.linalg import (Scalar, div, dot, is_exact, is_zero, magnitude, normalize,
                            nullspace, rank)

# Möbius 型 x₀x₄ − x₁² − x₂² − x₃² 的 Veronese 系数
MOEBIUS_COEFFICIENTS: Tuple[int, ...] = tuple(
    1 if (i, j) == (0, 4) else (-1 if i == j and i in (1, 2, 3) else 0)
    for i in range(5) for j in range(i, 5)
)

# 圆族成员的采样参数与族间交点数的固定探测参数
MEMBER_SAMPLES: Tuple[P1Point, ...] = ((1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1),
                                       (2, -1))
FAMILY_PROBES: Tuple[P1Point, ...] = ((1, 1), (1, 2), (1, -1), (2, 1), (1, 3), (3, -1),
                                      (1, -2), (2, 3), (1, 4), (3, 2))


@dataclass(frozen=True)
class QuadricForm:
    """
    P⁴ 中的二次型，以 15 个 Veronese 系数存储（i ≤ j 字典序）
    """

    coefficients: Tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.coefficients) != 15:
            raise ValueError(f"二次型需要15个系数，收到 {len(self.coefficients)} 个")
        if magnitude(self.coefficients) == 0.0:
            raise ValueError("二次型不能为零")

    @classmethod
    def moebius(cls) -> "QuadricForm":
        return cls(MOEBIUS_COEFFICIENTS)

    @property
    def matrix(self) -> Tuple[Tuple[Scalar, ...], ...]:
        """对称 5×5 矩阵：M_ii = c_ii，M_ij = c_ij / 2"""
        rows = []
        for i in range(5):
            row = []
            for j in range(5):
                c = self.coefficients[veronese_index(i, j)]
                row.append(c if i == j else div(c, 2))
            rows.append(tuple(row))
        return tuple(rows)

    def evaluate(self, x: Sequence[Scalar]) -> Scalar:
        return dot(self.coefficients, veronese(x))

    def vanishes_at(self, x: Sequence[Scalar]) -> bool:
        return is_zero(self.evaluate(x), magnitude(self.coefficients) * magnitude(x) ** 2)


@dataclass(frozen=True)
class Cyclide:
    """
    Darboux 环面：参数化加二次型束（Möbius 型与另一个型）
    """

    param: BiquadraticMap
    pencil: Tuple[QuadricForm, QuadricForm]
    certificate: Dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def second(self) -> QuadricForm:
        return self.pencil[1]


class FamilyKind(Enum):
    """参数圆族：S 族为 s = 常数，T 族为 t = 常数"""
    S = "s"
    T = "t"


@dataclass(frozen=True)
class CircleFamily:
    which: FamilyKind
    parent: Cyclide

    def other(self) -> "CircleFamily":
        return CircleFamily(FamilyKind.T if self.which == FamilyKind.S else FamilyKind.S,
                            self.parent)


def _sample_parameters(rng: np.random.Generator, count: int,
                       exact: bool) -> List[Tuple[P1Point, P1Point]]:
    params = []
    while len(params) < count:
        s = tuple(int(x) for x in rng.integers(-6, 7, size=2))
        t = tuple(int(x) for x in rng.integers(-6, 7, size=2))
        # (0:0) 不是射影点
        if not any(s) or not any(t):
            continue
        if not exact:
            s = tuple(float(x) for x in s)
            t = tuple(float(x) for x in t)
        params.append((s, t))
    return params


def _image_samples(X: BiquadraticMap, rng: np.random.Generator,
                   count: int) -> List[MoebiusPoint]:
    points = []
    for s, t in _sample_parameters(rng, count * 2, X.is_exact):
        try:
            points.append(eval_biquadratic(X, s, t))
        except BasepointError:
            continue
        if len(points) == count:
            break
    return points


def _residual(form: QuadricForm, points: Sequence[MoebiusPoint]) -> float:
    worst = 0.0
    coeff_scale = max(magnitude(form.coefficients), 1.0e-300)
    for x in points:
        value = form.evaluate(x)
        if is_exact([value]):
            worst = max(worst, abs(float(value)))
        else:
            worst = max(worst, abs(float(value)) / (coeff_scale * max(magnitude(x), 1.0e-300) ** 2))
    return worst


def implicitize(X: BiquadraticMap, sample_count: int = None, seed: int = None) -> Cyclide:
    """
    数值隐式化

    在像上采样，构造 15 列的二次 Veronese 矩阵，其零空间即经过像的二次型。
    零空间维数必须恰为2且包含 Möbius 型，第二个型取与 Möbius 型无关的代表，
    并在新采样点上验证。

    Args:
        X: 满足 Möbius 恒等式的双二次映射
        sample_count: 采样点数量（至少40）
        seed: 随机种子

    Returns:
        环面

    Raises:
        NotACyclideError: 零空间维数不为2，或第二个型在新采样点上不为零
    """
    sample_count = sample_count or int(config_manager.get('sampling.implicitize', 40))
    if sample_count < 40:
        raise ValueError("隐式化采样点数量不能少于40")
    seed = int(config_manager.get('sampling.seed', 20240501)) if seed is None else seed
    X.validate()

    rng = np.random.default_rng(seed)
    points = _image_samples(X, rng, sample_count)
    rows = [veronese(x) for x in points]
    kernel = nullspace(rows)
    dim = len(kernel)
    logger_manager.debug(f"隐式化: {len(points)} 个采样点，二次型空间维数 {dim}")
    if dim != 2:
        raise NotACyclideError(f"经过像的二次型空间维数为 {dim}，不是2", pencil_dim=dim)
    if rank(kernel + [MOEBIUS_COEFFICIENTS]) != 2:
        raise NotACyclideError("二次型束不包含 Möbius 型", pencil_dim=dim)

    # 消去 x₀x₄ 系数后与 Möbius 型线性无关
    k = veronese_index(0, 4)
    candidates = [tuple(c - n[k] * m for c, m in zip(n, MOEBIUS_COEFFICIENTS)) for n in kernel]
    best = max(candidates, key=magnitude)
    second = QuadricForm(normalize(best))

    validation = int(config_manager.get('sampling.validation', 100))
    fresh = _image_samples(X, rng, validation)
    residual = _residual(second, fresh)
    tolerance = config_manager.tolerance('residual')
    # 精确模式要求残差严格为零
    if (X.is_exact and residual != 0.0) or residual > tolerance:
        raise NotACyclideError(f"第二个二次型在新采样点上残差 {residual:.3e}", pencil_dim=dim)

    certificate = {"pencil_dim": dim, "residual": residual}
    logger_manager.log_certificate("implicitize", certificate)
    return Cyclide(param=X, pencil=(QuadricForm.moebius(), second), certificate=certificate)


def family_member(family: CircleFamily, value: P1Point) -> Union[Circle, Point]:
    """
    圆族中冻结参数为 value 的成员

    S 族冻结 s、让 t 取样；T 族反之。
    """
    X = family.parent.param
    exact = X.is_exact and is_exact(value)
    samples = []
    for r in MEMBER_SAMPLES:
        r = r if exact else tuple(float(c) for c in r)
        s, t = (value, r) if family.which == FamilyKind.S else (r, value)
        try:
            samples.append(eval_biquadratic(X, s, t))
        except BasepointError:
            continue
    return circle_from_samples(samples)


def family_intersection(first: CircleFamily, second: CircleFamily) -> int:
    """
    F·F′：一般成员之间的实交点数

    在10个固定探测参数上计算，F′ 的成员取错开3位的探测参数；
    各次结果必须一致。

    Raises:
        IndeterminateCountError: 探测结果不一致
    """
    counts = []
    n = len(FAMILY_PROBES)
    for k in range(n):
        c1 = family_member(first, FAMILY_PROBES[k])
        c2 = family_member(second, FAMILY_PROBES[(k + 3) % n])
        # 成员退化为点时交点数无意义
        if not isinstance(c1, Circle) or not isinstance(c2, Circle):
            raise IndeterminateCountError("探测成员退化为点", counts)
        counts.append(circle_intersection_count(c1, c2))
    if len(set(counts)) != 1:
        raise IndeterminateCountError(f"探测交点数不一致: {counts}", counts)
    logger_manager.debug(f"族间交点数 {first.which.value}·{second.which.value} = {counts[0]}")
    return counts[0]


def cospherical(first: Circle, second: Circle) -> bool:
    """
    两圆是否共球（位于 P⁴ 的同一超平面中）

    Raises:
        SameCircleError: 两圆相同
    """
    if first.same_as(second):
        raise SameCircleError("同一个圆不能做共球判定")
    # 六个见证点落在同一超平面
    return rank(list(first.witnesses) + list(second.witnesses)) <= 4


def contains_point(cyclide: Cyclide, x: Sequence[Scalar]) -> bool:
    """二次型束中两个型都在 x 处为零"""
    return all(form.vanishes_at(x) for form in cyclide.pencil)


def sample_surface(cyclide: Cyclide, count: int = None,
                   seed: int = None) -> Tuple[List[Tuple[float, ...]], float]:
    """
    环面点云采样，供外部绘图

    每行为归一化的齐次坐标 x₀..x₄ 加球极投影坐标 vx, vy, vz；
    x₀ = 0 的点没有欧氏像，跳过。

    Returns:
        (点云行, 二次型束在点云上的最大残差)
    """
    count = count or int(config_manager.get('sampling.export', 400))
    seed = int(config_manager.get('sampling.seed', 20240501)) if seed is None else seed
    rng = np.random.default_rng(seed + 1)
    rows: List[Tuple[float, ...]] = []
    residual = 0.0
    for x in _image_samples(cyclide.param, rng, count):
        y = [float(c) for c in x]
        if abs(y[0]) <= 1.0e-12 * magnitude(y):
            continue
        y = [c / y[0] for c in y]
        # τ(x) = (x₁, x₂, x₃)/x₀
        residual = max(residual, max(_residual(form, [y]) for form in cyclide.pencil))
        rows.append(tuple(y) + (y[1], y[2], y[3]))
    logger_manager.debug(f"点云采样 {len(rows)} 个点，最大残差 {residual:.3e}")
    return rows, residual
