"""
直纹二次曲面重建
圆到 Study 直线的提升、三直线构造（由环面及两族圆恢复唯一的直纹二次曲面）、
直纹提取、𝒰_𝔬 排除判定、往返验证与随机双线性运动生成
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import DualQuaternion, IDENTITY, Quaternion, ZERO
from .cyclide import (Cyclide, CircleFamily, FamilyKind, FAMILY_PROBES, contains_point,
                      cospherical, family_intersection, family_member, implicitize)
from .errors import (BasepointError, CenterChartError, DegenerateCircleError,
                     DegenerateConfigurationError, DegenerateMotionError, GeometryError,
                     NotDoublyRuledError, NotThroughIdentityError, OrbitMismatchError,
                     SameCircleError)
from .moebius import (Circle, ORIGIN, circle_axis, circle_intersection)
from .orbit import (BilinearMotion, BiquadraticMap, eval_biquadratic, orb, orbit_of_line,
                    orbit_of_quadric)
from .study import (BaseLocusSpec, StudyLine, on_boundary, polar_row, rotation_line,
                    study_polar, translation_line)
from ..services.config import config_manager
from ..services.logger import logger_manager
from ..utils.forms import (P1Point, binary_eval, binary_roots, discriminant_in_t,
                           double_root_in_t, freeze_s, freeze_t)
from ..utils.linalg import (Scalar, Vector, cross, div, inertia, is_exact, is_perfect_square,
                            is_zero, magnitude, nullspace, projectively_equal, row_basis,
                            rows_exact, solve_linear, subspace_distance)

ORIGIN_SPEC = BaseLocusSpec.origin()

# 第三条直线上探测点 𝔢 + g′/k 的个数上限
MAX_PROBES = 12
# 直纹与圆族逐一比对的探测参数
RULING_PROBES: Tuple[P1Point, ...] = FAMILY_PROBES[:5]


def lift_circle(circle: Union[Circle, Tuple], through: Sequence[Scalar]) -> StudyLine:
    """
    把经过 through 的圆提升为过 𝔢 的旋转或平移直线

    圆的轴由外心和法向给出，提升为绕该轴的旋转子群；经过投影中心的圆
    （欧氏像为直线）提升为沿该方向的平移子群。

    Args:
        circle: S³ 上的圆
        through: 圆上的点，要求 x₀ ≠ 0

    Raises:
        DegenerateCircleError: 输入是点轨道
        CenterChartError: through 的 x₀ = 0
    """
    if not isinstance(circle, Circle):
        raise DegenerateCircleError("点轨道无法提升为直线")
    if is_zero(through[0], magnitude(through)):
        raise CenterChartError("经过点的 x₀ = 0")
    if not circle.contains(through):
        raise GeometryError("经过点不在圆上")
    axis = circle_axis(circle)
    if axis.is_line:
        return translation_line(axis.direction)
    return rotation_line(axis.point, axis.direction)


def _gform(G: Sequence[Sequence[Scalar]], x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
    return sum((x[i] * G[i][j] * y[j] for i in range(len(x)) for j in range(len(y))), 0)


def _gram(basis: Sequence[Vector]) -> Tuple[Tuple[Scalar, ...], ...]:
    points = [DualQuaternion.from_coords(b) for b in basis]
    return tuple(tuple(study_polar(x, y) for y in points) for x in points)


@dataclass(frozen=True)
class StudyThreeSpace:
    """P⁷ 中由四个独立点张成的三维射影空间 V 及其上的 Study 型"""

    basis: Tuple[Vector, Vector, Vector, Vector]
    form: Tuple[Tuple[Scalar, ...], ...]

    @classmethod
    def spanned_by(cls, points: Sequence[DualQuaternion]) -> "StudyThreeSpace":
        """
        Raises:
            DegenerateConfigurationError: 张成维数不为3
        """
        basis = row_basis([h.coords for h in points])
        if len(basis) != 4:
            raise DegenerateConfigurationError(f"张成空间的秩为 {len(basis)}，应为4")
        return cls(tuple(basis), _gram(basis))

    def point(self, coeffs: Sequence[Scalar]) -> DualQuaternion:
        coords = [sum((c * b[k] for c, b in zip(coeffs, self.basis)), 0) for k in range(8)]
        return DualQuaternion.from_coords(coords)

    def inside_study(self) -> bool:
        """Study 型在 V 上恒为零"""
        if rows_exact(self.form):
            return all(x == 0 for r in self.form for x in r)
        scale = max(max(magnitude(b) for b in self.basis) ** 2, 1.0)
        return all(is_zero(x, scale) for r in self.form for x in r)


@dataclass(frozen=True)
class RuledQuadric:
    """Q = V ∩ S；anchor 为 Q 上已知点在 V 基下的坐标"""

    ambient: StudyThreeSpace
    anchor: Optional[Vector] = None
    trace: Tuple[str, ...] = field(default=(), compare=False)

    @property
    def form(self):
        return self.ambient.form


class UoVerdict(Enum):
    IN_U = "in_u"
    NOT_IN_U = "not_in_u"


class UoReason(Enum):
    V_INSIDE_S = "v_inside_s"
    Q_INSIDE_F0 = "q_inside_f0"
    CLEAR = "clear"


@dataclass(frozen=True)
class UoMembership:
    verdict: UoVerdict
    reason: UoReason


@dataclass(frozen=True)
class Rulings:
    """
    直纹二次曲面的两族直线，以双线性运动表示

    s 为常数的直线构成第一族，t 为常数的直线构成第二族。
    """

    motion: BilinearMotion

    def s_line(self, s: P1Point) -> StudyLine:
        return StudyLine(self.motion.evaluate(s, (1, 0)), self.motion.evaluate(s, (0, 1)))

    def t_line(self, t: P1Point) -> StudyLine:
        return StudyLine(self.motion.evaluate((1, 0), t), self.motion.evaluate((0, 1), t))


def _isotropic_candidates(G) -> List[Vector]:
    """Q 上的实点：精确模式在 {−2..2}⁴ 中搜索整数解，否则由特征向量构造"""
    if rows_exact(G):
        found = [v for v in itertools.product(range(-2, 3), repeat=4)
                 if any(v) and _gform(G, v, v) == 0]
        if found:
            return [tuple(v) for v in found]
    matrix = np.array([[float(x) for x in row] for row in G])
    values, vectors = np.linalg.eigh(matrix)
    pos, neg = int(np.argmax(values)), int(np.argmin(values))
    if values[pos] <= 0 or values[neg] >= 0:
        return []
    # 正负特征方向按权重相加得到迷向向量
    v = vectors[:, pos] / np.sqrt(values[pos]) + vectors[:, neg] / np.sqrt(-values[neg])
    return [tuple(float(x) for x in v)]


def _to_float_rows(rows):
    return tuple(tuple(float(x) for x in r) for r in rows)


def rulings(quadric: RuledQuadric) -> Rulings:
    """
    直纹提取

    在锚点 a 的切空间中求两条迷向方向 d₁, d₂，再解出第四个角点 y，
    使 s₀t₀·a + s₀t₁·d₁ + s₁t₀·d₂ + s₁t₁·y 恒满足 Study 条件。
    判别式不是完全平方时退回浮点计算。

    Raises:
        NotDoublyRuledError: 秩或符号差不是 (2, 2)
    """
    G = quadric.form
    if inertia(G) != (2, 2, 0):
        raise NotDoublyRuledError(f"Study 型的惯性指数为 {inertia(G)}，不是双直纹的")

    a = quadric.anchor
    if a is None:
        candidates = _isotropic_candidates(G)
        if not candidates:
            raise NotDoublyRuledError("二次曲面没有实点")
        a = candidates[0]

    # a 的切空间 {x : G(a, x) = 0}
    Ga = tuple(_gform(G, a, e) for e in np.eye(4, dtype=int).tolist())
    tangent = nullspace([Ga])
    w1, w2 = row_basis([tuple(a)] + list(tangent))[1:3]
    coeffs = (_gform(G, w1, w1), 2 * _gform(G, w1, w2), _gform(G, w2, w2))

    exact = is_exact(coeffs) and is_perfect_square(coeffs[1] ** 2 - 4 * coeffs[0] * coeffs[2])
    if not exact:
        G = _to_float_rows(G)
        a, w1, w2 = (tuple(float(x) for x in v) for v in (a, w1, w2))
        coeffs = tuple(float(c) for c in coeffs)
        logger_manager.debug("迷向方向不是有理的，改用浮点计算直纹")
    roots = binary_roots(coeffs)
    if len(roots) != 2:
        raise NotDoublyRuledError("切平面截线不是两条实直线")
    (l1, m1), (l2, m2) = roots
    d1 = tuple(l1 * x + m1 * y for x, y in zip(w1, w2))
    d2 = tuple(l2 * x + m2 * y for x, y in zip(w1, w2))

    rows = [tuple(_gform(G, v, e) for e in np.eye(4, dtype=int).tolist()) for v in (d1, d2, a)]
    # y 与 d₁、d₂ 正交，G(a, y) = −G(d₁, d₂)
    y0 = solve_linear(rows, (0, 0, -_gform(G, d1, d2)))
    alpha = div(-_gform(G, y0, y0), 2 * _gform(G, a, y0))
    y = tuple(x + alpha * z for x, z in zip(y0, a))

    corners = [quadric.ambient.point(v) for v in (a, d1, d2, y)]
    if not exact:
        corners = [DualQuaternion.from_coords([float(c) for c in h.coords]) for h in corners]
    motion = BilinearMotion(tuple(h.p for h in corners), tuple(h.q for h in corners))
    return Rulings(motion)


def check_not_in_Uo(quadric: RuledQuadric) -> UoMembership:
    """
    𝒰_𝔬 排除判定

    V ⊄ S 且 Q 上存在 p ≠ 0 的实点时不在 𝒰_𝔬 中（实 F_𝔬 没有 p ≠ 0 的点）。
    """
    if quadric.ambient.inside_study():
        return UoMembership(UoVerdict.IN_U, UoReason.V_INSIDE_S)
    points = [quadric.anchor] if quadric.anchor is not None else []
    points += _isotropic_candidates(quadric.form)
    for v in points:
        if not quadric.ambient.point(v).p.is_zero():
            return UoMembership(UoVerdict.NOT_IN_U, UoReason.CLEAR)
    return UoMembership(UoVerdict.IN_U, UoReason.Q_INSIDE_F0)


def locate_origin(X: BiquadraticMap) -> Tuple[P1Point, P1Point]:
    """
    求参数 (s*, t*) 使 X(s*, t*) ∝ 𝔬

    X₄ = 4|b|² 非负，其零点处关于 t 的判别式为零；取判别式的根作 s*，
    t* 为对应的二重根。多个解时取字典序最小者。浮点模式用判别式导数的根。

    Raises:
        OrbitMismatchError: 像不经过 𝔬
    """
    X4 = X.X[4]
    disc = discriminant_in_t(X4)
    try:
        if X.is_exact:
            candidates = binary_roots(disc)
        else:
            derivative = tuple(k * c for k, c in enumerate(disc))[1:]
            candidates = binary_roots(derivative)
            # 首项为零时 (0:1) 也是候选
            if is_zero(disc[-1], magnitude(disc)):
                candidates.append((0.0, 1.0))
    except ValueError:
        raise OrbitMismatchError("X₄ 恒为零，无法定位 𝔬")

    for s in candidates:
        # X₄ 在整条成员上为零
        if all(is_zero(c, magnitude(disc)) for c in freeze_s(X4, s)):
            continue
        t = double_root_in_t(X4, s)
        try:
            x = eval_biquadratic(X, s, t)
        except BasepointError:
            continue
        if projectively_equal(x, ORIGIN):
            logger_manager.debug(f"𝔬 的参数: s={s}, t={t}")
            return s, t
    raise OrbitMismatchError("环面不经过 𝔬")


def _parameter_of_point(X: BiquadraticMap, fixed_kind: FamilyKind, fixed: P1Point,
                        point: Sequence[Scalar]) -> P1Point:
    """已知点位于冻结 fixed 的成员上，求另一个参数"""
    forms = [freeze_s(g, fixed) if fixed_kind == FamilyKind.S else freeze_t(g, fixed)
             for g in X.X]
    k = int(np.argmax([abs(float(c)) for c in point]))
    # 以最大分量为分母消去比例因子
    equations = [tuple(point[k] * a - point[i] * b for a, b in zip(forms[i], forms[k]))
                 for i in range(5) if i != k]
    scale = max(magnitude(point), 1.0) * max(magnitude(f) for f in forms)
    nonzero = [e for e in equations if not all(is_zero(c, scale) for c in e)]
    if not nonzero:
        raise DegenerateConfigurationError("圆族成员退化为点")

    best, best_residual = None, float("inf")
    for root in binary_roots(nonzero[0]):
        if all(is_zero(binary_eval(f, root), scale) for f in forms):
            continue
        residual = max(abs(float(binary_eval(e, root))) for e in nonzero) \
            / max(scale * magnitude(root) ** 2, 1.0e-300)
        if residual < best_residual:
            best, best_residual = root, residual
    exact = is_exact(point) and X.is_exact
    if best is None or (exact and best_residual != 0.0) \
            or best_residual > config_manager.tolerance('point'):
        raise DegenerateConfigurationError("点不在给定的圆族成员上")
    return best


def _fixed_value(family: CircleFamily, origin: Tuple[P1Point, P1Point]) -> P1Point:
    return origin[0] if family.which == FamilyKind.S else origin[1]


def reconstruct_quadric(cyclide: Cyclide, first: CircleFamily, second: CircleFamily,
                        probe: int = 0) -> RuledQuadric:
    """
    三直线构造

    1. 在 F、F′ 中取经过 𝔬 的成员 C、C′
    2. 提升为过 𝔢 的直线 ℓ、ℓ′
    3. 在 ℓ′ 上取 h = 𝔢 + g′/k（k 从 2 + probe 起递增，直到构造不退化）
    4. p = orb_𝔬(h)，C″ 为 F 中经过 p 的成员，L 为 C″ 以 p 为基点的提升
    5. ℓ″ = L·h，V = span(ℓ ∪ ℓ′ ∪ ℓ″)，Q = V ∩ S

    Args:
        cyclide: 经过 𝔬 的环面
        first: 圆族 F
        second: 圆族 F′（F·F′ = 1）
        probe: h 的探测起点

    Returns:
        重建的直纹二次曲面（锚点为 𝔢）

    Raises:
        DegenerateConfigurationError: 张成维数不为3或找不到可用的 h
        NotDoublyRuledError: 秩或符号差不符
        OrbitMismatchError: 重建曲面的轨道不在环面上
    """
    X = cyclide.param
    trace: List[str] = []
    logger_manager.log_stage_start("reconstruct")

    origin = locate_origin(X)
    trace.append(f"locate_origin: s={origin[0]}, t={origin[1]}")
    c_first = family_member(first, _fixed_value(first, origin))
    c_second = family_member(second, _fixed_value(second, origin))
    ell = lift_circle(c_first, ORIGIN)
    ell_second = lift_circle(c_second, ORIGIN)
    trace.append(f"lift: {ell.kind.value}, {ell_second.kind.value}")

    g = ell_second.generator()
    exact = X.is_exact and is_exact(g.coords)
    third = None
    for k in range(2 + probe, 2 + probe + MAX_PROBES):
        h = IDENTITY + g.scale(Fraction(1, k) if exact else 1.0 / k)
        if on_boundary(h):
            continue
        try:
            p = orb(ORIGIN_SPEC, h)
            param = _parameter_of_point(X, second.which, _fixed_value(second, origin), p)
            c_third = family_member(first, param)
            L = lift_circle(c_third, p)
        except GeometryError as e:
            logger_manager.debug(f"探测点 1/{k} 退化: {e}")
            continue
        # L 经过 𝔢，右乘 h 后经过 h
        third = L.right_mul(h)
        trace.append(f"probe: h = e + g'/{k}")
        break
    if third is None:
        raise DegenerateConfigurationError("找不到使构造不退化的 h")

    space = StudyThreeSpace.spanned_by([IDENTITY, ell.generator(), g, third.g1, third.g2])
    quadric = RuledQuadric(space, anchor=(1, 0, 0, 0), trace=tuple(trace))

    signature = inertia(space.form)
    if signature != (2, 2, 0):
        raise NotDoublyRuledError(f"Study 型的惯性指数为 {signature}")
    membership = check_not_in_Uo(quadric)
    if membership.verdict == UoVerdict.IN_U:
        raise DegenerateConfigurationError(f"重建曲面属于 𝒰_𝔬: {membership.reason.value}")

    # 重建曲面的轨道必须落在原环面上
    image = orbit_of_quadric(rulings(quadric).motion)
    for s, t in itertools.product(RULING_PROBES, RULING_PROBES[:2]):
        try:
            x = eval_biquadratic(image, s, t)
        except BasepointError:
            continue
        if not contains_point(cyclide, x):
            raise OrbitMismatchError(f"重建曲面的轨道点 {x} 不在环面上")
    trace.append("orbit_check: pass")
    logger_manager.log_stage_done("reconstruct", f"signature={signature}")
    return RuledQuadric(space, anchor=(1, 0, 0, 0), trace=tuple(trace))


def _member_through(cyclide: Cyclide, family: CircleFamily, circle: Circle,
                    origin: Tuple[P1Point, P1Point]) -> bool:
    """circle 是否为 family 的成员：与另一族过 𝔬 的成员求交，再取交点处的成员比较"""
    other = family.other()
    anchor = family_member(other, _fixed_value(other, origin))
    if not isinstance(anchor, Circle):
        return False
    try:
        points = circle_intersection(circle, anchor)
    except SameCircleError:
        return False
    if len(points) != 1:
        return False
    try:
        param = _parameter_of_point(cyclide.param, other.which, _fixed_value(other, origin),
                                    points[0])
    except GeometryError:
        return False
    member = family_member(family, param)
    return isinstance(member, Circle) and member.same_as(circle)


def rulings_match_families(quadric: RuledQuadric, cyclide: Cyclide) -> bool:
    """
    两族直线的轨道逐一对应环面的两族参数圆（两种对应方式任一成立即可）
    """
    ruled = rulings(quadric)
    origin = locate_origin(cyclide.param)
    s_family = CircleFamily(FamilyKind.S, cyclide)
    t_family = CircleFamily(FamilyKind.T, cyclide)

    def images(kind):
        lines = [ruled.s_line(r) if kind == "s" else ruled.t_line(r) for r in RULING_PROBES]
        return [orbit_of_line(ORIGIN_SPEC, line) for line in lines]

    s_images, t_images = images("s"), images("t")
    if not all(isinstance(c, Circle) for c in s_images + t_images):
        return False
    for fam_a, fam_b in ((s_family, t_family), (t_family, s_family)):
        if all(_member_through(cyclide, fam_a, c, origin) for c in s_images) and \
                all(_member_through(cyclide, fam_b, c, origin) for c in t_images):
            return True
    return False


@dataclass
class RoundtripReport:
    """往返验证报告"""

    subspace_distance: float
    rulings_matched: bool
    families_noncospherical: bool
    steps: List[str] = field(default_factory=list)
    quadric: Optional[RuledQuadric] = None
    cyclide: Optional[Cyclide] = None

    @property
    def passed(self) -> bool:
        tol = config_manager.tolerance('subspace')
        return self.subspace_distance <= tol and self.rulings_matched \
            and self.families_noncospherical

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subspace_distance": self.subspace_distance,
            "rulings_matched": self.rulings_matched,
            "families_noncospherical": self.families_noncospherical,
            "steps": list(self.steps),
            "roundtrip": "pass" if self.passed else "fail",
        }


def roundtrip_theorem(motion: BilinearMotion, probe: int = 0, sample_count: int = None,
                      seed: int = None, cyclide: Optional[Cyclide] = None) -> RoundtripReport:
    """
    往返验证：运动 → 轨道 → 隐式化 → 圆族 → 重建 → 比较三维空间

    给出 cyclide 时跳过轨道与隐式化两步，直接使用已隐式化的环面。

    Raises:
        NotThroughIdentityError: H 在参数原点处不等于 𝔢
        GeometryError: 各阶段的失败原样抛出
    """
    if not projectively_equal(motion.corner(0).coords, IDENTITY.coords):
        raise NotThroughIdentityError("双线性运动在参数原点处不等于 𝔢")
    motion.validate()
    steps: List[str] = []

    if cyclide is None:
        X = orbit_of_quadric(motion)
        steps.append("orbit")
        cyclide = implicitize(X, sample_count, seed)
        steps.append("implicitize")
    s_family = CircleFamily(FamilyKind.S, cyclide)
    t_family = CircleFamily(FamilyKind.T, cyclide)
    count = family_intersection(s_family, t_family)
    if count != 1:
        raise DegenerateConfigurationError(f"F·F′ = {count}，不是1")
    steps.append("families")

    quadric = reconstruct_quadric(cyclide, s_family, t_family, probe)
    steps.extend(quadric.trace)
    distance = subspace_distance([h.coords for h in motion.corners()], quadric.ambient.basis)
    steps.append(f"subspace_distance: {distance:.3e}")

    matched = rulings_match_families(quadric, cyclide)
    steps.append(f"rulings_matched: {matched}")

    noncospherical = True
    for k in range(5):
        c1 = family_member(s_family, FAMILY_PROBES[k])
        c2 = family_member(t_family, FAMILY_PROBES[k + 1])
        if isinstance(c1, Circle) and isinstance(c2, Circle) and cospherical(c1, c2):
            noncospherical = False
    steps.append(f"families_noncospherical: {noncospherical}")

    report = RoundtripReport(distance, matched, noncospherical, steps, quadric, cyclide)
    logger_manager.log_certificate("roundtrip", report.to_dict())
    return report


def _random_generator(rng: np.random.Generator) -> DualQuaternion:
    """过 𝔢 直线的随机生成元：旋转轴不经过原点，或平移"""
    if rng.random() < 0.75:
        while True:
            c = [int(x) for x in rng.integers(-3, 4, size=3)]
            d = [int(x) for x in rng.integers(-3, 4, size=3)]
            if any(d) and any(cross(d, c)):
                return rotation_line(c, d).generator()
    while True:
        t = [int(x) for x in rng.integers(-3, 4, size=3)]
        if any(t):
            return DualQuaternion(ZERO, Quaternion.from_vector(t))


def _rotations_only(rng: np.random.Generator) -> BilinearMotion:
    a = [Quaternion(1, 0, 0, 0)]
    while len(a) < 4:
        a.append(Quaternion(*(int(x) for x in rng.integers(-3, 4, size=4))))
    return BilinearMotion(tuple(a), (ZERO, ZERO, ZERO, ZERO))


def random_motion(seed: int, constraint: Optional[str] = None, scalar: str = "exact",
                  max_attempts: int = 20) -> BilinearMotion:
    """
    随机生成 H(原点) = 𝔢 的双线性运动

    两条过 𝔢 的直线 span(𝔢, g)、span(𝔢, g′) 给出三个角点，第四个角点取
    y = g·g′ + λz，z 与 𝔢, g, g′ 关于 Study 极化正交，λ 使 y 落在 S 上。

    Args:
        seed: 随机种子
        constraint: None 或 "rotations-only"（b ≡ 0）
        scalar: exact / float
        max_attempts: 最大重试次数

    Raises:
        DegenerateMotionError: 重试后仍无法满足约束
    """
    rng = np.random.default_rng(seed)
    if constraint == "rotations-only":
        motion = _rotations_only(rng)
        return motion.to_float() if scalar == "float" else motion
    if constraint not in (None, "generic"):
        raise ValueError(f"未知的约束: {constraint}")

    for attempt in range(max_attempts):
        g, g_prime = _random_generator(rng), _random_generator(rng)
        y0 = g * g_prime
        kernel = nullspace([polar_row(IDENTITY), polar_row(g), polar_row(g_prime)])
        weights = [int(x) for x in rng.integers(-2, 3, size=len(kernel))]
        z = DualQuaternion.from_coords(
            [sum((w * v[k] for w, v in zip(weights, kernel)), Fraction(0)) for k in range(8)])
        zz = study_polar(z, z)
        if zz == 0:
            continue
        # y0 在 S 上，⟨y0 + λz⟩ = λB(y0, z) + λ²⟨z⟩
        lam = div(-2 * study_polar(y0, z), zz)
        y = y0 + z.scale(lam)
        motion = BilinearMotion((IDENTITY.p, g_prime.p, g.p, y.p),
                                (IDENTITY.q, g_prime.q, g.q, y.q))
        try:
            motion.validate()
            form = _gram([h.coords for h in motion.corners()])
            if inertia(form) != (2, 2, 0):
                raise DegenerateMotionError(f"惯性指数 {inertia(form)}")
            for line in (StudyLine(IDENTITY, g), StudyLine(IDENTITY, g_prime)):
                if not isinstance(orbit_of_line(ORIGIN_SPEC, line), Circle):
                    raise DegenerateMotionError("坐标原点处的直线轨道退化为点")
        except GeometryError as e:
            logger_manager.debug(f"第 {attempt + 1} 次生成失败: {e}")
            continue
        logger_manager.info(f"随机运动生成成功 (seed={seed}, 尝试 {attempt + 1} 次)")
        return motion.to_float() if scalar == "float" else motion
    raise DegenerateMotionError(f"{max_attempts} 次尝试后仍无法生成有效运动")
