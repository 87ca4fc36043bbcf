"""
四元数与对偶四元数代数
标量可以是精确有理数（Fraction / int）或浮点数，代数运算内部不做任何归一化
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from ..utils.linalg import Scalar, is_exact, is_zero, magnitude


@dataclass(frozen=True)
class Quaternion:
    """四元数 w + x𝐢 + y𝐣 + z𝐤"""

    w: Scalar = 0
    x: Scalar = 0
    y: Scalar = 0
    z: Scalar = 0

    @classmethod
    def from_vector(cls, v: Sequence[Scalar]) -> "Quaternion":
        """将三维向量嵌入为纯四元数"""
        return cls(0, v[0], v[1], v[2])

    @classmethod
    def from_coords(cls, coords: Sequence[Scalar]) -> "Quaternion":
        w, x, y, z = coords
        return cls(w, x, y, z)

    @property
    def coords(self) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.w, self.x, self.y, self.z)

    @property
    def vector(self) -> Tuple[Scalar, Scalar, Scalar]:
        """向量部分 (x, y, z)"""
        return (self.x, self.y, self.z)

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return quat_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c: Scalar) -> "Quaternion":
        return Quaternion(c * self.w, c * self.x, c * self.y, c * self.z)

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> Scalar:
        """h·conj(h) 的实部，即 w²+x²+y²+z²"""
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def dot(self, other: "Quaternion") -> Scalar:
        """作为四维向量的内积，等于 Re(h·conj(g))"""
        return self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z

    def is_zero(self) -> bool:
        # 精确坐标严格判零，浮点坐标按相对尺度判零
        scale = magnitude(self.coords)
        return all(is_zero(c, max(scale, 1.0)) for c in self.coords) if not is_exact(self.coords) \
            else all(c == 0 for c in self.coords)

    def is_pure(self) -> bool:
        """实部为零"""
        return is_zero(self.w, max(magnitude(self.coords), 1.0))


ONE = Quaternion(1, 0, 0, 0)
I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)
K = Quaternion(0, 0, 0, 1)
ZERO = Quaternion(0, 0, 0, 0)


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """
    Hamilton 乘积，满足 𝐢²=𝐣²=𝐤²=𝐢𝐣𝐤=−1

    Args:
        a: 左因子
        b: 右因子

    Returns:
        乘积 a·b
    """
    # 非交换：a·b ≠ b·a
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


@dataclass(frozen=True)
class DualNumber:
    """对偶数 real + dual·ε"""

    real: Scalar
    dual: Scalar


@dataclass(frozen=True)
class DualQuaternion:
    """
    对偶四元数 h = p + qε

    坐标 (p₀,p₁,p₂,p₃, q₄,q₅,q₆,q₇)：q 的四个分量按位置依次对应
    Study 二次型中的 q₀..q₃，全局只使用这一种下标映射。
    """

    p: Quaternion = ONE
    q: Quaternion = ZERO

    @classmethod
    def from_coords(cls, coords: Sequence[Scalar]) -> "DualQuaternion":
        """由 8 个坐标构造"""
        coords = tuple(coords)
        if len(coords) != 8:
            raise ValueError(f"对偶四元数需要8个坐标，收到 {len(coords)} 个")
        return cls(Quaternion.from_coords(coords[:4]), Quaternion.from_coords(coords[4:]))

    @classmethod
    def translation(cls, t: Sequence[Scalar]) -> "DualQuaternion":
        """平移 t 对应的对偶四元数 1 − (t/2)ε"""
        # 精确坐标除以 2 仍保持有理数
        half = [c / 2 if not is_exact((c,)) else _half(c) for c in t]
        return cls(ONE, Quaternion(0, -half[0], -half[1], -half[2]))

    @property
    def coords(self) -> Tuple[Scalar, ...]:
        return self.p.coords + self.q.coords

    def __add__(self, other: "DualQuaternion") -> "DualQuaternion":
        return DualQuaternion(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "DualQuaternion") -> "DualQuaternion":
        return DualQuaternion(self.p - other.p, self.q - other.q)

    def __neg__(self) -> "DualQuaternion":
        return DualQuaternion(-self.p, -self.q)

    def __mul__(self, other):
        if isinstance(other, DualQuaternion):
            return dq_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c: Scalar) -> "DualQuaternion":
        return DualQuaternion(self.p.scale(c), self.q.scale(c))

    def conj(self) -> "DualQuaternion":
        return dq_conj(self)

    def norm(self) -> DualNumber:
        return dq_norm(self)

    def is_zero(self) -> bool:
        return self.p.is_zero() and self.q.is_zero()


def _half(c: Scalar) -> Scalar:
    return Fraction(c) / 2


EPSILON = DualQuaternion(ZERO, ONE)
IDENTITY = DualQuaternion(ONE, ZERO)


def dq_mul(a: DualQuaternion, b: DualQuaternion) -> DualQuaternion:
    """
    对偶四元数乘积 (p+qε)(p′+q′ε) = pp′ + (pq′+qp′)ε

    ε 与 𝐢,𝐣,𝐤 可交换且 ε² = 0。
    """
    return DualQuaternion(a.p * b.p, a.p * b.q + a.q * b.p)


def dq_conj(h: DualQuaternion) -> DualQuaternion:
    """共轭 p̄ + q̄ε，是反自同构：conj(ab) = conj(b)conj(a)"""
    return DualQuaternion(h.p.conj(), h.q.conj())


def dq_norm(h: DualQuaternion) -> DualNumber:
    """
    对偶四元数范数 N(h) = h·h̄

    Returns:
        实部 Σpᵢ²，对偶部 2(p₀q₄+p₁q₅+p₂q₆+p₃q₇)
    """
    product = dq_mul(h, dq_conj(h))
    return DualNumber(product.p.w, product.q.w)


def dq_norm_full(h: DualQuaternion) -> DualQuaternion:
    """h·h̄ 的完整对偶四元数形式（向量部分恒为零，供恒等式检验使用）"""
    return dq_mul(h, dq_conj(h))


def bilinear_product(left: Sequence[Quaternion],
                     right: Sequence[Quaternion]) -> Tuple[Tuple[Quaternion, ...], ...]:
    """
    两个双线性四元数多项式的乘积

    Args:
        left: 按 s₀t₀, s₀t₁, s₁t₀, s₁t₁ 排列的4个系数
        right: 同上

    Returns:
        3×3 四元数系数网格，下标为 (s₁ 次数, t₁ 次数)
    """
    from ..utils.forms import BILINEAR_INDEX

    grid: List[List[Quaternion]] = [[ZERO] * 3 for _ in range(3)]
    for (i, j), a in zip(BILINEAR_INDEX, left):
        for (k, l), b in zip(BILINEAR_INDEX, right):
            # 两个因子的 s₁、t₁ 次数分别相加
            grid[i + k][j + l] = grid[i + k][j + l] + a * b
    return tuple(tuple(row) for row in grid)


def component_grid(grid: Iterable[Iterable[Quaternion]], index: int):
    """从四元数网格中取出第 index 个分量（0=实部, 1..3=𝐢𝐣𝐤）"""
    return tuple(tuple(q.coords[index] for q in row) for row in grid)
