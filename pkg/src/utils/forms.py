"""
双齐次多项式工具
以系数网格表示 P¹×P¹ 上的双齐次形式：grid[m][n] 是单项式
s₀^(d−m) s₁^m · t₀^(e−n) t₁^n 的系数；二元形式以系数列表表示
"""

from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np
import sympy

from .linalg import Scalar, div, is_exact, magnitude, is_zero, to_fraction

Grid = Tuple[Tuple[Scalar, ...], ...]
P1Point = Tuple[Scalar, Scalar]

# 双线性单项式顺序 s₀t₀, s₀t₁, s₁t₀, s₁t₁ 对应下标 (i, j)
BILINEAR_INDEX = ((0, 0), (0, 1), (1, 0), (1, 1))


def zero_grid(rows: int = 3, cols: int = 3) -> Grid:
    return tuple(tuple(0 for _ in range(cols)) for _ in range(rows))


def grid_sub(g: Grid, h: Grid) -> Grid:
    return tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(g, h))


def grid_scale(g: Grid, c: Scalar) -> Grid:
    return tuple(tuple(c * a for a in row) for row in g)


def grid_mul(g: Grid, h: Grid) -> Grid:
    """两个双齐次形式的乘积，次数相加"""
    rows = len(g) + len(h) - 1
    cols = len(g[0]) + len(h[0]) - 1
    out = [[0] * cols for _ in range(rows)]
    for m, row_g in enumerate(g):
        for n, a in enumerate(row_g):
            # 稀疏网格跳过零系数
            if a == 0:
                continue
            for k, row_h in enumerate(h):
                for l, b in enumerate(row_h):
                    out[m + k][n + l] += a * b
    return tuple(tuple(row) for row in out)


def grid_flat(g: Grid) -> List[Scalar]:
    return [a for row in g for a in row]


def grid_is_zero(g: Grid, scale: float = 1.0) -> bool:
    """网格全部系数为零（浮点模式按参考尺度判零）"""
    return all(is_zero(a, scale) for a in grid_flat(g))


def _monomials(point: P1Point, degree: int) -> List[Scalar]:
    x0, x1 = point
    return [x0 ** (degree - k) * x1 ** k for k in range(degree + 1)]


def eval_grid(g: Grid, s: P1Point, t: P1Point) -> Scalar:
    """在 (s, t) 处求值"""
    sm = _monomials(s, len(g) - 1)
    tm = _monomials(t, len(g[0]) - 1)
    return sum((g[m][n] * sm[m] * tm[n]
                for m in range(len(g)) for n in range(len(g[0]))), 0)


def freeze_s(g: Grid, s: P1Point) -> Tuple[Scalar, ...]:
    """固定 s，得到关于 t 的二元形式"""
    sm = _monomials(s, len(g) - 1)
    return tuple(sum((g[m][n] * sm[m] for m in range(len(g))), 0)
                 for n in range(len(g[0])))


def freeze_t(g: Grid, t: P1Point) -> Tuple[Scalar, ...]:
    """固定 t，得到关于 s 的二元形式"""
    tm = _monomials(t, len(g[0]) - 1)
    return tuple(sum((g[m][n] * tm[n] for n in range(len(g[0]))), 0)
                 for m in range(len(g)))


def binary_eval(coeffs: Sequence[Scalar], r: P1Point) -> Scalar:
    mono = _monomials(r, len(coeffs) - 1)
    return sum((c * x for c, x in zip(coeffs, mono)), 0)


def binary_mul(a: Sequence[Scalar], b: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def column(g: Grid, n: int) -> Tuple[Scalar, ...]:
    """取第 n 个 t 单项式的系数，作为关于 s 的二元形式"""
    return tuple(g[m][n] for m in range(len(g)))


def discriminant_in_t(g: Grid) -> Tuple[Scalar, ...]:
    """
    将双二次形式视为 t 的二次形式 A t₀² + B t₀t₁ + C t₁²，
    返回判别式 B² − 4AC（关于 s 的四次二元形式）
    """
    a, b, c = column(g, 0), column(g, 1), column(g, 2)
    bb = binary_mul(b, b)
    ac = binary_mul(a, c)
    return tuple(x - 4 * y for x, y in zip(bb, ac))


def double_root_in_t(g: Grid, s: P1Point) -> P1Point:
    """
    在判别式为零的 s 处，返回关于 t 的二次形式的重根
    """
    a, b, c = freeze_s(g, s)
    if not is_zero(c, magnitude((a, b, c))):
        return (1, div(-b, 2 * c))
    return (0, 1)


def binary_roots(coeffs: Sequence[Scalar]) -> List[P1Point]:
    """
    二元形式的实根（射影点）

    精确模式只返回有理根（由 sympy 在 QQ 上因式分解得到），
    浮点模式返回 numpy.roots 的实根。结果按坐标排序，(0:1) 排在最后。

    Raises:
        ValueError: 形式恒为零
    """
    coeffs = list(coeffs)
    scale = magnitude(coeffs)
    if all(is_zero(c, scale) for c in coeffs):
        raise ValueError("二元形式恒为零，没有有限根集合")

    # 首项系数为零表示 (0:1) 是根
    at_infinity = False
    while is_zero(coeffs[-1], scale):
        coeffs.pop()
        at_infinity = True

    roots: List[P1Point] = []
    if len(coeffs) > 1:
        if is_exact(coeffs):
            rho = sympy.Symbol('rho')
            poly = sympy.Poly(
                [sympy.Rational(to_fraction(c).numerator, to_fraction(c).denominator)
                 for c in reversed(coeffs)], rho, domain='QQ')
            found = sorted(Fraction(int(sympy.Rational(r).p), int(sympy.Rational(r).q))
                           for r in poly.ground_roots().keys())
            roots = [(Fraction(1), r) for r in found]
        else:
            values = np.roots([float(c) for c in reversed(coeffs)])
            # 虚部相对很小的根视为实根
            real = sorted(float(v.real) for v in values
                          if abs(v.imag) <= 1.0e-7 * max(1.0, abs(v)))
            roots = [(1.0, r) for r in real]

    if at_infinity:
        roots.append((Fraction(0), Fraction(1)) if is_exact(coeffs) else (0.0, 1.0))
    return roots


def veronese(x: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    """
    二次 Veronese 嵌入：按 i ≤ j 的字典序列出全部单项式 xᵢxⱼ

    五维输入得到 15 个分量，与 QuadricForm 的系数顺序一致。
    """
    n = len(x)
    return tuple(x[i] * x[j] for i in range(n) for j in range(i, n))


def veronese_index(i: int, j: int, n: int = 5) -> int:
    """单项式 xᵢxⱼ（i ≤ j）在 Veronese 向量中的位置"""
    if i > j:
        i, j = j, i
    return i * n - i * (i - 1) // 2 + (j - i)
