"""
线性代数判定工具
集中管理秩、零空间、惯性指数与子空间距离的判定策略：
精确有理数走 sympy，浮点走 numpy/scipy 的奇异值间隙
"""

from fractions import Fraction
from math import isqrt
from typing import List, Sequence, Tuple, Union

import numpy as np
import sympy
from scipy.linalg import subspace_angles

from ..services.config import config_manager

Scalar = Union[int, Fraction, float]
Vector = Tuple[Scalar, ...]


def is_exact_scalar(value: Scalar) -> bool:
    """判断单个标量是否为精确有理数"""
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def is_exact(values: Sequence[Scalar]) -> bool:
    """判断一组标量是否全部为精确有理数"""
    return all(is_exact_scalar(v) for v in values)


def rows_exact(rows: Sequence[Sequence[Scalar]]) -> bool:
    """判断矩阵是否全部为精确有理数"""
    return all(is_exact(row) for row in rows)


def to_fraction(value: Scalar) -> Fraction:
    """将整数或有理数转换为 Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"浮点数不能无损转换为有理数: {value!r}")


def to_float(value: Scalar) -> float:
    return float(value)


def is_zero(value: Scalar, scale: float = 1.0) -> bool:
    """
    标量判零

    Args:
        value: 待判定标量
        scale: 浮点模式下的参考尺度

    Returns:
        精确模式下严格等于零；浮点模式下 |value| <= tol * scale
    """
    if is_exact_scalar(value):
        return value == 0
    tol = config_manager.tolerance('zero')
    return abs(value) <= tol * max(float(scale), 1.0e-300)


def magnitude(values: Sequence[Scalar]) -> float:
    """向量的最大绝对值分量（浮点）"""
    return max((abs(float(v)) for v in values), default=0.0)


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return sum((a * b for a, b in zip(u, v)), 0)


def cross(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _to_sympy(rows: Sequence[Sequence[Scalar]]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(to_fraction(v).numerator, to_fraction(v).denominator)
                          for v in row] for row in rows])


def _from_sympy(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _to_numpy(rows: Sequence[Sequence[Scalar]]) -> np.ndarray:
    return np.array([[float(v) for v in row] for row in rows], dtype=float)


def _singular_rank(matrix: np.ndarray) -> int:
    if matrix.size == 0:
        return 0
    # 行归一化改善条件数，不改变行空间
    norms = np.linalg.norm(matrix, axis=1)
    keep = norms > 0
    if not np.any(keep):
        return 0
    scaled = matrix[keep] / norms[keep, None]
    s = np.linalg.svd(scaled, compute_uv=False)
    tol = config_manager.tolerance('rank')
    return int(np.sum(s > tol * s[0]))


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """
    矩阵的秩

    Args:
        rows: 行向量列表

    Returns:
        精确秩（有理数）或按奇异值相对间隙判定的数值秩（浮点）
    """
    rows = [tuple(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    if rows_exact(rows):
        return int(_to_sympy(rows).rank())
    return _singular_rank(_to_numpy(rows))


def nullspace(rows: Sequence[Sequence[Scalar]]) -> List[Vector]:
    """
    矩阵零空间的一组基

    Args:
        rows: 行向量列表（列数即未知数个数）

    Returns:
        零空间基向量列表；精确模式返回 Fraction 元组，浮点模式返回单位向量
    """
    rows = [tuple(r) for r in rows]
    if rows_exact(rows):
        basis = _to_sympy(rows).nullspace()
        return [tuple(_from_sympy(x) for x in vec) for vec in basis]

    matrix = _to_numpy(rows)
    ncols = matrix.shape[1]
    norms = np.linalg.norm(matrix, axis=1)
    keep = norms > 0
    if not np.any(keep):
        return [tuple(float(x) for x in row) for row in np.eye(ncols)]
    scaled = matrix[keep] / norms[keep, None]
    _, s, vh = np.linalg.svd(scaled)
    tol = config_manager.tolerance('rank')
    r = int(np.sum(s > tol * s[0]))
    return [tuple(float(x) for x in vh[i]) for i in range(r, ncols)]


def normalize(vector: Sequence[Scalar]) -> Vector:
    """
    射影归一化

    精确模式下除以第一个非零坐标；浮点模式下除以绝对值最大的坐标。

    Raises:
        ValueError: 零向量
    """
    vector = tuple(vector)
    if is_exact(vector):
        for v in vector:
            if v != 0:
                return tuple(Fraction(x) / v for x in vector)
        raise ValueError("零向量无法归一化")
    idx = int(np.argmax([abs(float(v)) for v in vector]))
    pivot = float(vector[idx])
    if pivot == 0.0:
        raise ValueError("零向量无法归一化")
    return tuple(float(x) / pivot for x in vector)


def is_zero_vector(vector: Sequence[Scalar]) -> bool:
    if is_exact(vector):
        return all(v == 0 for v in vector)
    return magnitude(vector) == 0.0


def projectively_equal(u: Sequence[Scalar], v: Sequence[Scalar],
                       tol: float = None) -> bool:
    """
    射影相等判定

    精确模式检查全部 2×2 子式为零；浮点模式按最大分量归一化后比较。
    """
    u, v = tuple(u), tuple(v)
    if is_exact(u) and is_exact(v):
        if is_zero_vector(u) or is_zero_vector(v):
            return False
        n = len(u)
        return all(u[i] * v[j] == u[j] * v[i] for i in range(n) for j in range(i + 1, n))
    if magnitude(u) == 0.0 or magnitude(v) == 0.0:
        return False
    tol = config_manager.tolerance('point') if tol is None else tol
    uu = np.array([float(x) for x in u])
    vv = np.array([float(x) for x in v])
    idx = int(np.argmax(np.abs(uu)))
    if abs(vv[idx]) <= tol * np.max(np.abs(vv)):
        return False
    return bool(np.max(np.abs(uu / uu[idx] - vv / vv[idx])) <= tol)


def inertia(matrix: Sequence[Sequence[Scalar]]) -> Tuple[int, int, int]:
    """
    对称矩阵的惯性指数 (正, 负, 零)

    精确模式对特征多项式使用 Descartes 符号法则（实根多项式下为精确计数）；
    浮点模式使用 eigvalsh 并按相对容差判零。
    """
    rows = [tuple(r) for r in matrix]
    n = len(rows)
    if rows_exact(rows):
        x = sympy.Symbol('x')
        coeffs = [_from_sympy(c) for c in _to_sympy(rows).charpoly(x).all_coeffs()]
        # 常数项起连续为零的系数个数即零特征值的重数
        zeros = 0
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
            zeros += 1
        degree = len(coeffs) - 1
        # p(−x) 的变号数给出负根个数
        negated = [c * (-1) ** (degree - k) for k, c in enumerate(coeffs)]
        return _sign_changes(coeffs), _sign_changes(negated), zeros

    eig = np.linalg.eigvalsh(_to_numpy(rows))
    scale = max(np.max(np.abs(eig)), 1.0e-300)
    tol = config_manager.tolerance('rank')
    pos = int(np.sum(eig > tol * scale))
    neg = int(np.sum(eig < -tol * scale))
    return pos, neg, n - pos - neg


def _sign_changes(coeffs: Sequence[Fraction]) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def subspace_distance(first: Sequence[Sequence[Scalar]],
                      second: Sequence[Sequence[Scalar]]) -> float:
    """
    两个子空间之间的最大主角（弧度）

    精确模式下若两者张成同一子空间则严格返回 0.0。
    """
    first = [tuple(r) for r in first]
    second = [tuple(r) for r in second]
    if rows_exact(first) and rows_exact(second):
        r1, r2 = rank(first), rank(second)
        if r1 == r2 == rank(first + second):
            return 0.0
    a = _to_numpy(first).T
    b = _to_numpy(second).T
    return float(np.max(subspace_angles(a, b)))


def row_basis(rows: Sequence[Sequence[Scalar]]) -> List[Vector]:
    """
    从行向量中按顺序贪心选出一组线性无关的行
    """
    basis: List[Vector] = []
    for row in rows:
        candidate = basis + [tuple(row)]
        if rank(candidate) == len(candidate):
            basis = candidate
    return basis


def div(a: Scalar, b: Scalar) -> Scalar:
    """除法：两个精确标量得到 Fraction，否则得到浮点数"""
    if is_exact_scalar(a) and is_exact_scalar(b):
        return Fraction(a) / Fraction(b)
    return float(a) / float(b)


def solve_linear(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> Vector:
    """
    求解线性方程组 rows · x = rhs 的一个特解

    精确模式取 sympy 参数解中自由参数为零的那一个；浮点模式使用最小二乘。

    Raises:
        ValueError: 方程组无解
    """
    rows = [tuple(r) for r in rows]
    rhs = tuple(rhs)
    if rows_exact(rows) and is_exact(rhs):
        matrix = _to_sympy(rows)
        target = _to_sympy([[v] for v in rhs])
        try:
            solution, params = matrix.gauss_jordan_solve(target)
        except ValueError as e:
            raise ValueError(f"线性方程组无解: {e}")
        # 自由参数取零
        solution = solution.subs({p: 0 for p in params})
        return tuple(_from_sympy(x) for x in solution)

    matrix = _to_numpy(rows)
    target = np.array([float(v) for v in rhs])
    solution, *_ = np.linalg.lstsq(matrix, target, rcond=None)
    residual = np.max(np.abs(matrix @ solution - target)) if target.size else 0.0
    if residual > config_manager.tolerance('residual') * max(1.0, float(np.max(np.abs(target)))):
        raise ValueError(f"线性方程组无解（最小二乘残差 {residual:.3e}）")
    return tuple(float(x) for x in solution)


def is_perfect_square(value: Scalar) -> bool:
    """非负有理数是否为有理数的平方"""
    value = to_fraction(value)
    if value < 0:
        return False
    num, den = value.numerator, value.denominator
    return isqrt(num) ** 2 == num and isqrt(den) ** 2 == den


def sign(value: Scalar, scale: float = 1.0) -> int:
    """带判零策略的符号函数"""
    if is_zero(value, scale):
        return 0
    return 1 if value > 0 else -1


def exact_sqrt(value: Scalar) -> Fraction:
    """
    完全平方有理数的精确平方根

    Raises:
        ValueError: 不是有理数的平方
    """
    if not is_perfect_square(value):
        raise ValueError(f"不是完全平方: {value}")
    value = to_fraction(value)
    return Fraction(isqrt(value.numerator), isqrt(value.denominator))
