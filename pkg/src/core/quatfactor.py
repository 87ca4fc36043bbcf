"""
四元数分解
验证并数值求解双二次映射的分解 norm(A) = X₀, norm(B) = X₄, AB = X₁𝐢+X₂𝐣+X₃𝐤，
并由 (A, B) 重建 Study 二次曲面中的双线性运动

约定映射：A = a，B = 2b̄；逆映射 H = A + ½B̄ε。
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import least_squares

from .algebra import I, J, K, ONE, Quaternion, bilinear_product, component_grid
from .cyclide import Cyclide, contains_point
from .errors import (BasepointError, InvalidBiquadraticError, NoConvergenceError,
                     OrbitMismatchError, StudyViolationError)
from .orbit import BilinearMotion, BiquadraticMap, eval_biquadratic, orbit_of_quadric
from ..services.config import config_manager
from ..services.logger import logger_manager
from ..utils.forms import grid_flat, grid_is_zero
from ..utils.linalg import Scalar, div, is_exact


@dataclass(frozen=True)
class BilinearQuatPoly:
    """系数按 s₀t₀, s₀t₁, s₁t₀, s₁t₁ 排列的双线性四元数多项式"""

    coeffs: Tuple[Quaternion, Quaternion, Quaternion, Quaternion]

    def conj(self) -> "BilinearQuatPoly":
        return BilinearQuatPoly(tuple(q.conj() for q in self.coeffs))

    def right_mul(self, mu: Quaternion) -> "BilinearQuatPoly":
        return BilinearQuatPoly(tuple(q * mu for q in self.coeffs))

    def left_mul(self, mu: Quaternion) -> "BilinearQuatPoly":
        return BilinearQuatPoly(tuple(mu * q for q in self.coeffs))

    def norm_grid(self):
        """norm(A) = A Ā 的实部网格"""
        return component_grid(bilinear_product(self.coeffs, self.conj().coeffs), 0)

    def to_float(self) -> "BilinearQuatPoly":
        return BilinearQuatPoly(tuple(Quaternion(*(float(c) for c in q.coords))
                                      for q in self.coeffs))


@dataclass(frozen=True)
class FactorizationCertificate:
    """三个恒等式的最大系数偏差（最优公共缩放之后，相对于目标尺度）"""

    r_normA: float
    r_normB: float
    r_AB: float
    scale: Scalar = 1

    def accepted(self, tolerance: float = None) -> bool:
        tolerance = config_manager.get('factor.accept', 1e-8) if tolerance is None else tolerance
        return max(self.r_normA, self.r_normB, self.r_AB) < tolerance

    def to_dict(self):
        return {"r_normA": self.r_normA, "r_normB": self.r_normB, "r_AB": self.r_AB}


@dataclass(frozen=True)
class FactorizationResult:
    A: BilinearQuatPoly
    B: BilinearQuatPoly
    certificate: FactorizationCertificate
    restart: int


def _max_abs(values) -> Scalar:
    return max((abs(v) for v in values), default=0)


def verify_factorization(A: BilinearQuatPoly, B: BilinearQuatPoly,
                         X: BiquadraticMap) -> FactorizationCertificate:
    """
    逐系数展开三个恒等式并报告偏差

    λ = ⟨X′, X⟩/⟨X, X⟩ 为最优公共缩放，X′ 为 (norm A, vec AB, norm B)；
    AB 的实部也计入 r_AB。精确输入下偏差严格为零。
    """
    norm_a = A.norm_grid()
    norm_b = B.norm_grid()
    ab = bilinear_product(A.coeffs, B.coeffs)
    computed = [norm_a] + [component_grid(ab, k) for k in (1, 2, 3)] + [norm_b]

    flat_computed = [c for g in computed for c in grid_flat(g)]
    flat_target = [c for g in X.X for c in grid_flat(g)]
    denominator = sum(x * x for x in flat_target)
    lam = div(sum(x * y for x, y in zip(flat_computed, flat_target)), denominator) \
        if denominator != 0 else 0

    def deviation(got, want):
        return _max_abs([g - lam * w for g, w in zip(grid_flat(got), grid_flat(want))])

    # 偏差相对于缩放后的目标
    scale = abs(lam) * X.scale() if lam != 0 else 1
    rel = lambda value: float(value) / float(scale) if scale else float(value)
    r_ab = max(max(deviation(computed[k], X.X[k]) for k in (1, 2, 3)),
               _max_abs(grid_flat(component_grid(ab, 0))))
    return FactorizationCertificate(
        r_normA=rel(deviation(computed[0], X.X[0])),
        r_normB=rel(deviation(computed[4], X.X[4])),
        r_AB=rel(r_ab),
        scale=lam,
    )


def from_motion(motion: BilinearMotion) -> Tuple[BilinearQuatPoly, BilinearQuatPoly]:
    """约定映射：A = a，B = 2b̄"""
    return (BilinearQuatPoly(tuple(motion.a)),
            BilinearQuatPoly(tuple(q.conj().scale(2) for q in motion.b)))


def to_motion(A: BilinearQuatPoly, B: BilinearQuatPoly,
              cyclide: Optional[Cyclide] = None) -> BilinearMotion:
    """
    由分解重建运动 H = A + ½B̄ε

    Args:
        A, B: 通过证书的分解
        cyclide: 给出时检查重建运动的轨道落在其二次型束上

    Raises:
        StudyViolationError: H 不满足 Study 条件
        OrbitMismatchError: 轨道点不在给定环面上
    """
    exact = is_exact([c for q in A.coeffs + B.coeffs for c in q.coords])
    half = Fraction(1, 2) if exact else 0.5
    # B = 2b̄ 的逆映射
    motion = BilinearMotion(tuple(A.coeffs), tuple(q.conj().scale(half) for q in B.coeffs))
    if not motion.satisfies_study():
        raise StudyViolationError("重建运动不满足Study条件，约定映射不匹配")
    if cyclide is not None:
        image = orbit_of_quadric(motion)
        for s, t in itertools.product(((1, 1), (1, 2), (2, -1)), ((1, -1), (1, 3), (3, 1))):
            try:
                x = eval_biquadratic(image, s, t)
            except BasepointError:
                continue
            if not contains_point(cyclide, x):
                raise OrbitMismatchError(f"重建运动的轨道点 {x} 不在环面上")
    return motion


def _structure_tensor() -> np.ndarray:
    basis = [ONE, I, J, K]
    M = np.zeros((4, 4, 4))
    for p, a in enumerate(basis):
        for q, b in enumerate(basis):
            M[p, q] = [float(c) for c in (a * b).coords]
    return M


def _selection_tensor() -> np.ndarray:
    sel = np.zeros((2, 2, 2, 2, 3, 3))
    for i, j, k, l in itertools.product(range(2), repeat=4):
        sel[i, j, k, l, i + k, j + l] = 1.0
    return sel


QUAT_TENSOR = _structure_tensor()
SELECTION = _selection_tensor()


class _FactorSystem:
    """54 个方程、32 个未知数的多项式方程组及其解析雅可比矩阵"""

    def __init__(self, target: np.ndarray):
        self.target = target
        pure = np.zeros((3, 3, 4))
        # AB 的目标实部为零
        pure[..., 1:] = np.moveaxis(target[1:4], 0, -1)
        self.target_ab = pure

    @staticmethod
    def unpack(z: np.ndarray):
        return z[:16].reshape(2, 2, 4), z[16:].reshape(2, 2, 4)

    def residual(self, z: np.ndarray) -> np.ndarray:
        A, B = self.unpack(z)
        norm_a = np.einsum('ijklmn,ijq,klq->mn', SELECTION, A, A)
        norm_b = np.einsum('ijklmn,ijq,klq->mn', SELECTION, B, B)
        ab = np.einsum('ijklmn,ijp,klq,pqr->mnr', SELECTION, A, B, QUAT_TENSOR)
        return np.concatenate([(norm_a - self.target[0]).ravel(),
                               (norm_b - self.target[4]).ravel(),
                               (ab - self.target_ab).ravel()])

    def jacobian(self, z: np.ndarray) -> np.ndarray:
        A, B = self.unpack(z)
        jac = np.zeros((54, 32))
        jac[:9, :16] = 2 * np.einsum('ijklmn,klq->mnijq', SELECTION, A).reshape(9, 16)
        jac[9:18, 16:] = 2 * np.einsum('ijklmn,klq->mnijq', SELECTION, B).reshape(9, 16)
        jac[18:, :16] = np.einsum('ijklmn,klq,pqr->mnrijp',
                                  SELECTION, B, QUAT_TENSOR).reshape(36, 16)
        jac[18:, 16:] = np.einsum('ijklmn,ijp,pqr->mnrklq',
                                  SELECTION, A, QUAT_TENSOR).reshape(36, 16)
        return jac


def _round_significant(value: float, digits: int) -> float:
    return float(f"{value:.{digits}g}")


def _to_poly(block: np.ndarray, digits: int) -> BilinearQuatPoly:
    # 系数截断到 digits 位有效数字，同一输入的输出逐字节一致
    return BilinearQuatPoly(tuple(Quaternion(*(_round_significant(float(c), digits)
                                               for c in block[i, j]))
                                  for i in range(2) for j in range(2)))


def _fix_gauge(A: BilinearQuatPoly, B: BilinearQuatPoly):
    """右乘单位四元数 μ，使 A 中范数最大的系数成为正实数；B 同步左乘 μ̄"""
    c = max(A.coeffs, key=lambda q: q.norm())
    length = math.sqrt(c.norm())
    mu = c.conj().scale(1.0 / length)
    return A.right_mul(mu), B.left_mul(mu.conj())


def normalize_target(X: BiquadraticMap) -> np.ndarray:
    """按最大系数归一化；X₀ 的角系数必须非负，否则整体变号"""
    target = np.array([[[float(c) for c in row] for row in g] for g in X.X])
    target /= np.max(np.abs(target))
    corners = [target[0, 0, 0], target[0, 0, 2], target[0, 2, 0], target[0, 2, 2]]
    # X₀ = |A|² 在角上非负
    if max(corners) < 0:
        target = -target
    return target


def factor(X: BiquadraticMap, seed: int = None, restarts: int = None,
           iterations: int = None) -> FactorizationResult:
    """
    数值求解分解 (A, B)

    随机正态初值加 Levenberg-Marquardt 最小二乘，按重启序号依次尝试，
    第一个通过证书的解胜出。

    Args:
        X: 满足 Möbius 恒等式的双二次映射
        seed: 随机种子
        restarts: 重启次数
        iterations: 每次重启的最大函数求值次数

    Raises:
        InvalidBiquadraticError: X 不满足恒等式或 X₀ 恒为零
        NoConvergenceError: 重启预算内未收敛
    """
    X.validate()
    if grid_is_zero(X.X[0], max(X.scale(), 1.0)):
        raise InvalidBiquadraticError("X₀ 恒为零")
    seed = int(config_manager.get('sampling.seed', 20240501)) if seed is None else seed
    restarts = int(config_manager.get('factor.restarts', 50)) if restarts is None else restarts
    iterations = int(config_manager.get('factor.iterations', 200)) \
        if iterations is None else iterations
    converge = float(config_manager.get('factor.converge', 1e-10))
    accept = float(config_manager.get('factor.accept', 1e-8))
    digits = int(config_manager.get('factor.digits', 10))

    target = normalize_target(X)
    normalized = BiquadraticMap(tuple(tuple(tuple(float(c) for c in row) for row in g)
                                      for g in target))
    system = _FactorSystem(target)
    rng = np.random.default_rng(seed)
    best = float("inf")

    for restart in range(restarts):
        z0 = rng.standard_normal(32)
        solution = least_squares(system.residual, z0, jac=system.jacobian, method='lm',
                                 max_nfev=iterations, xtol=1e-15, ftol=1e-15, gtol=1e-15)
        residual = float(np.max(np.abs(system.residual(solution.x))))
        logger_manager.debug(f"分解第 {restart + 1} 次重启: 残差 {residual:.3e}")
        best = min(best, residual)
        # 先看残差，再对截断后的解验证证书
        if residual >= converge:
            continue
        A_block, B_block = system.unpack(solution.x)
        A, B = _fix_gauge(_to_poly(A_block, digits), _to_poly(B_block, digits))
        certificate = verify_factorization(A, B, normalized)
        if certificate.accepted(accept):
            logger_manager.log_certificate("factor", certificate.to_dict())
            return FactorizationResult(A, B, certificate, restart)

    raise NoConvergenceError(f"{restarts} 次重启后仍未收敛，最优残差 {best:.3e}",
                             best_residual=best)
