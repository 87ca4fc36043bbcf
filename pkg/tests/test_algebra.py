"""
四元数与对偶四元数代数测试
"""

import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.algebra import (EPSILON, I, IDENTITY, J, K, ONE, ZERO, DualQuaternion,
                              Quaternion, bilinear_product, component_grid, dq_norm,
                              dq_norm_full)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
quaternions = st.builds(Quaternion, rationals, rationals, rationals, rationals)
dual_quaternions = st.builds(DualQuaternion, quaternions, quaternions)


class TestQuaternion:
    """四元数测试"""

    def test_hamilton_relations(self):
        """测试 𝐢² = 𝐣² = 𝐤² = 𝐢𝐣𝐤 = −1"""
        assert I * I == -ONE
        assert J * J == -ONE
        assert K * K == -ONE
        assert I * J * K == -ONE

    def test_cyclic_products(self):
        """测试 𝐢𝐣 = 𝐤, 𝐣𝐤 = 𝐢, 𝐤𝐢 = 𝐣"""
        assert I * J == K
        assert J * K == I
        assert K * I == J
        assert J * I == -K

    def test_norm_and_conjugate(self):
        """测试范数与共轭"""
        q = Quaternion(1, 2, 3, 4)
        assert q.norm() == 30
        assert q * q.conj() == Quaternion(30, 0, 0, 0)
        assert q.conj() == Quaternion(1, -2, -3, -4)

    def test_scalar_multiplication(self):
        """测试标量乘法两侧一致"""
        q = Quaternion(1, -1, 2, 0)
        assert 2 * q == q * 2 == Quaternion(2, -2, 4, 0)

    @settings(max_examples=100, deadline=None)
    @given(quaternions, quaternions, quaternions)
    def test_associativity(self, a, b, c):
        """测试结合律"""
        assert (a * b) * c == a * (b * c)

    @settings(max_examples=100, deadline=None)
    @given(quaternions, quaternions)
    def test_conjugation_anti_automorphism(self, a, b):
        """测试 conj(ab) = conj(b)conj(a)"""
        assert (a * b).conj() == b.conj() * a.conj()

    @settings(max_examples=100, deadline=None)
    @given(quaternions, quaternions)
    def test_norm_multiplicative(self, a, b):
        """测试 N(ab) = N(a)N(b)"""
        assert (a * b).norm() == a.norm() * b.norm()


class TestDualQuaternion:
    """对偶四元数测试"""

    def test_epsilon_squared(self):
        """测试 ε² = 0"""
        assert EPSILON * EPSILON == DualQuaternion(ZERO, ZERO)

    def test_product_example(self):
        """测试 (𝐢+𝐣ε)(𝐣+𝐢ε) = 𝐤 − 2ε"""
        left = DualQuaternion(I, J)
        right = DualQuaternion(J, I)
        assert left * right == DualQuaternion(K, Quaternion(-2, 0, 0, 0))

    def test_translation(self):
        """测试平移 1 − (t/2)ε"""
        e = DualQuaternion.translation((2, 4, -6))
        assert e == DualQuaternion(ONE, Quaternion(0, -1, -2, 3))
        assert DualQuaternion.translation((1, 0, 0)).q.x == Fraction(-1, 2)

    def test_coords_roundtrip(self):
        """测试坐标顺序 p 在前 q 在后"""
        h = DualQuaternion.from_coords(range(8))
        assert h.p == Quaternion(0, 1, 2, 3)
        assert h.q == Quaternion(4, 5, 6, 7)
        with pytest.raises(ValueError):
            DualQuaternion.from_coords(range(7))

    def test_dual_norm_of_identity(self):
        """测试单位元的对偶范数"""
        n = dq_norm(IDENTITY)
        assert (n.real, n.dual) == (1, 0)

    @settings(max_examples=100, deadline=None)
    @given(dual_quaternions, dual_quaternions, dual_quaternions)
    def test_associativity(self, a, b, c):
        """测试对偶四元数乘法结合律"""
        assert (a * b) * c == a * (b * c)

    @settings(max_examples=100, deadline=None)
    @given(dual_quaternions, dual_quaternions)
    def test_conjugation_anti_automorphism(self, a, b):
        """测试 conj(ab) = conj(b)conj(a)"""
        assert (a * b).conj() == b.conj() * a.conj()

    @settings(max_examples=100, deadline=None)
    @given(dual_quaternions)
    def test_dual_norm_is_real(self, h):
        """测试 h·h̄ 的原部与对偶部都是实数"""
        full = dq_norm_full(h)
        assert full.p.vector == (0, 0, 0)
        assert full.q.vector == (0, 0, 0)
        assert full.q.w == 2 * h.p.dot(h.q)


    @settings(max_examples=50, deadline=None)
    @given(dual_quaternions)
    def test_epsilon_is_central(self, h):
        """测试 ε 与任意对偶四元数可交换，且 εh = pε"""
        assert EPSILON * h == h * EPSILON
        assert EPSILON * h == DualQuaternion(ZERO, h.p)


class TestBilinearProduct:
    """双线性四元数多项式乘积测试"""

    def test_grid_layout(self):
        """测试乘积网格的下标为 (s₁次数, t₁次数)"""
        left = (ONE, ZERO, ZERO, I)      # s₀t₀ + 𝐢 s₁t₁
        right = (ONE, ZERO, ZERO, J)     # s₀t₀ + 𝐣 s₁t₁
        grid = bilinear_product(left, right)
        assert grid[0][0] == ONE
        assert grid[1][1] == I + J
        assert grid[2][2] == K
        assert component_grid(grid, 3)[2][2] == 1
        assert grid[0][2] == ZERO
