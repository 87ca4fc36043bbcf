"""
Study 二次曲面测试
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.algebra import I, IDENTITY, J, K, ONE, ZERO, DualQuaternion, Quaternion
from src.core.errors import (BoundaryPointError, GeometryError, NotThroughIdentityError,
                             UndefinedChartError, ZeroDirectionError, ZeroInputError)
from src.core.study import (BaseLocusSpec, LineKind, act, axis_through, in_F_u, make_line,
                            on_boundary, on_study, random_study_point, rotation_axis,
                            rotation_line, study_pairing, study_polar, translation_line)

small = st.integers(min_value=-3, max_value=3)
vectors = st.tuples(small, small, small)


def _distance_sq(a: Quaternion, b: Quaternion):
    d = a - b
    return d.norm()


class TestStudyQuadric:
    """Study 二次曲面成员判定测试"""

    def test_on_study_examples(self):
        """测试 1+𝐢ε 在 S 上而 1+ε 不在"""
        assert on_study(DualQuaternion(ONE, I)) is True
        assert on_study(DualQuaternion(ONE, ONE)) is False

    def test_zero_input(self):
        """测试零向量被拒绝"""
        with pytest.raises(ZeroInputError):
            on_study(DualQuaternion(ZERO, ZERO))

    def test_boundary(self):
        """测试边界 p = 0"""
        assert on_boundary(DualQuaternion(ZERO, I)) is True
        assert on_boundary(IDENTITY) is False

    def test_polar_form(self):
        """测试 B(h, h) = 2⟨h⟩"""
        h = DualQuaternion(Quaternion(1, 2, 0, -1), Quaternion(3, 0, 1, 1))
        assert study_polar(h, h) == 2 * study_pairing(h)

    def test_random_points_on_study(self):
        """测试随机点位于 S∖B 上"""
        rng = np.random.default_rng(7)
        for _ in range(20):
            h = random_study_point(rng)
            assert study_pairing(h) == 0
            assert not on_boundary(h)


class TestKinematicAction:
    """运动学作用测试"""

    def test_rotation_by_k(self):
        """测试 act(𝐤, 𝐢) = −𝐢"""
        assert act(DualQuaternion(K, ZERO), I) == Quaternion(0, -1, 0, 0)

    def test_translation(self):
        """测试平移把原点移到 t"""
        e = DualQuaternion.translation((2, 0, -4))
        assert act(e, ZERO) == Quaternion(0, 2, 0, -4)

    def test_boundary_point_rejected(self):
        """测试边界点上作用未定义"""
        with pytest.raises(BoundaryPointError):
            act(DualQuaternion(ZERO, ONE), I)

    def test_group_action_law(self):
        """测试 act(xy, v) = act(x, act(y, v))，100 个随机点，精确"""
        rng = np.random.default_rng(2024)
        for _ in range(100):
            x, y = random_study_point(rng), random_study_point(rng)
            v = Quaternion.from_vector([int(c) for c in rng.integers(-4, 5, size=3)])
            assert act(x * y, v) == act(x, act(y, v))

    def test_isometry(self):
        """测试作用保持欧氏距离，100 个随机点，精确"""
        rng = np.random.default_rng(99)
        for _ in range(100):
            h = random_study_point(rng)
            v1 = Quaternion.from_vector([int(c) for c in rng.integers(-4, 5, size=3)])
            v2 = Quaternion.from_vector([int(c) for c in rng.integers(-4, 5, size=3)])
            assert _distance_sq(act(h, v1), act(h, v2)) == _distance_sq(v1, v2)


class TestStudyLines:
    """过单位元直线测试"""

    def test_rotation_line_generator(self):
        """测试绕轴 (1,0,0)+λ(0,0,1) 的生成元为 𝐤 + 𝐣ε 且固定轴上的点"""
        line = rotation_line((1, 0, 0), (0, 0, 1))
        g = line.generator()
        assert g == DualQuaternion(K, J)
        assert act(g, I) == I
        assert line.kind == LineKind.ROTATION

    def test_rotation_axis_recovery(self):
        """测试由直线恢复旋转轴"""
        c, d = rotation_axis(rotation_line((1, 0, 0), (0, 0, 1)))
        assert c == (1, 0, 0)
        assert d == (0, 0, 1)

    def test_rotation_line_fixes_axis(self):
        """测试直线上每个点都固定轴上的点"""
        line = rotation_line((1, 2, 0), (0, 1, 1))
        for lam, mu in ((1, 1), (2, -1), (1, 3)):
            h = line.point(lam, mu)
            assert act(h, Quaternion(0, 1, 3, 1)) == Quaternion(0, 1, 3, 1)

    def test_zero_direction(self):
        """测试零方向被拒绝"""
        with pytest.raises(ZeroDirectionError):
            rotation_line((1, 0, 0), (0, 0, 0))
        with pytest.raises(ZeroDirectionError):
            translation_line((0, 0, 0))

    def test_translation_line(self):
        """测试平移直线的分类"""
        line = translation_line((1, 0, 0))
        assert line.kind == LineKind.TRANSLATION
        assert line.contains(DualQuaternion(ONE, I))

    def test_line_not_on_study(self):
        """测试不在 S 上的直线被拒绝"""
        with pytest.raises(GeometryError):
            make_line(IDENTITY, DualQuaternion(I, I))

    def test_line_not_through_identity(self):
        """测试不经过 𝔢 的直线没有生成元"""
        line = make_line(DualQuaternion(I, ZERO), DualQuaternion(J, ZERO))
        assert line.kind is None
        with pytest.raises(NotThroughIdentityError):
            line.generator()

    def test_right_multiplication(self):
        """测试直线右乘后仍在 S 上且经过 h"""
        h = DualQuaternion(Quaternion(1, 1, 0, 0), Quaternion(0, 0, 1, -1))
        line = rotation_line((0, 1, 0), (1, 0, 0)).right_mul(h)
        assert line.contains(h)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 31 - 1), vectors, vectors.filter(any))
    def test_left_multiplication_preserves_study(self, seed, c, d):
        """测试左乘 B 外的 h 把 S 映到 S、把 S 中的直线映为直线"""
        rng = np.random.default_rng(seed)
        h = random_study_point(rng)
        g = random_study_point(rng)
        assert not on_boundary(h)
        assert study_pairing(h * g) == 0

        for line in (rotation_line(c, d), translation_line(d)):
            moved = line.left_mul(h)
            assert moved.contains(h)
            assert moved.contains(h * line.point(2, -3))
            assert study_pairing(moved.point(5, 7)) == 0


class TestBaseLocus:
    """基轨迹 F_u 测试"""

    def test_undefined_chart(self):
        """测试 u₀ = 0 的基点被拒绝"""
        with pytest.raises(UndefinedChartError):
            BaseLocusSpec((0, 1, 0, 0, 1))

    def test_origin(self):
        """测试基点 𝔬"""
        spec = BaseLocusSpec.origin()
        assert spec.is_origin
        assert spec.v == ZERO

    def test_real_points_avoid_base_locus(self):
        """测试 1000 个随机实点都不在 F_𝔬 中"""
        rng = np.random.default_rng(11)
        spec = BaseLocusSpec.origin()
        for _ in range(1000):
            assert not in_F_u(spec, random_study_point(rng, bound=3))

    def test_axis_through_base_point(self):
        """测试轴经过基点的旋转直线被识别"""
        spec = BaseLocusSpec.origin()
        assert axis_through(rotation_line((0, 0, 0), (0, 0, 1)), spec)
        assert not axis_through(rotation_line((1, 0, 0), (0, 0, 1)), spec)
        assert not axis_through(translation_line((1, 0, 0)), spec)

    def test_axis_through_other_base_point(self):
        """测试非原点基点"""
        spec = BaseLocusSpec((1, 1, 0, 0, 1))
        assert axis_through(rotation_line((1, 0, 0), (0, 0, 1)), spec)
