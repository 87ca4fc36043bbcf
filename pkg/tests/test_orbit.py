"""
轨道映射测试
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.algebra import I, IDENTITY, ONE, ZERO, DualQuaternion
from src.core.errors import (BaseLocusError, BasepointError, DegenerateMotionError,
                             InvalidBiquadraticError, StudyViolationError)
from src.core.moebius import ORIGIN, EuclideanCircle, EuclideanLine, euclidean_view, on_sphere, \
    to_euclidean
from src.core.orbit import (BilinearMotion, BiquadraticMap, eval_biquadratic, image_quadrics,
                            orb, orbit_of_line, orbit_of_quadric, transport_to)
from src.core.reconstruct import random_motion
from src.core.study import BaseLocusSpec, act, random_study_point, rotation_line, \
    translation_line
from src.utils.forms import zero_grid

ZERO_GRID = zero_grid()
CORNER_GRID = ((1, 0, 0), (0, 0, 0), (0, 0, 0))


@pytest.fixture(scope="module")
def motion():
    """固定种子的随机双线性运动"""
    return random_motion(7)


class TestOrbitMap:
    """轨道映射 orb_u 测试"""

    def test_identity_maps_to_base_point(self):
        """测试 orb_𝔬(𝔢) = 𝔬"""
        assert orb(BaseLocusSpec.origin(), IDENTITY) == ORIGIN

    def test_image_on_sphere(self):
        """测试 100 个随机点的像都满足 Möbius 恒等式"""
        rng = np.random.default_rng(5)
        spec = BaseLocusSpec.origin()
        for _ in range(100):
            assert on_sphere(orb(spec, random_study_point(rng)))

    def test_orbit_is_moved_base_point(self):
        """测试 τ(orb_𝔬(h)) = act(h, 0)"""
        rng = np.random.default_rng(8)
        spec = BaseLocusSpec.origin()
        for _ in range(20):
            h = random_study_point(rng)
            assert to_euclidean(orb(spec, h)) == act(h, ZERO).vector

    def test_transport(self):
        """测试 orb_u(h) = orb_𝔬(h·e) 且 orb_𝔬(e) = u"""
        spec = BaseLocusSpec((1, 1, 0, 0, 1))
        e = transport_to(spec)
        origin = BaseLocusSpec.origin()
        assert orb(origin, e) == spec.u
        rng = np.random.default_rng(13)
        for _ in range(20):
            h = random_study_point(rng)
            assert orb(spec, h) == orb(origin, h * e)

    def test_zero_point_in_base_locus(self):
        """测试零向量落在基轨迹中"""
        with pytest.raises(BaseLocusError):
            orb(BaseLocusSpec.origin(), DualQuaternion(ZERO, ZERO))

    def test_dominance_certificate(self):
        """测试像上只有 Möbius 二次型"""
        certificate = image_quadrics(sample_count=40, seed=1)
        assert certificate == {"quadric_dim": 1, "samples": 40}


class TestOrbitOfLine:
    """直线的轨道测试"""

    def test_rotation_orbit_is_circle(self):
        """测试绕 (1,0,0)+λ(0,0,1) 旋转的轨道是单位圆"""
        view = euclidean_view(orbit_of_line(BaseLocusSpec.origin(),
                                            rotation_line((1, 0, 0), (0, 0, 1))))
        assert isinstance(view, EuclideanCircle)
        assert view.center == pytest.approx((1.0, 0.0, 0.0))
        assert view.normal == pytest.approx((0.0, 0.0, 1.0))
        assert view.radius == pytest.approx(1.0)

    def test_axis_through_origin_gives_point(self):
        """测试轴经过基点时轨道退化为点"""
        image = orbit_of_line(BaseLocusSpec.origin(), rotation_line((0, 0, 0), (0, 0, 1)))
        assert image == ORIGIN

    def test_translation_orbit_is_line(self):
        """测试平移的轨道是经过投影中心的圆"""
        view = euclidean_view(orbit_of_line(BaseLocusSpec.origin(), translation_line((1, 0, 0))))
        assert isinstance(view, EuclideanLine)
        assert view.point == pytest.approx((0.0, 0.0, 0.0))
        assert view.direction == pytest.approx((1.0, 0.0, 0.0))


class TestOrbitOfQuadric:
    """双线性运动的轨道测试"""

    def test_identity_holds(self, motion):
        """测试 X₀X₄ = X₁² + X₂² + X₃² 精确成立"""
        X = orbit_of_quadric(motion)
        assert X.is_exact
        assert X.satisfies_identity()
        X.validate()

    def test_matches_pointwise_orbit(self, motion):
        """测试 X(s, t) = orb_𝔬(H(s, t))"""
        X = orbit_of_quadric(motion)
        spec = BaseLocusSpec.origin()
        for s in ((1, 0), (1, 1), (2, -1)):
            for t in ((0, 1), (1, 3), (1, -1)):
                assert eval_biquadratic(X, s, t) == orb(spec, motion.evaluate(s, t))

    def test_study_violation(self):
        """测试不满足 Study 条件的运动被拒绝"""
        bad = BilinearMotion((ONE, ZERO, ZERO, ZERO), (ONE, ZERO, ZERO, ZERO))
        with pytest.raises(StudyViolationError):
            orbit_of_quadric(bad)
        with pytest.raises(StudyViolationError):
            bad.validate()

    def test_all_forms_zero(self):
        """测试五个形式全为零"""
        zero = BilinearMotion((ZERO,) * 4, (ZERO,) * 4)
        with pytest.raises(DegenerateMotionError):
            orbit_of_quadric(zero)

    def test_degenerate_span(self):
        """测试系数点不张成三维射影空间"""
        flat = BilinearMotion((ONE, I, ONE, I), (ZERO,) * 4)
        with pytest.raises(DegenerateMotionError):
            flat.validate()

    def test_invalid_biquadratic(self):
        """测试违反 Möbius 恒等式的映射被拒绝"""
        X = BiquadraticMap((ZERO_GRID, CORNER_GRID, ZERO_GRID, ZERO_GRID, ZERO_GRID))
        assert not X.satisfies_identity()
        with pytest.raises(InvalidBiquadraticError):
            X.validate()

    def test_basepoint(self):
        """测试在基点处求值"""
        X = BiquadraticMap((CORNER_GRID, ZERO_GRID, ZERO_GRID, ZERO_GRID, ZERO_GRID))
        assert eval_biquadratic(X, (1, 0), (1, 0)) == (1, 0, 0, 0, 0)
        with pytest.raises(BasepointError):
            eval_biquadratic(X, (0, 1), (1, 0))

    def test_float_motion(self, motion):
        """测试浮点模式下恒等式按容差成立"""
        X = orbit_of_quadric(motion.to_float())
        assert not X.is_exact
        assert X.satisfies_identity()
