"""
Picard 格测试
"""

import sys
from pathlib import Path

import pytest

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.errors import InvalidDivisorClassError
from src.core.picard import (MINUS_KAPPA, DivisorClass, box_is_sufficient, conic_classes,
                             decompositions_of_minus_2kappa, has_cospherical_pair, matched_shape,
                             matched_subset, pair, pair_product_census)

LINE_1 = DivisorClass((1, -1, 0, 0, 0, 0))
CONIC_1 = DivisorClass((2, 0, -1, -1, -1, -1))


class TestDivisorClass:
    """除子类测试"""

    def test_pairing(self):
        """测试相交配对"""
        assert pair(MINUS_KAPPA, MINUS_KAPPA) == 4
        assert pair(LINE_1, CONIC_1) == 2
        assert pair(LINE_1, LINE_1) == 0

    def test_shape(self):
        """测试形状识别与特殊下标"""
        assert LINE_1.shape() == "line"
        assert CONIC_1.shape() == "conic"
        assert LINE_1.index() == CONIC_1.index() == 1
        assert MINUS_KAPPA.shape() is None

    def test_arithmetic(self):
        """测试加法与数乘"""
        assert LINE_1 + CONIC_1 == MINUS_KAPPA
        assert MINUS_KAPPA.scale(2).to_list() == [6, -2, -2, -2, -2, -2]

    def test_wrong_length(self):
        """测试坐标个数错误"""
        with pytest.raises(InvalidDivisorClassError):
            DivisorClass((1, 2, 3))

    def test_non_integer(self):
        """测试非整数坐标"""
        with pytest.raises(InvalidDivisorClassError):
            DivisorClass((1.0, -1, 0, 0, 0, 0))
        with pytest.raises(InvalidDivisorClassError):
            DivisorClass((True, -1, 0, 0, 0, 0))


class TestConicClasses:
    """二次曲线类枚举测试"""

    def test_ten_classes(self):
        """测试恰有 10 个二次曲线类，五个直线型五个圆锥型"""
        classes = conic_classes()
        assert len(classes) == 10
        assert sorted(c.shape() for c in classes) == ["conic"] * 5 + ["line"] * 5
        for c in classes:
            assert pair(c, c) == 0
            assert pair(c, MINUS_KAPPA) == 2

    def test_box_sufficient(self):
        """测试搜索范围足够大"""
        assert box_is_sufficient(conic_classes())
        assert not box_is_sufficient([DivisorClass((3, 0, 0, 0, 0, 0))])

    def test_smaller_box(self):
        """测试缩小搜索范围得到同样的类"""
        assert conic_classes(box=2) == conic_classes()


class TestDecompositions:
    """−2κ 分解测试"""

    def test_count_and_shape(self):
        """测试 15 个分解都具有匹配形状且含配对为 2 的一对"""
        decompositions = decompositions_of_minus_2kappa()
        assert len(decompositions) == 15
        for combo in decompositions:
            assert matched_shape(combo)
            assert has_cospherical_pair(combo)

    def test_unmatched_combo(self):
        """测试不匹配的形状"""
        line_2 = DivisorClass((1, 0, -1, 0, 0, 0))
        conic_3 = DivisorClass((2, -1, -1, 0, -1, -1))
        assert not matched_shape((LINE_1, line_2, CONIC_1, conic_3))


class TestCensus:
    """配对统计测试"""

    def test_full_census(self):
        """测试全部 10 个类的 45 对"""
        census = pair_product_census(conic_classes())
        assert len(census.pairs) == 45
        assert census.summary == {1: 40, 2: 5}

    def test_matched_subset(self):
        """测试下标 1、2、3 的子集"""
        census = pair_product_census(matched_subset((1, 2, 3)))
        assert len(census.pairs) == 15
        assert census.to_dict()["summary"] == {"1": 12, "2": 3}

    def test_duplicates_ignored(self):
        """测试重复的类只计一次"""
        census = pair_product_census([LINE_1, LINE_1, CONIC_1])
        assert [v for _, _, v in census.pairs] == [2]

    def test_invalid_subset(self):
        """测试非二次曲线类被拒绝"""
        with pytest.raises(InvalidDivisorClassError):
            pair_product_census([LINE_1, MINUS_KAPPA])

    def test_to_dict(self):
        """测试导出格式"""
        data = pair_product_census([LINE_1, CONIC_1]).to_dict()
        assert data == {
            "pairs": [{"c": LINE_1.to_list(), "d": CONIC_1.to_list(), "value": 2}],
            "summary": {"2": 1},
        }
