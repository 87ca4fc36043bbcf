"""
结果导出服务测试
"""

import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.algebra import IDENTITY, ONE, DualQuaternion, Quaternion
from src.core.errors import InvalidDivisorClassError
from src.core.moebius import EuclideanCircle, EuclideanLine
from src.core.picard import DivisorClass
from src.core.reconstruct import random_motion
from src.core.study import rotation_line
from src.services.export import (POINT_COLUMNS, ExportError, ResultExporter, decode_motion,
                                 decode_scalar, decode_subset, decode_biquadratic, dumps,
                                 encode_biquadratic, encode_dual_quaternion,
                                 encode_euclidean_view, encode_line, encode_motion,
                                 encode_points, encode_scalar, read_json)
from src.core.orbit import orbit_of_quadric


class TestScalarCodec:
    """标量编解码测试"""

    def test_encode(self):
        """测试整数、有理数与浮点数的编码"""
        assert encode_scalar(3) == 3
        assert encode_scalar(Fraction(-1, 2)) == "-1/2"
        assert encode_scalar(Fraction(4, 2)) == 2
        assert encode_scalar(0.25) == 0.25

    def test_decode(self):
        """测试有理数字符串解码"""
        assert decode_scalar("-1/2") == Fraction(-1, 2)
        assert decode_scalar("6/3") == 2
        assert isinstance(decode_scalar("6/3"), int)
        assert decode_scalar(1.5) == 1.5

    def test_rejects_bool_and_garbage(self):
        """测试布尔值与无法解析的值"""
        with pytest.raises(ExportError):
            encode_scalar(True)
        with pytest.raises(ExportError):
            decode_scalar(False)
        with pytest.raises(ExportError):
            decode_scalar("one half")
        with pytest.raises(ExportError):
            decode_scalar("1/0")
        with pytest.raises(ExportError):
            decode_scalar(None)


class TestGeometryCodec:
    """几何对象编解码测试"""

    def test_motion_roundtrip(self):
        """测试运动的编码与解码"""
        motion = random_motion(3)
        data = json.loads(dumps(encode_motion(motion)))
        assert decode_motion(data) == motion

    def test_motion_missing_field(self):
        """测试运动文件缺少字段"""
        with pytest.raises(ExportError):
            decode_motion({"a": []})
        with pytest.raises(ExportError):
            decode_motion({"a": [[1, 0, 0, 0]] * 3, "b": [[0, 0, 0, 0]] * 4})
        with pytest.raises(ExportError):
            decode_motion({"a": [[1, 0, 0]] * 4, "b": [[0, 0, 0, 0]] * 4})

    def test_biquadratic_roundtrip(self):
        """测试双二次映射的编码与解码"""
        X = orbit_of_quadric(random_motion(3))
        assert decode_biquadratic(json.loads(dumps(encode_biquadratic(X)))) == X

    def test_biquadratic_shape(self):
        """测试网格形状错误"""
        with pytest.raises(ExportError):
            decode_biquadratic({"X": [[[0, 0, 0]] * 3] * 4})

    def test_dual_quaternion(self):
        """测试对偶四元数编码"""
        h = DualQuaternion(ONE, Quaternion(0, Fraction(1, 3), 0, 0))
        assert encode_dual_quaternion(h) == {"p": [1, 0, 0, 0], "q": [0, "1/3", 0, 0]}

    def test_line(self):
        """测试直线编码带类型"""
        data = encode_line(rotation_line((1, 0, 0), (0, 0, 1)))
        assert data["kind"] == "rotation"
        assert data["g1"] == encode_dual_quaternion(IDENTITY)

    def test_euclidean_views(self):
        """测试欧氏视图编码"""
        circle = EuclideanCircle((1.0, 0.0, 0.0), (0.0, 0.0, 1.0), 2.0)
        line = EuclideanLine((0.0, 1.0, 0.0), (1.0, 0.0, 0.0))
        assert encode_euclidean_view(circle) == {"center": [1.0, 0.0, 0.0],
                                                 "normal": [0.0, 0.0, 1.0], "radius": 2.0}
        assert encode_euclidean_view(line) == {"line": {"point": [0.0, 1.0, 0.0],
                                                        "dir": [1.0, 0.0, 0.0]}}


class TestSubsetCodec:
    """除子类子集解码测试"""

    def test_list_and_dict(self):
        """测试数组与 {"classes": 数组} 两种格式"""
        rows = [[1, -1, 0, 0, 0, 0], [2, 0, -1, -1, -1, -1]]
        expected = [DivisorClass(tuple(r)) for r in rows]
        assert decode_subset(rows) == expected
        assert decode_subset({"classes": rows}) == expected

    def test_bad_rows(self):
        """测试长度或类型错误"""
        with pytest.raises(ExportError):
            decode_subset([[1, 2, 3]])
        with pytest.raises(ExportError):
            decode_subset([[1, -1, 0, 0, 0, 0.5]])
        with pytest.raises(ExportError):
            decode_subset({"rows": []})

    def test_class_validation_is_separate(self):
        """测试格式正确但不是二次曲线类的行可以解码"""
        classes = decode_subset([[3, -1, -1, -1, -1, -1]])
        assert classes[0].shape() is None
        with pytest.raises(InvalidDivisorClassError):
            DivisorClass((1, 2))


class TestResultExporter:
    """结果写出器测试"""

    def test_dumps_is_deterministic(self):
        """测试键排序与末尾换行"""
        text = dumps({"b": 1, "a": [1, 2]})
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')
        assert text == dumps({"a": [1, 2], "b": 1})

    def test_write_json(self, tmp_path):
        """测试写出 JSON 文件"""
        exporter = ResultExporter(tmp_path / "out")
        text = exporter.write_json("motion.json", {"a": 1})
        assert (tmp_path / "out" / "motion.json").read_text(encoding="utf-8") == text
        assert read_json(tmp_path / "out" / "motion.json") == {"a": 1}

    def test_no_output_dir(self):
        """测试不指定输出目录时只返回文本"""
        exporter = ResultExporter()
        assert exporter.write_json("x.json", [1]) == dumps([1])
        assert exporter.write_points("points.csv", [(1.0,) * 8]) is None

    def test_write_points(self, tmp_path):
        """测试点云 CSV"""
        exporter = ResultExporter(tmp_path)
        row = (1.0, 0.5, 0.25, -1.0, 1.3125, 0.5, 0.25, -1.0)
        path = exporter.write_points("points.csv", [row])
        with open(path, newline='', encoding='utf-8') as file:
            lines = list(csv.reader(file))
        assert lines[0] == POINT_COLUMNS
        assert [float(x) for x in lines[1]] == list(row)

    def test_write_points_bad_row(self, tmp_path):
        """测试列数错误"""
        with pytest.raises(ExportError):
            ResultExporter(tmp_path).write_points("points.csv", [(1.0, 2.0)])

    def test_read_json_errors(self, tmp_path):
        """测试文件不存在与 JSON 格式错误"""
        with pytest.raises(ExportError):
            read_json(tmp_path / "absent.json")
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        with pytest.raises(ExportError):
            read_json(bad)


class TestPointCloudJson:
    """点云 JSON 测试"""

    def test_columns_split(self):
        """测试齐次坐标与欧氏坐标分列存放"""
        rows = [(1.0, 0.5, 0.25, -1.0, 1.3125, 0.5, 0.25, -1.0),
                (1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)]
        data = encode_points(rows, 2.5e-15)

        assert data["count"] == 2
        assert data["homogeneous"][0] == [1.0, 0.5, 0.25, -1.0, 1.3125]
        assert data["euclidean"][0] == [0.5, 0.25, -1.0]
        assert all(len(row) == 5 for row in data["homogeneous"])
        assert all(len(row) == 3 for row in data["euclidean"])
        assert data["residual"] == 2.5e-15
        assert json.loads(dumps(data)) == data

    def test_empty_cloud(self):
        """测试空点云"""
        assert encode_points([], 0.0) == {"homogeneous": [], "euclidean": [], "count": 0,
                                          "residual": 0.0}

    def test_bad_row(self):
        """测试列数错误"""
        with pytest.raises(ExportError):
            encode_points([(1.0, 2.0, 3.0)], 0.0)
