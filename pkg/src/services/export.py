"""
结果导出服务
负责几何对象的 JSON 编解码、结果文件写出与点云 CSV 导出
"""

import csv
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

from .logger import logger_manager
from ..core.algebra import DualQuaternion, Quaternion
from ..core.cyclide import Cyclide, QuadricForm
from ..core.moebius import EuclideanCircle, EuclideanLine, EuclideanView
from ..core.orbit import BilinearMotion, BiquadraticMap
from ..core.picard import CensusTable, DivisorClass
from ..core.quatfactor import BilinearQuatPoly, FactorizationCertificate
from ..core.study import LineKind, StudyLine
from ..utils.linalg import Scalar

Encoded = Union[int, float, str]

POINT_COLUMNS = ["x0", "x1", "x2", "x3", "x4", "vx", "vy", "vz"]


class ExportError(ValueError):
    """输入文件格式错误"""


def encode_scalar(value: Scalar) -> Encoded:
    """
    标量编码：整数原样，有理数为 "num/den" 字符串，浮点数为 JSON 数值

    Args:
        value: 标量

    Returns:
        可写入 JSON 的值
    """
    # bool 是 int 的子类，必须先排除
    if isinstance(value, bool):
        raise ExportError(f"布尔值不是标量: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return f"{value.numerator}/{value.denominator}"
    return float(value)


def decode_scalar(value: Any) -> Scalar:
    """
    标量解码

    Raises:
        ExportError: 无法识别的值
    """
    if isinstance(value, bool):
        raise ExportError(f"布尔值不是标量: {value!r}")
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, str):
        try:
            result = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ExportError(f"无法解析的有理数: {value!r}")
        return result.numerator if result.denominator == 1 else result
    raise ExportError(f"无法解析的标量: {value!r}")


def encode_vector(values: Iterable[Scalar]) -> List[Encoded]:
    return [encode_scalar(v) for v in values]


def decode_vector(values: Any, length: Optional[int] = None) -> List[Scalar]:
    if not isinstance(values, list):
        raise ExportError(f"需要数组，收到 {type(values).__name__}")
    if length is not None and len(values) != length:
        raise ExportError(f"数组长度应为 {length}，收到 {len(values)}")
    return [decode_scalar(v) for v in values]


def encode_quaternion(q: Quaternion) -> List[Encoded]:
    """四元数编码为 [w, x, y, z]"""
    return encode_vector(q.coords)


def decode_quaternion(data: Any) -> Quaternion:
    return Quaternion(*decode_vector(data, 4))


def encode_dual_quaternion(h: DualQuaternion) -> Dict[str, Any]:
    return {"p": encode_quaternion(h.p), "q": encode_quaternion(h.q)}


def decode_dual_quaternion(data: Any) -> DualQuaternion:
    if not isinstance(data, dict) or set(data) != {"p", "q"}:
        raise ExportError("对偶四元数需要 p 与 q 两个字段")
    return DualQuaternion(decode_quaternion(data["p"]), decode_quaternion(data["q"]))


def encode_line(line: StudyLine) -> Dict[str, Any]:
    kind = line.kind or LineKind.DEGENERATE
    return {"g1": encode_dual_quaternion(line.g1), "g2": encode_dual_quaternion(line.g2),
            "kind": kind.value}


def encode_euclidean_view(view: EuclideanView) -> Dict[str, Any]:
    if isinstance(view, EuclideanLine):
        return {"line": {"point": list(view.point), "dir": list(view.direction)}}
    if isinstance(view, EuclideanCircle):
        return {"center": list(view.center), "normal": list(view.normal),
                "radius": view.radius}
    raise ExportError(f"未知的欧氏视图类型: {type(view).__name__}")


def encode_motion(motion: BilinearMotion) -> Dict[str, Any]:
    """双线性运动编码，系数顺序 a₀₀, a₀₁, a₁₀, a₁₁"""
    return {"a": [encode_quaternion(q) for q in motion.a],
            "b": [encode_quaternion(q) for q in motion.b]}


def decode_motion(data: Any) -> BilinearMotion:
    """
    解码双线性运动（不做不变量检查，由调用方 validate）

    Raises:
        ExportError: 字段缺失或长度不符
    """
    if not isinstance(data, dict) or "a" not in data or "b" not in data:
        raise ExportError("运动文件需要 a 与 b 两个字段")
    a, b = data["a"], data["b"]
    if not isinstance(a, list) or not isinstance(b, list) or len(a) != 4 or len(b) != 4:
        raise ExportError("a 与 b 各需要4个四元数")
    return BilinearMotion(tuple(decode_quaternion(q) for q in a),
                          tuple(decode_quaternion(q) for q in b))


def encode_biquadratic(X: BiquadraticMap) -> Dict[str, Any]:
    return {"X": [[encode_vector(row) for row in g] for g in X.X]}


def decode_biquadratic(data: Any) -> BiquadraticMap:
    if not isinstance(data, dict) or not isinstance(data.get("X"), list) or len(data["X"]) != 5:
        raise ExportError("双二次映射需要5个系数网格")
    grids = []
    for g in data["X"]:
        if not isinstance(g, list) or len(g) != 3:
            raise ExportError("系数网格必须为 3×3")
        grids.append(tuple(tuple(decode_vector(row, 3)) for row in g))
    return BiquadraticMap(tuple(grids))


def encode_quadric(form: QuadricForm) -> List[List[Encoded]]:
    """对称 5×5 矩阵，按行存储"""
    return [encode_vector(row) for row in form.matrix]


def encode_cyclide(cyclide: Cyclide) -> Dict[str, Any]:
    certificate = {k: encode_scalar(v) if isinstance(v, (int, float, Fraction)) else v
                   for k, v in cyclide.certificate.items()}
    return {"param": encode_biquadratic(cyclide.param),
            "pencil": [encode_quadric(f) for f in cyclide.pencil],
            "certificate": certificate}


def encode_quat_poly(poly: BilinearQuatPoly) -> List[List[Encoded]]:
    return [encode_quaternion(q) for q in poly.coeffs]


def encode_factorization(A: BilinearQuatPoly, B: BilinearQuatPoly,
                         certificate: FactorizationCertificate) -> Dict[str, Any]:
    return {"A": encode_quat_poly(A), "B": encode_quat_poly(B),
            "certificate": certificate.to_dict()}


def decode_subset(data: Any) -> List[DivisorClass]:
    """
    解码除子类子集：6 个整数组成的数组列表

    Raises:
        ExportError: 格式错误
    """
    if isinstance(data, dict):
        data = data.get("classes")
    if not isinstance(data, list):
        raise ExportError("子集文件需要除子类数组")
    classes = []
    for item in data:
        if not isinstance(item, list) or len(item) != 6 \
                or not all(isinstance(c, int) and not isinstance(c, bool) for c in item):
            raise ExportError(f"除子类需要6个整数: {item!r}")
        classes.append(DivisorClass(tuple(item)))
    return classes


def encode_census(table: CensusTable) -> Dict[str, Any]:
    return table.to_dict()


def encode_points(rows: Sequence[Sequence[float]], residual: float) -> Dict[str, Any]:
    """
    点云 JSON：N×5 齐次坐标与 N×3 欧氏坐标分列存放，与 CSV 的行一一对应

    Raises:
        ExportError: 行的列数不是 8
    """
    for row in rows:
        if len(row) != len(POINT_COLUMNS):
            raise ExportError(f"点云行需要 {len(POINT_COLUMNS)} 列，收到 {len(row)} 列")
    return {"homogeneous": [[float(c) for c in row[:5]] for row in rows],
            "euclidean": [[float(c) for c in row[5:]] for row in rows],
            "count": len(rows),
            "residual": float(residual)}


def dumps(payload: Any) -> str:
    """确定性的 JSON 文本：键排序、固定缩进、末尾换行"""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_json(path: Union[str, Path]) -> Any:
    """
    读取 JSON 文件

    Raises:
        ExportError: 文件不存在或不是合法 JSON
    """
    path = Path(path)
    if not path.exists():
        raise ExportError(f"输入文件不存在: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as file:
            return json.load(file)
    except json.JSONDecodeError as e:
        raise ExportError(f"JSON 解析失败 {path}: {e}")


class ResultExporter:
    """结果写出器：在输出目录下写 JSON 与 CSV 文件"""

    def __init__(self, out_dir: Optional[Union[str, Path]] = None):
        """
        Args:
            out_dir: 输出目录，None 表示只返回文本不落盘
        """
        self.out_dir = Path(out_dir) if out_dir is not None else None

    def _target(self, name: str) -> Optional[Path]:
        if self.out_dir is None:
            return None
        self.out_dir.mkdir(parents=True, exist_ok=True)
        return self.out_dir / name

    def write_json(self, name: str, payload: Any) -> str:
        """
        写出 JSON 文件

        Args:
            name: 文件名（如 motion.json）
            payload: 可序列化对象

        Returns:
            写出的文本
        """
        text = dumps(payload)
        target = self._target(name)
        if target is not None:
            with open(target, 'w', encoding='utf-8', newline='\n') as file:
                file.write(text)
            logger_manager.info(f"结果已写出: {target}")
        return text

    def write_points(self, name: str, rows: Sequence[Sequence[float]]) -> Optional[Path]:
        """
        写出点云 CSV，列为 x0..x4, vx, vy, vz

        Args:
            name: 文件名（如 points.csv）
            rows: 每行 8 个浮点数
        """
        target = self._target(name)
        if target is None:
            return None
        with open(target, 'w', encoding='utf-8', newline='') as file:
            writer = csv.writer(file, lineterminator='\n')
            writer.writerow(POINT_COLUMNS)
            for row in rows:
                if len(row) != len(POINT_COLUMNS):
                    raise ExportError(f"点云行需要 {len(POINT_COLUMNS)} 列，收到 {len(row)} 列")
                    # repr 保留全部有效数字
            writer.writerow([repr(float(c)) for c in row])
        logger_manager.info(f"点云已写出: {target} ({len(rows)} 个点)")
        return target
