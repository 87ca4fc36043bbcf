"""
Picard 格
四次弱 del Pezzo 曲面的秩 6 格 ⟨α₀,…,α₅⟩、二次曲线类、−2κ 的分解与配对统计
"""

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidDivisorClassError
from ..services.logger import logger_manager

RANK = 6
SEARCH_BOX = 3


@dataclass(frozen=True, order=True)
class DivisorClass:
    """格中的除子类，坐标 (a₀, …, a₅)"""

    coeffs: Tuple[int, int, int, int, int, int]

    def __post_init__(self):
        if len(self.coeffs) != RANK:
            raise InvalidDivisorClassError(f"除子类需要 {RANK} 个坐标，收到 {len(self.coeffs)} 个")
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in self.coeffs):
            raise InvalidDivisorClassError(f"除子类坐标必须为整数: {self.coeffs}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, k: int) -> "DivisorClass":
        return DivisorClass(tuple(k * a for a in self.coeffs))

    def shape(self) -> Optional[str]:
        """
        二次曲线类的形状

        Returns:
            "line"（α₀−αᵢ）、"conic"（2α₀+αᵢ−α₁−…−α₅）或 None
        """
        a0, rest = self.coeffs[0], self.coeffs[1:]
        if a0 == 1 and sorted(rest) == [-1, 0, 0, 0, 0]:
            return "line"
        if a0 == 2 and sorted(rest) == [-1, -1, -1, -1, 0]:
            return "conic"
        return None

    def index(self) -> int:
        """形状中特殊下标 i（α₀−αᵢ 中的 i 或 2α₀+αᵢ−Σ 中系数为 0 的 i）"""
        rest = self.coeffs[1:]
        marker = -1 if self.shape() == "line" else 0
        return rest.index(marker) + 1

    def to_list(self) -> List[int]:
        return list(self.coeffs)


MINUS_KAPPA = DivisorClass((3, -1, -1, -1, -1, -1))


def pair(c: DivisorClass, d: DivisorClass) -> int:
    """相交配对 a₀b₀ − Σ aᵢbᵢ"""
    return c.coeffs[0] * d.coeffs[0] - sum(a * b for a, b in zip(c.coeffs[1:], d.coeffs[1:]))


def conic_classes(box: int = SEARCH_BOX) -> List[DivisorClass]:
    """
    在 |系数| ≤ box 中枚举全部满足 c·c = 0、c·(−κ) = 2 的类

    Returns:
        按字典序排列的二次曲线类
    """
    found = []
    for coeffs in itertools.product(range(-box, box + 1), repeat=RANK):
        c = DivisorClass(coeffs)
        # 自交为 0、次数为 2
        if pair(c, c) == 0 and pair(c, MINUS_KAPPA) == 2:
            found.append(c)
    logger_manager.debug(f"搜索范围 ±{box} 内找到 {len(found)} 个二次曲线类")
    return sorted(found)


def box_is_sufficient(classes: Iterable[DivisorClass], box: int = SEARCH_BOX) -> bool:
    """没有解落在搜索范围的边界上"""
    return all(max(abs(a) for a in c.coeffs) < box for c in classes)


def decompositions_of_minus_2kappa(
        classes: Optional[Sequence[DivisorClass]] = None) -> List[Tuple[DivisorClass, ...]]:
    """
    把 −2κ 写成 4 个二次曲线类之和的全部多重集

    Returns:
        按字典序排列的 4 元组（元组内部有序）
    """
    classes = sorted(classes if classes is not None else conic_classes())
    target = MINUS_KAPPA.scale(2)
    # 可重复组合保证多重集只出现一次
    result = []
    for combo in itertools.combinations_with_replacement(classes, 4):
        total = combo[0] + combo[1] + combo[2] + combo[3]
        if total == target:
            result.append(combo)
    logger_manager.debug(f"−2κ 的分解共 {len(result)} 个")
    return result


def has_cospherical_pair(combo: Sequence[DivisorClass]) -> bool:
    """多重集中是否有两个类配对为 2"""
    return any(pair(c, d) == 2 for c, d in itertools.combinations(combo, 2))


def matched_shape(combo: Sequence[DivisorClass]) -> bool:
    """
    分解是否具有 {α₀−αᵢ, 2α₀+αᵢ−Σ, α₀−αⱼ, 2α₀+αⱼ−Σ} 的形状
    """
    lines = sorted(c.index() for c in combo if c.shape() == "line")
    conics = sorted(c.index() for c in combo if c.shape() == "conic")
    return len(lines) == 2 and lines == conics


@dataclass(frozen=True)
class CensusTable:
    """配对统计：每个无序对的配对值与各值的计数"""

    pairs: Tuple[Tuple[DivisorClass, DivisorClass, int], ...]
    summary: Dict[int, int]

    def to_dict(self) -> Dict:
        return {
            "pairs": [{"c": c.to_list(), "d": d.to_list(), "value": v} for c, d, v in self.pairs],
            "summary": {str(k): self.summary[k] for k in sorted(self.summary)},
        }


def pair_product_census(classes: Iterable[DivisorClass]) -> CensusTable:
    """
    子集中全部无序对的配对值统计

    Raises:
        InvalidDivisorClassError: 子集不在二次曲线类集合中
    """
    classes = sorted(set(classes))
    valid = set(conic_classes())
    invalid = [c.coeffs for c in classes if c not in valid]
    if invalid:
        raise InvalidDivisorClassError(f"以下类不是二次曲线类: {invalid}")
    pairs = tuple((c, d, pair(c, d)) for c, d in itertools.combinations(classes, 2))
    # 键按配对值，to_dict 时转为字符串
    summary = dict(Counter(v for _, _, v in pairs))
    logger_manager.info(f"配对统计: {len(pairs)} 对, 分布 {summary}")
    return CensusTable(pairs, summary)


def matched_subset(indices: Sequence[int] = (1, 2, 3)) -> List[DivisorClass]:
    """由下标 i 给出的 α₀−αᵢ 与 2α₀+αᵢ−Σ 组成的子集"""
    subset = []
    for i in indices:
        line = [0] * RANK
        line[0], line[i] = 1, -1
        conic = [2, -1, -1, -1, -1, -1]
        # 二次曲线类在下标 i 处的系数为 0
        conic[i] = 0
        subset.extend([DivisorClass(tuple(line)), DivisorClass(tuple(conic))])
    return subset
