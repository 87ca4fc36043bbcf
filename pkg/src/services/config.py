"""
配置管理服务
负责配置文件的解析、验证和管理，以及命令行运行配置的合成
"""

import yaml
from dataclasses import dataclass, field, replace
from typing import Dict, Any, Optional
from pathlib import Path

# 项目根目录，保证从任意工作目录导入时都能找到默认配置
PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "config" / "config.yaml"


class ConfigManager:
    """配置管理器"""

    def __init__(self, config_path: str = str(DEFAULT_CONFIG_PATH)):
        """
        初始化配置管理器

        Args:
            config_path: 配置文件路径
        """
        self.config_path = Path(config_path)
        self._config: Optional[Dict[str, Any]] = None
        self.load_config()

    def load_config(self) -> None:
        """
        加载配置文件

        Raises:
            FileNotFoundError: 配置文件不存在
            yaml.YAMLError: 配置文件格式错误
            ValueError: 配置验证失败
        """
        if not self.config_path.exists():
            raise FileNotFoundError(f"配置文件不存在: {self.config_path}")

        try:
            with open(self.config_path, 'r', encoding='utf-8') as file:
                self._config = yaml.safe_load(file)
        except yaml.YAMLError as e:
            raise yaml.YAMLError(f"配置文件解析失败: {e}")

        self._validate_config()

    def _validate_config(self) -> None:
        """
        验证配置文件的完整性和正确性

        Raises:
            ValueError: 配置验证失败
        """
        if not self._config:
            raise ValueError("配置文件为空")

        required_sections = ['tolerance', 'sampling', 'factor', 'logging']
        for section in required_sections:
            if section not in self._config:
                raise ValueError(f"缺少必需的配置节: {section}")

        for key, value in self._config['tolerance'].items():
            if not isinstance(value, (int, float)) or value <= 0:
                raise ValueError(f"容差必须为正数: tolerance.{key}={value}")

        if self._config['sampling'].get('implicitize', 40) < 40:
            raise ValueError("隐式化采样点数量不能少于40")

    def get(self, key: str, default: Any = None) -> Any:
        """
        获取配置值，支持点号分隔的嵌套键

        Args:
            key: 配置键，支持 'section.subsection.key' 格式
            default: 默认值

        Returns:
            配置值
        """
        if not self._config:
            return default

        keys = key.split('.')
        value = self._config

        try:
            for k in keys:
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def get_tolerance_config(self) -> Dict[str, Any]:
        """获取容差配置"""
        return self.get('tolerance', {})

    def get_sampling_config(self) -> Dict[str, Any]:
        """获取采样配置"""
        return self.get('sampling', {})

    def get_factor_config(self) -> Dict[str, Any]:
        """获取分解求解器配置"""
        return self.get('factor', {})

    def get_runner_config(self) -> Dict[str, Any]:
        """获取批量执行配置"""
        return self.get('runner', {})

    def get_logging_config(self) -> Dict[str, Any]:
        """获取日志配置"""
        return self.get('logging', {})

    def tolerance(self, name: str) -> float:
        """
        获取指定名称的容差

        Args:
            name: 容差名称 (zero, rank, point, residual, subspace)

        Returns:
            容差值
        """
        defaults = {'zero': 1e-9, 'rank': 1e-8, 'point': 1e-7,
                    'residual': 1e-9, 'subspace': 1e-7}
        return float(self.get(f'tolerance.{name}', defaults.get(name, 1e-9)))

    def apply_tolerances(self, overrides: Dict[str, float]) -> None:
        """
        用命令行覆盖项更新容差配置

        Args:
            overrides: {容差名称: 数值}

        Raises:
            ValueError: 容差非正
        """
        for key, value in overrides.items():
            if value <= 0:
                raise ValueError(f"容差必须为正数: tolerance.{key}={value}")
            self._config.setdefault('tolerance', {})[key] = float(value)


@dataclass(frozen=True)
class RunConfig:
    """
    单次命令运行配置

    由配置文件默认值与命令行参数合成，固定 seed 时输出逐字节一致。
    """
    scalar: str = "exact"
    seed: int = 20240501
    samples: int = 40
    export_samples: int = 400
    restarts: int = 50
    tolerances: Dict[str, float] = field(default_factory=dict)
    out: Optional[Path] = None

    def __post_init__(self):
        if self.scalar not in ("exact", "float"):
            raise ValueError(f"未知的标量模式: {self.scalar}")
        for key, value in self.tolerances.items():
            if value <= 0:
                raise ValueError(f"容差必须为正数: {key}={value}")
        if self.samples < 40:
            raise ValueError("隐式化采样点数量不能少于40")
        if self.restarts < 1:
            raise ValueError("重启次数至少为1")

    @classmethod
    def from_config(cls, manager: ConfigManager, **overrides: Any) -> "RunConfig":
        """
        从配置管理器构建运行配置，再应用命令行覆盖项

        Args:
            manager: 配置管理器
            **overrides: 非 None 的覆盖值

        Returns:
            运行配置
        """
        sampling = manager.get_sampling_config()
        base = cls(
            seed=int(sampling.get('seed', 20240501)),
            samples=int(sampling.get('implicitize', 40)),
            export_samples=int(sampling.get('export', 400)),
            restarts=int(manager.get_factor_config().get('restarts', 50)),
            tolerances=dict(manager.get_tolerance_config()),
        )
        changes = {k: v for k, v in overrides.items() if v is not None}
        return replace(base, **changes)


# 全局配置管理器实例
config_manager = ConfigManager()
