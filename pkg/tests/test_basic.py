"""
基础功能测试：配置、日志与批量执行
"""

import logging
import sys
import pytest
from pathlib import Path
from unittest.mock import patch, MagicMock

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.errors import DegenerateMotionError
from src.services.config import ConfigManager, RunConfig, DEFAULT_CONFIG_PATH, config_manager
from src.services.logger import logger_manager
from src.utils.runner import BatchItem, BatchRunner, host_info

MINIMAL_CONFIG = """
tolerance:
  zero: 1.0e-9
sampling:
  seed: 7
  implicitize: 60
factor:
  restarts: 5
logging:
  level: "INFO"
"""


def _write_config(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "config.yaml"
    path.write_text(text, encoding="utf-8")
    return path


class TestConfigManager:
    """配置管理器测试"""

    def test_default_config(self):
        """测试默认配置文件"""
        config_manager = ConfigManager(str(DEFAULT_CONFIG_PATH))

        assert config_manager.get('sampling.seed') == 20240501
        assert config_manager.get('sampling.implicitize') >= 40
        assert config_manager.tolerance('rank') == 1e-8

    def test_nested_get_default(self):
        """测试缺失键返回默认值"""
        config_manager = ConfigManager(str(DEFAULT_CONFIG_PATH))

        assert config_manager.get('sampling.missing', 3) == 3
        assert config_manager.get('tolerance.zero.deeper', 'x') == 'x'

    def test_missing_file(self, tmp_path):
        """测试配置文件不存在"""
        with pytest.raises(FileNotFoundError):
            ConfigManager(str(tmp_path / "absent.yaml"))

    def test_missing_section(self, tmp_path):
        """测试缺少必需配置节"""
        path = _write_config(tmp_path, "tolerance:\n  zero: 1.0e-9\n")
        with pytest.raises(ValueError):
            ConfigManager(str(path))

    def test_non_positive_tolerance(self, tmp_path):
        """测试容差必须为正"""
        path = _write_config(tmp_path, MINIMAL_CONFIG.replace("zero: 1.0e-9", "zero: 0"))
        with pytest.raises(ValueError):
            ConfigManager(str(path))

    def test_too_few_samples(self, tmp_path):
        """测试隐式化采样点下限"""
        path = _write_config(tmp_path, MINIMAL_CONFIG.replace("implicitize: 60",
                                                              "implicitize: 10"))
        with pytest.raises(ValueError):
            ConfigManager(str(path))

    def test_apply_tolerances(self, tmp_path):
        """测试命令行容差覆盖"""
        config_manager = ConfigManager(str(_write_config(tmp_path, MINIMAL_CONFIG)))
        config_manager.apply_tolerances({'residual': 1e-6})

        assert config_manager.tolerance('residual') == 1e-6
        assert config_manager.tolerance('subspace') == 1e-7
        with pytest.raises(ValueError):
            config_manager.apply_tolerances({'zero': -1.0})


class TestRunConfig:
    """运行配置测试"""

    def test_from_config(self, tmp_path):
        """测试从配置文件构建并应用覆盖"""
        config_manager = ConfigManager(str(_write_config(tmp_path, MINIMAL_CONFIG)))
        run_config = RunConfig.from_config(config_manager, seed=11, scalar=None)

        assert run_config.seed == 11
        assert run_config.samples == 60
        assert run_config.restarts == 5
        assert run_config.scalar == "exact"
        assert run_config.tolerances['zero'] == 1e-9

    def test_export_samples(self, tmp_path):
        """测试点云采样数读取 sampling.export，缺省为 400"""
        text = MINIMAL_CONFIG.replace("  implicitize: 60\n", "  implicitize: 60\n  export: 120\n")
        manager = ConfigManager(str(_write_config(tmp_path, text)))

        assert RunConfig.from_config(manager).export_samples == 120
        assert RunConfig.from_config(manager, export_samples=50).export_samples == 50

        default_dir = tmp_path / "default"
        default_dir.mkdir()
        manager = ConfigManager(str(_write_config(default_dir, MINIMAL_CONFIG)))
        assert RunConfig.from_config(manager).export_samples == 400

    def test_invalid_scalar(self):
        """测试未知标量模式"""
        with pytest.raises(ValueError):
            RunConfig(scalar="decimal")

    def test_invalid_values(self):
        """测试非法采样数、重启数与容差"""
        with pytest.raises(ValueError):
            RunConfig(samples=39)
        with pytest.raises(ValueError):
            RunConfig(restarts=0)
        with pytest.raises(ValueError):
            RunConfig(tolerances={'zero': 0.0})


class TestLoggerManager:
    """日志管理器测试"""

    def test_logger_name(self):
        """测试 logger 名称"""
        assert logger_manager.get_logger().name == 'study2darboux'

    def test_stage_logging(self, caplog):
        """测试阶段日志"""
        with caplog.at_level(logging.INFO, logger='study2darboux'):
            logger_manager.log_stage_start('orbit')
            logger_manager.log_stage_failed('implicitize', 'NotACyclideError: 维数 14')

        assert "阶段开始 - orbit" in caplog.text
        assert "阶段失败 - implicitize" in caplog.text

    def test_certificate_logging(self, caplog):
        """测试证书日志为排序后的 JSON"""
        with caplog.at_level(logging.INFO, logger='study2darboux'):
            logger_manager.log_certificate('implicitize', {'residual': 0.0, 'pencil_dim': 2})

        assert '{"pencil_dim": 2, "residual": 0.0}' in caplog.text


class TestBatchRunner:
    """批量执行器测试"""

    def test_results_in_order(self):
        """测试结果按输入顺序返回"""
        runner = BatchRunner(workers=4)
        results = runner.map(lambda x: x * x, list(range(10)))

        assert [r.index for r in results] == list(range(10))
        assert [r.value for r in results] == [x * x for x in range(10)]
        assert all(r.ok for r in results)

    def test_geometry_error_captured(self):
        """测试几何失败被记录而不中断批量"""
        def task(x):
            if x == 2:
                raise DegenerateMotionError("退化")
            return x

        results = BatchRunner(workers=2).map(task, [1, 2, 3])

        assert [r.ok for r in results] == [True, False, True]
        assert results[1].error == "DegenerateMotionError: 退化"
        assert results[1].to_dict() == {"index": 1, "ok": False, "error": "DegenerateMotionError: 退化"}

    def test_value_error_captured(self):
        """测试线性代数退化（ValueError）同样被记录"""
        def task(x):
            if x == 1:
                raise ValueError("线性方程组无解")
            return x

        results = BatchRunner(workers=1).map(task, [0, 1])

        assert [r.ok for r in results] == [True, False]
        assert results[1].error == "ValueError: 线性方程组无解"

    def test_other_errors_propagate(self):
        """测试非几何异常直接抛出"""
        def task(x):
            raise KeyError(x)

        with pytest.raises(KeyError):
            BatchRunner(workers=1).map(task, [1])

    @patch('psutil.cpu_count')
    def test_auto_workers(self, mock_cpu_count):
        """测试 0 表示按CPU核心数确定线程数"""
        mock_cpu_count.return_value = 6

        assert BatchRunner(workers=0).workers == 6

    def test_workers_from_config(self):
        """测试未指定线程数时读取 runner.workers"""
        with patch.object(config_manager, 'get_runner_config', return_value={'workers': 3}):
            assert BatchRunner().workers == 3

    def test_negative_workers(self):
        """测试负的线程数"""
        with pytest.raises(ValueError):
            BatchRunner(workers=-1)

    @patch('psutil.virtual_memory')
    @patch('psutil.cpu_count')
    def test_host_info(self, mock_cpu_count, mock_memory):
        """测试主机信息"""
        mock_cpu_count.return_value = 8
        mock_memory.return_value = MagicMock(total=16 * 1024 ** 3, available=8 * 1024 ** 3)

        info = host_info()

        assert info['cpu_count'] == '8'
        assert info['memory_total'] == '16.00 GB'
        assert info['memory_available'] == '8.00 GB'

    def test_batch_item(self):
        """测试单个结果"""
        item = BatchItem(index=3, value={'roundtrip': 'pass'})

        assert item.ok
        assert item.to_dict() == {"index": 3, "ok": True, "error": None}
