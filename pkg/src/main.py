"""
Study2Darboux 主程序
Study 二次曲面中的直纹二次曲面与 Darboux 环面之间的对应：生成、验证与导出
"""

import sys
import argparse
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from src import __version__
from src.core.cyclide import (CircleFamily, FamilyKind, family_intersection, implicitize,
                              sample_surface)
from src.core.errors import (DegenerateConfigurationError, GeometryError,
                             InvalidDivisorClassError, PipelineStageError)
from src.core.orbit import orbit_of_quadric
from src.core.picard import (box_is_sufficient, conic_classes, decompositions_of_minus_2kappa,
                             has_cospherical_pair, matched_shape, pair_product_census)
from src.core.quatfactor import factor, to_motion
from src.core.reconstruct import random_motion, roundtrip_theorem
from src.services.config import RunConfig, config_manager
from src.services.export import (ExportError, ResultExporter, decode_motion, decode_subset,
                                 encode_biquadratic, encode_census, encode_cyclide,
                                 encode_factorization, encode_motion, encode_points,
                                 read_json)
from src.services.logger import logger_manager
from src.utils.runner import BatchRunner

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_GENERATION = 2
EXIT_STAGE = 3
EXIT_BAD_INPUT = 4

PIPELINE_STAGES = ("orbit", "implicitize", "families", "reconstruct", "factor")
FLOAT_TOLERANCES = ("zero", "rank", "point", "residual", "subspace")


class Study2Darboux:
    """Study2Darboux 主应用类"""

    def __init__(self, run_config: RunConfig, probe: int = 0):
        """
        初始化应用

        Args:
            run_config: 运行配置
            probe: 三直线构造中 h 的探测起点
        """
        self.config = run_config
        self.probe = probe
        self.exporter = ResultExporter(run_config.out)
        if run_config.tolerances:
            config_manager.apply_tolerances(run_config.tolerances)

    def _stage(self, name: str, func: Callable[..., Any], *args, **kwargs) -> Any:
        """执行一个流水线阶段，几何失败包装为 PipelineStageError"""
        logger_manager.log_stage_start(name)
        try:
            result = func(*args, **kwargs)
        except ValueError as e:
            # GeometryError 以及线性代数中的退化（零向量、无解方程组）
            logger_manager.log_stage_failed(name, f"{type(e).__name__}: {e}")
            raise PipelineStageError(name, e)
        logger_manager.log_stage_done(name)
        return result

    def gen(self, constraint: Optional[str] = None) -> str:
        """
        生成随机双线性运动并写出 motion.json

        Raises:
            DegenerateMotionError: 重试后仍无法满足约束
        """
        motion = random_motion(self.config.seed, constraint, self.config.scalar)
        motion.validate()
        return self.exporter.write_json("motion.json", encode_motion(motion))

    def pipeline(self, motion_file: str) -> str:
        """
        端到端流水线：轨道 → 隐式化 → 圆族 → 重建 → 分解 → 报告

        Raises:
            ExportError: 运动文件格式错误
            PipelineStageError: 某一阶段失败
        """
        motion = decode_motion(read_json(motion_file))
        if self.config.scalar == "float":
            motion = motion.to_float()

        def orbit_stage():
            motion.validate()
            return orbit_of_quadric(motion)

        X = self._stage("orbit", orbit_stage)
        cyclide = self._stage("implicitize", implicitize, X, self.config.samples, self.config.seed)

        def families_stage():
            count = family_intersection(CircleFamily(FamilyKind.S, cyclide),
                                        CircleFamily(FamilyKind.T, cyclide))
            if count != 1:
                raise DegenerateConfigurationError(f"F·F′ = {count}，不是1")
            return count

        count = self._stage("families", families_stage)
        report = self._stage("reconstruct", roundtrip_theorem, motion, self.probe,
                             cyclide=cyclide)

        def factor_stage():
            result = factor(X, seed=self.config.seed, restarts=self.config.restarts)
            # 分解必须回到同一个二次型束
            to_motion(result.A, result.B, cyclide=cyclide)
            return result

        solved = self._stage("factor", factor_stage)
        rows, residual = sample_surface(cyclide, self.config.export_samples, self.config.seed)
        self.exporter.write_points("points.csv", rows)
        self.exporter.write_json("points.json", encode_points(rows, residual))
        self.exporter.write_json("cyclide.json", encode_cyclide(cyclide))

        factorization = encode_factorization(solved.A, solved.B, solved.certificate)
        factorization["restart"] = solved.restart
        payload: Dict[str, Any] = {
            "stages": list(PIPELINE_STAGES),
            "motion": encode_motion(motion),
            "orbit": encode_biquadratic(X),
            "families": {"count": count},
            "reconstruct": report.to_dict(),
            "factor": factorization,
            "points": {"count": len(rows), "residual": residual},
            "roundtrip": "pass" if report.passed else "fail",
        }
        return self.exporter.write_json("report.json", payload)

    def lattice(self, subset_file: Optional[str] = None) -> str:
        """
        Picard 格统计：全部二次曲线类或给定子集

        Raises:
            ExportError: 子集文件格式错误
            InvalidDivisorClassError: 子集不在二次曲线类集合中
        """
        classes = conic_classes()
        subset = decode_subset(read_json(subset_file)) if subset_file else classes
        census = pair_product_census(subset)
        decompositions = decompositions_of_minus_2kappa(classes)
        payload = encode_census(census)
        payload["classes"] = [c.to_list() for c in classes]
        payload["decompositions"] = {
            "count": len(decompositions),
            "all_matched_shape": all(matched_shape(d) for d in decompositions),
            "all_have_pair_2": all(has_cospherical_pair(d) for d in decompositions),
            "box_sufficient": box_is_sufficient(classes),
        }
        return self.exporter.write_json("census.json", payload)

    def batch(self, count: int) -> Tuple[str, bool]:
        """
        对连续种子批量运行往返验证

        Returns:
            (批量报告文本, 是否全部通过)
        """
        seeds = [self.config.seed + k for k in range(count)]
        scalar = self.config.scalar

        def one(seed: int) -> Dict[str, Any]:
            motion = random_motion(seed, scalar=scalar)
            report = roundtrip_theorem(motion, self.probe, self.config.samples, seed)
            return report.to_dict()

        results = BatchRunner().map(one, seeds)
        items = []
        for seed, item in zip(seeds, results):
            entry = item.to_dict()
            entry["seed"] = seed
            # 失败项没有 value
            entry["roundtrip"] = item.value["roundtrip"] if item.ok else "fail"
            items.append(entry)
        passed = sum(e["roundtrip"] == "pass" for e in items)
        text = self.exporter.write_json("batch.json",
                                        {"items": items, "passed": passed, "total": len(items)})
        return text, passed == len(items)


def _parse_tolerances(values: Optional[List[str]]) -> Dict[str, float]:
    """
    解析 --tol：单个数值覆盖全部浮点容差，name=value 只覆盖指定项

    Raises:
        ValueError: 格式错误或容差非正
    """
    overrides: Dict[str, float] = {}
    for item in values or []:
        if "=" in item:
            name, _, raw = item.partition("=")
            if name not in FLOAT_TOLERANCES:
                raise ValueError(f"未知的容差名称: {name}")
            overrides[name] = float(raw)
        else:
            value = float(item)
            overrides.update({name: value for name in FLOAT_TOLERANCES})
    for name, value in overrides.items():
        if value <= 0:
            raise ValueError(f"容差必须为正数: {name}={value}")
    return overrides


def build_parser() -> argparse.ArgumentParser:
    """构建命令行解析器"""
    parser = argparse.ArgumentParser(
        description='Study2Darboux - Study 二次曲面直纹曲面与 Darboux 环面对应计算')
    parser.add_argument('--config', '-c', default=None,
                        help='配置文件路径 (默认: config/config.yaml)')
    parser.add_argument('--seed', type=int, default=None, help='随机种子')
    parser.add_argument('--scalar', choices=['exact', 'float'], default=None,
                        help='标量模式 (默认: exact)')
    parser.add_argument('--tol', action='append', default=None,
                        help='容差覆盖：数值或 name=value，可重复')
    parser.add_argument('--samples', type=int, default=None, help='隐式化采样点数量')
    parser.add_argument('--out', default=None, help='输出目录')
    parser.add_argument('--restarts', type=int, default=None, help='分解求解器重启次数')
    parser.add_argument('--probe', type=int, default=0, help='三直线构造的探测起点')
    parser.add_argument('--version', action='version', version=f'Study2Darboux {__version__}')

    sub = parser.add_subparsers(dest='command', required=True)
    gen = sub.add_parser('gen', help='生成随机双线性运动')
    gen.add_argument('--constraint', choices=['generic', 'rotations-only'], default=None,
                     help='运动约束')
    pipeline = sub.add_parser('pipeline', help='端到端流水线')
    pipeline.add_argument('motion_file', help='运动 JSON 文件')
    lattice = sub.add_parser('lattice', help='Picard 格配对统计')
    lattice.add_argument('subset_file', nargs='?', default=None, help='除子类子集 JSON 文件')
    batch = sub.add_parser('batch', help='批量往返验证')
    batch.add_argument('--count', type=int, default=20, help='种子数量')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    主函数

    Returns:
        退出码：0 成功，1 配置错误，2 生成失败，3 流水线阶段失败，4 输入错误
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.config:
            config_manager.config_path = Path(args.config)
            config_manager.load_config()
        run_config = RunConfig.from_config(
            config_manager, scalar=args.scalar, seed=args.seed, samples=args.samples,
            restarts=args.restarts, tolerances=_parse_tolerances(args.tol) or None,
            out=Path(args.out) if args.out else None)
    except (OSError, ValueError) as e:
        print(f"配置加载失败: {e}", file=sys.stderr)
        return EXIT_CONFIG

    logger_manager.log_system_start()
    app = Study2Darboux(run_config, probe=args.probe)
    code = EXIT_OK
    try:
        if args.command == 'gen':
            try:
                text = app.gen(args.constraint)
            except GeometryError as e:
                logger_manager.error(f"运动生成失败: {e}")
                print(f"运动生成失败: {e}", file=sys.stderr)
                return EXIT_GENERATION
            sys.stdout.write(text)
        elif args.command == 'pipeline':
            try:
                text = app.pipeline(args.motion_file)
            except PipelineStageError as e:
                print(f"流水线失败，阶段: {e.stage} ({type(e.cause).__name__}: {e.cause})",
                      file=sys.stderr)
                return EXIT_STAGE
            sys.stdout.write(text)
        elif args.command == 'lattice':
            try:
                text = app.lattice(args.subset_file)
            except InvalidDivisorClassError as e:
                print(f"子集不合法: {e}", file=sys.stderr)
                return EXIT_BAD_INPUT
            sys.stdout.write(text)
        elif args.command == 'batch':
            text, passed = app.batch(args.count)
            sys.stdout.write(text)
            code = EXIT_OK if passed else EXIT_STAGE
    except ExportError as e:
        logger_manager.error(f"输入文件错误: {e}")
        print(f"输入文件错误: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    finally:
        logger_manager.log_system_stop()
    return code


if __name__ == '__main__':
    sys.exit(main())
