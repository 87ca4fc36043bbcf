"""
核心几何模块
包含四元数代数、Study 二次曲面、Möbius 二次曲面、轨道映射、环面隐式化、
直纹二次曲面重建、四元数分解与 Picard 格统计
"""
