"""
Study2Darboux - Study 二次曲面中的直纹二次曲面与 Darboux 环面的对应计算
"""

__version__ = "1.0.0"
__author__ = "Study2Darboux Team"
