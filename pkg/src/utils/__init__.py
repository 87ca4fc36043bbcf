"""
工具模块
包含精确/浮点线性代数、双线性与双二次多项式网格以及批量执行器
"""
