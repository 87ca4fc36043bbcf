"""
应用服务层
包含配置管理、日志记录、结果导出等服务
"""
