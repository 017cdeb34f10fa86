"""
异常定义模块
所有可预期的错误都继承自 BWSOSError
"""
from typing import Any, Optional


class BWSOSError(Exception):
    """项目内所有错误的基类"""


class NonSymmetricInput(BWSOSError):
    """输入的矩阵条目不对称"""


class OrderTooLarge(BWSOSError):
    """矩阵阶数超过配置上限"""

    def __init__(self, order: int, bound: int):
        super().__init__(f"矩阵阶数 {order} 超过上限 {bound}")
        self.order = order
        self.bound = bound


class UnsupportedOrder(BWSOSError):
    """矩阵阶数 n 不受支持"""


class BadPair(BWSOSError):
    """候选变量下标对不满足 i < j"""


class BadQuadruple(BWSOSError):
    """四元组不严格递增或越界"""


class DimensionMismatch(BWSOSError):
    """维度不一致"""


class NotCertified(BWSOSError):
    """矩阵未通过半正定认证"""


class BadSize(BWSOSError):
    """块参数越界"""


class UnsatisfiableRange(BWSOSError):
    """求和族在给定阶数下为空"""


class CertificateFormatError(BWSOSError):
    """证书文本格式错误"""


class MaxIterations(BWSOSError):
    """求解器达到最大迭代次数，result 中保留最后的迭代结果"""

    def __init__(self, message: str, result: Optional[Any] = None):
        super().__init__(message)
        self.result = result


class ReportIOError(BWSOSError):
    """报告或证书文件读写失败"""
