"""
配置管理模块
集中管理所有配置参数
"""
import logging
from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field, field_validator
from dotenv import load_dotenv

# 加载环境变量
load_dotenv()

class Settings(BaseSettings):
    """应用配置"""

    model_config = SettingsConfigDict(env_file=".env", env_prefix="BWSOS_", extra="ignore")

    # 求解器配置
    tol: float = Field(
        default=1e-8,
        gt=0,
        le=1e-2,
        description="SDP求解器的可行性/对偶间隙容差"
    )

    maxit: int = Field(
        default=100,
        ge=1,
        le=10000,
        description="SDP求解器最大迭代次数"
    )

    max_denominator: int = Field(
        default=64,
        ge=1,
        description="有理化时允许的最大分母"
    )

    # 精确计算上限
    charpoly_max_order: int = Field(
        default=24,
        ge=1,
        description="精确特征多项式允许的最大阶数"
    )

    solver_max_order: int = Field(
        default=700,
        ge=1,
        description="浮点求解器允许的最大矩阵阶数"
    )

    max_constraints: int = Field(
        default=2500,
        ge=1,
        description="约束数超过该值时只保留与C相关的约束子集"
    )

    constraint_margin: int = Field(
        default=200,
        ge=0,
        description="约束子集之外额外加入的四元组数量"
    )

    general_max_n: int = Field(
        default=5,
        ge=2,
        description="一般矩阵类的精确计算阶数上限"
    )

    general_big_max_n: int = Field(
        default=7,
        ge=2,
        description="使用--big时一般矩阵类的阶数上限"
    )

    structured_max_n: int = Field(
        default=8,
        ge=2,
        description="结构化矩阵类的阶数上限"
    )

    toeplitz_max_n: int = Field(
        default=20,
        ge=3,
        description="Toeplitz块分析的阶数上限"
    )

    # 日志配置
    log_level: str = Field(
        default="INFO",
        description="日志级别"
    )

    log_file: str = Field(
        default="bwsos.log",
        description="日志文件路径"
    )

    @field_validator("log_level")
    @classmethod
    def check_log_level(cls, value: str) -> str:
        """日志级别统一大写，且必须是 logging 认识的级别"""
        level = value.strip().upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"未知的日志级别: {value}")
        return level


@lru_cache()
def get_settings() -> Settings:
    """获取配置实例"""
    return Settings()


# 全局配置实例
settings = get_settings()
