"""
配置模块测试
"""
import pytest
from pydantic import ValidationError

from src.config.settings import Settings, get_settings, settings


class TestSettings:
    """配置测试"""

    def test_defaults(self):
        """测试默认值"""
        config = Settings(_env_file=None)
        assert config.max_denominator == 64
        assert config.general_max_n == 5
        assert get_settings() is settings

    def test_env_override(self, monkeypatch):
        """测试环境变量覆盖"""
        monkeypatch.setenv("BWSOS_TOL", "1e-6")
        monkeypatch.setenv("BWSOS_CHARPOLY_MAX_ORDER", "12")
        config = Settings(_env_file=None)
        assert config.tol == 1e-6
        assert config.charpoly_max_order == 12

    def test_validation(self, monkeypatch):
        """测试取值范围校验"""
        monkeypatch.setenv("BWSOS_TOL", "0.5")
        with pytest.raises(ValidationError):
            Settings(_env_file=None)

    def test_log_level_normalized(self, monkeypatch):
        """测试日志级别统一为大写"""
        monkeypatch.setenv("BWSOS_LOG_LEVEL", "debug")
        assert Settings(_env_file=None).log_level == "DEBUG"

    def test_log_level_rejected(self, monkeypatch):
        """测试未知日志级别"""
        monkeypatch.setenv("BWSOS_LOG_LEVEL", "LOUD")
        with pytest.raises(ValidationError):
            Settings(_env_file=None)

    def test_get_settings_cached(self):
        """测试配置实例只创建一次"""
        assert get_settings() is get_settings()
        assert get_settings.cache_info().hits >= 1
