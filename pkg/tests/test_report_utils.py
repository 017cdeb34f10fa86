"""
报告工具模块测试
"""
from src.core.certificates import CertificateVerifier
from src.core.constraints import ConstraintBuilder
from src.utils.indexing import MatrixClass
from src.utils.report_utils import EXIT_PUBLISHED_MISMATCH, Report, ReportUtils


class TestReportJson:
    """报告JSON序列化测试"""

    def test_round_trip_equal(self):
        """测试 to_json 后 from_json 得到相同的报告"""
        dc = CertificateVerifier.build_dual(MatrixClass.GENERAL, 3, ConstraintBuilder.strategy_a(3))
        report = CertificateVerifier.verify_dual(dc)
        report.timing_ms = 12.5
        restored = ReportUtils.from_json(ReportUtils.to_json(report))
        assert restored.model_dump() == report.model_dump()
        assert restored.exit_code == EXIT_PUBLISHED_MISMATCH
        assert restored.verdict("table1_total_Eig=n+2").published_mismatch

    def test_aliases_in_json(self):
        """测试 JSON 中使用 class 与 pass 字段名"""
        report = Report(command="verify", matrix_class="general", n=3)
        report.add("psd", True)
        text = ReportUtils.to_json(report)
        assert '"class": "general"' in text
        assert '"pass": true' in text
        assert ReportUtils.from_json(text).model_dump() == report.model_dump()
