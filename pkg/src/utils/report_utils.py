"""
报告工具模块
提供结构化报告模型及JSON/文本导出
"""
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from ..core.errors import ReportIOError
from .exact import format_rational

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MATH_FAILED = 2
EXIT_PUBLISHED_MISMATCH = 3
EXIT_USAGE = 64


class Verdict(BaseModel):
    """单项判定，published_mismatch 表示与已发表数值不符但数学上自洽"""
    model_config = ConfigDict(populate_by_name=True)

    name: str
    passed: bool = Field(alias="pass")
    exact: bool = True
    detail: str = ""
    published_mismatch: bool = False


class Report(BaseModel):
    """命令输出报告"""
    model_config = ConfigDict(populate_by_name=True)

    command: str
    matrix_class: Optional[str] = Field(default=None, alias="class")
    n: Optional[int] = None
    verdicts: List[Verdict] = Field(default_factory=list)
    spectra: Dict[str, Dict[str, int]] = Field(default_factory=dict)
    control_sums: Dict[str, str] = Field(default_factory=dict)
    details: Dict[str, Any] = Field(default_factory=dict)
    mismatches: List[str] = Field(default_factory=list)
    timing_ms: Optional[float] = None

    def add(self, name: str, passed: bool, detail: str = "", exact: bool = True,
            published_mismatch: bool = False) -> Verdict:
        verdict = Verdict(name=name, passed=bool(passed), exact=exact, detail=detail,
                          published_mismatch=published_mismatch)
        self.verdicts.append(verdict)
        if not verdict.passed:
            self.mismatches.append(name)
            logger.debug(f"判定未通过: {name} {detail}")
        return verdict

    def control(self, name: str, value: Union[int, Fraction]):
        self.control_sums[name] = format_rational(value)

    def spectrum(self, key: str, spectrum: Mapping[Fraction, int]):
        self.spectra[key] = {format_rational(k): int(v) for k, v in sorted(spectrum.items())}

    def verdict(self, name: str) -> Optional[Verdict]:
        for v in self.verdicts:
            if v.name == name:
                return v
        return None

    def merge(self, other: "Report", prefix: str = ""):
        """合并另一份报告（用于表格逐行合并）"""
        for v in other.verdicts:
            self.add(f"{prefix}{v.name}", v.passed, v.detail, v.exact, v.published_mismatch)
        for key, value in other.spectra.items():
            self.spectra[f"{prefix}{key}"] = value
        for key, value in other.control_sums.items():
            self.control_sums[f"{prefix}{key}"] = value
        for key, value in other.details.items():
            self.details[f"{prefix}{key}"] = value

    @property
    def exit_code(self) -> int:
        failed = [v for v in self.verdicts if not v.passed]
        if any(not v.published_mismatch for v in failed):
            return EXIT_MATH_FAILED
        if failed:
            return EXIT_PUBLISHED_MISMATCH
        return EXIT_OK


class ReportUtils:
    """报告工具类"""

    @staticmethod
    def to_json(report: Report) -> str:
        return json.dumps(report.model_dump(by_alias=True), indent=2, ensure_ascii=False)

    @staticmethod
    def from_json(text: str) -> Report:
        return Report.model_validate(json.loads(text))

    @staticmethod
    def to_text(report: Report) -> str:
        """人类可读的表格"""
        lines = [f"命令: {report.command}"]
        if report.matrix_class:
            lines.append(f"矩阵类: {report.matrix_class}  n={report.n}")
        lines.append("-" * 60)
        width = max((len(v.name) for v in report.verdicts), default=10)
        for v in report.verdicts:
            status = "PASS" if v.passed else ("PUBL" if v.published_mismatch else "FAIL")
            kind = "exact" if v.exact else "float"
            lines.append(f"{v.name:<{width}}  {status:<5}  {kind:<5}  {v.detail}")
        if report.control_sums:
            lines.append("-" * 60)
            for key, value in report.control_sums.items():
                lines.append(f"{key:<{width}}  {value}")
        if report.spectra:
            lines.append("-" * 60)
            for key, spectrum in report.spectra.items():
                body = ", ".join(f"{k}:{m}" for k, m in spectrum.items())
                lines.append(f"{key:<{width}}  {{{body}}}")
        if report.timing_ms is not None:
            lines.append(f"耗时: {report.timing_ms:.1f} ms")
        return "\n".join(lines)

    @staticmethod
    def render(report: Report, fmt: str = "json") -> str:
        return ReportUtils.to_json(report) if fmt == "json" else ReportUtils.to_text(report)

    @staticmethod
    def export_report(report: Report, fmt: str, path: Union[str, Path]):
        """写出报告文件"""
        try:
            Path(path).write_text(ReportUtils.render(report, fmt) + "\n", encoding="utf-8")
            logger.info(f"报告已保存: {path}")
        except OSError as e:
            raise ReportIOError(f"写入报告失败 {path}: {e}") from e
