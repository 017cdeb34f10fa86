#!/usr/bin/env python3
"""
BW双二次型平方和证书工具主程序
使用方法：
python scripts/run_bwsos.py certify --class general --n 3
python scripts/run_bwsos.py tables --which 2
"""
import asyncio
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional

import click
from tqdm import tqdm

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config.settings import settings
from src.core.bwform import objective_gram
from src.core.certificates import Certificate, CertificateVerifier
from src.core.constraints import ConstraintBuilder, DualVector
from src.core.errors import (
    BadPair,
    BadQuadruple,
    BadSize,
    BWSOSError,
    CertificateFormatError,
    OrderTooLarge,
    ReportIOError,
    UnsupportedOrder,
)
from src.core.structured import StructuredAnalyzer
from src.utils.exact import LDLCertificate, ExactUtils
from src.utils.indexing import MatrixClass
from src.utils.report_utils import EXIT_MATH_FAILED, EXIT_OK, EXIT_USAGE, Report, ReportUtils

logger = logging.getLogger(__name__)


def setup_logging():
    """配置日志：同时写入日志文件和标准错误"""
    if logging.getLogger().handlers:
        return
    logging.basicConfig(
        level=getattr(logging, settings.log_level),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(settings.log_file, encoding='utf-8'),
            logging.StreamHandler(sys.stderr)
        ]
    )


# 多项式展开的阶数上限，更大时只做Gram层面的校验
POLYNOMIAL_CHECK_MAX_M = 25

USAGE_ERRORS = (BadPair, BadQuadruple, BadSize, CertificateFormatError, OrderTooLarge, ReportIOError, UnsupportedOrder)


def order_cap(matrix_class: MatrixClass, big: bool) -> int:
    if matrix_class is MatrixClass.GENERAL:
        return settings.general_big_max_n if big else settings.general_max_n
    if matrix_class is MatrixClass.TOEPLITZ:
        return settings.toeplitz_max_n
    return settings.structured_max_n


def check_order(matrix_class: MatrixClass, n: int, big: bool = False):
    cap = order_cap(matrix_class, big)
    if n > cap:
        raise click.UsageError(f"{matrix_class.value} 的阶数上限为 {cap}（n={n}）")


def class_dual(matrix_class: MatrixClass, n: int, tol: Optional[float], max_denominator: Optional[int]) -> DualVector:
    """各矩阵类的对偶向量：已知闭式证书优先，否则由数值解有理化"""
    if matrix_class is MatrixClass.GENERAL:
        return ConstraintBuilder.strategy_a(n)
    if matrix_class is MatrixClass.TOEPLITZ:
        return ConstraintBuilder.strategy_b(n)
    if matrix_class is MatrixClass.TRIDIAGONAL:
        return DualVector({q: Fraction(1) for q in StructuredAnalyzer.tridiagonal_identity(n).active})
    if matrix_class is MatrixClass.CYCLIC_HANKEL:
        C = objective_gram(matrix_class, n)
        sos = StructuredAnalyzer.cyclic_hankel_sos(n).sos
        return ConstraintBuilder.dual_from_difference(C.space, C.mat - sos.gram(C.mat.order))
    if matrix_class is MatrixClass.HANKEL:
        if n != 3:
            raise UnsupportedOrder(f"Hankel 矩阵只支持 n=3，实际为 {n}")
        return StructuredAnalyzer.hankel3_printed_dual()

    from src.core.sdpsolve import SDPExplorer
    inst = SDPExplorer.build_instance(matrix_class, n)
    result = SDPExplorer.solve(inst, tol)
    return SDPExplorer.rationalize(result.y_full, max_denominator, inst).dual


class BWSOSApp:
    """证书构造与校验应用主类"""

    def __init__(self, fmt: str = "json", out: Optional[Path] = None, timing: bool = False):
        self.fmt = fmt
        self.out = out
        self.timing = timing

    def emit(self, report: Report, started: float) -> int:
        """输出报告并返回退出码"""
        if self.timing:
            report.timing_ms = round((time.perf_counter() - started) * 1000, 3)
        click.echo(ReportUtils.render(report, self.fmt))
        if self.out:
            ReportUtils.export_report(report, self.fmt, self.out)
        code = report.exit_code
        logger.info(f"{report.command} 完成，退出码 {code}，未通过 {len(report.mismatches)} 项")
        return code

    def certify(self, matrix_class: MatrixClass, n: int, tol: Optional[float], max_denominator: Optional[int],
                cert_path: Optional[Path]) -> Report:
        """构造对偶证书、认证半正定并提取平方和"""
        logger.info(f"开始构造证书: {matrix_class.value} n={n}")
        dual = class_dual(matrix_class, n, tol, max_denominator)
        dc = CertificateVerifier.build_dual(matrix_class, n, dual)
        report = Report(command="certify", matrix_class=matrix_class.value, n=n)
        CertificateVerifier.verify_dual(dc, report, published_totals=False)

        sos = None
        cert = ExactUtils.ldl_psd_certify(dc.S.mat)
        if isinstance(cert, LDLCertificate):
            sos = CertificateVerifier.extract_sos(dc.S, cert)
            report.add("sos_gram", CertificateVerifier.verify_identity_gram(sos, dc), "Σ c·ℓℓ^T = S")
            if dc.S.space.m <= POLYNOMIAL_CHECK_MAX_M and n <= 5:
                report.add("sos_identity", CertificateVerifier.verify_identity(sos, matrix_class, n, dc.gamma), "Σ c·ℓ² = s·BW + γΣz²")
            report.details["squares"] = len(sos.terms)

        if matrix_class is MatrixClass.GENERAL:
            CertificateVerifier.strong_duality_report(n, report, published=False)
        elif matrix_class is MatrixClass.TRIDIAGONAL:
            StructuredAnalyzer.tridiagonal_report(n, check_polynomial=n <= 5, report=report)
        elif matrix_class is MatrixClass.CYCLIC_HANKEL:
            StructuredAnalyzer.cyclic_report(n, report)

        if cert_path is not None and sos is not None:
            try:
                cert_path.write_text(CertificateVerifier.export_certificate(Certificate(matrix_class, n, dual, sos)), encoding="utf-8")
            except OSError as e:
                raise ReportIOError(f"写入证书失败 {cert_path}: {e}") from e
            report.details["certificate"] = str(cert_path)
            logger.info(f"证书已保存: {cert_path}")
        return report

    def verify(self, cert_path: Path) -> Report:
        """重新导入证书文件，重建 S 并逐行核对平方项"""
        try:
            text = cert_path.read_text(encoding="utf-8")
        except OSError as e:
            raise ReportIOError(f"读取证书失败 {cert_path}: {e}") from e
        cert = CertificateVerifier.parse_certificate(text)
        dc = CertificateVerifier.build_dual(cert.matrix_class, cert.n, cert.dual)
        report = Report(command="verify", matrix_class=cert.matrix_class.value, n=cert.n)
        CertificateVerifier.verify_dual(dc, report, published_totals=False)
        if cert.sos.terms:
            report.add("sos_gram", CertificateVerifier.verify_identity_gram(cert.sos, dc), f"{len(cert.sos.terms)} 个平方项")
            if dc.S.space.m <= POLYNOMIAL_CHECK_MAX_M and cert.n <= 5:
                report.add("sos_identity", CertificateVerifier.verify_identity(cert.sos, cert.matrix_class, cert.n, cert.dual.gamma))
        return report

    async def tables(self, which: int, orders: List[int], tol: Optional[float]) -> Report:
        """逐行并发复现表格"""
        builders: Dict[int, Callable[[int], Report]] = {
            1: lambda n: CertificateVerifier.verify_dual(CertificateVerifier.build_dual(MatrixClass.GENERAL, n, ConstraintBuilder.strategy_a(n)),
                                     Report(command="tables", matrix_class="general", n=n)),
            2: lambda n: StructuredAnalyzer.tridiagonal_report(n),
            3: lambda n: StructuredAnalyzer.backward_tridiagonal_report(n, tol=tol),
        }
        build = builders[which]
        logger.info(f"开始复现表 {which}: n = {orders}")

        async def build_row(n: int):
            return n, await asyncio.to_thread(build, n)

        rows: Dict[int, Report] = {}
        for task in tqdm(asyncio.as_completed([build_row(n) for n in orders]), total=len(orders),
                         desc=f"表 {which}", file=sys.stderr, disable=len(orders) < 2):
            n, row = await task
            rows[n] = row
        report = Report(command=f"tables --which {which}")
        for n in orders:
            report.merge(rows[n], prefix=f"n={n}:")
        return report


def run_command(ctx: click.Context, action: Callable[[BWSOSApp], Report]):
    app: BWSOSApp = ctx.obj
    started = time.perf_counter()
    report = action(app)
    ctx.exit(app.emit(report, started))


class_option = click.option(
    "--class", "matrix_class", required=True,
    type=click.Choice([c.value for c in MatrixClass]), help="矩阵类",
)
n_option = click.option("--n", "n", required=True, type=click.IntRange(min=2), help="矩阵阶数")
tol_option = click.option("--tol", type=float, default=None, help="求解器容差（默认取 BWSOS_TOL）")
denominator_option = click.option("--max-denominator", type=click.IntRange(min=1), default=None,
                                  help="有理化的最大分母")


# CLI命令行接口
@click.group()
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", help="报告格式")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="报告输出文件")
@click.option("--timing", is_flag=True, help="在报告中记录耗时")
@click.option("--verbose", "-v", is_flag=True, help="详细输出")
@click.pass_context
def cli(ctx: click.Context, fmt: str, out: Optional[Path], timing: bool, verbose: bool):
    """
    BW双二次型平方和证书工具
    """
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    ctx.obj = BWSOSApp(fmt, out, timing)


@cli.command()
@class_option
@n_option
@tol_option
@denominator_option
@click.option("--big", is_flag=True, help="放宽一般矩阵的阶数上限")
@click.option("--cert", "cert_path", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="证书输出文件")
@click.pass_context
def certify(ctx, matrix_class: str, n: int, tol, max_denominator, big: bool, cert_path: Optional[Path]):
    """构造并导出证书"""
    cls = MatrixClass(matrix_class)
    check_order(cls, n, big)
    run_command(ctx, lambda app: app.certify(cls, n, tol, max_denominator, cert_path))


@cli.command()
@click.argument("cert_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.pass_context
def verify(ctx, cert_path: Path):
    """重新校验证书文件"""
    run_command(ctx, lambda app: app.verify(cert_path))


@cli.command()
@click.option("--which", type=click.Choice(["1", "2", "3"]), required=True, help="表格编号")
@click.option("--max-n", type=click.IntRange(min=2), default=None, help="最大阶数")
@tol_option
@click.pass_context
def tables(ctx, which: str, max_n: Optional[int], tol):
    """复现表格并比对"""
    table = int(which)
    if table == 1:
        orders = list(range(3, (max_n or settings.general_max_n) + 1))
    else:
        orders = list(range(2, (max_n or settings.structured_max_n) + 1))
    cls = MatrixClass.GENERAL if table == 1 else MatrixClass.TRIDIAGONAL
    if orders:
        check_order(cls, orders[-1])
    run_command(ctx, lambda app: asyncio.run(app.tables(table, orders, tol)))


@cli.command()
@click.option("--n", "n", required=True, type=click.IntRange(min=3), help="矩阵阶数")
@click.pass_context
def toeplitz(ctx, n: int):
    """Toeplitz对偶矩阵的块分析"""
    check_order(MatrixClass.TOEPLITZ, n)
    run_command(ctx, lambda app: StructuredAnalyzer.toeplitz_analyze(n).report)


@cli.command()
@class_option
@n_option
@tol_option
@denominator_option
@click.pass_context
def explore(ctx, matrix_class: str, n: int, tol, max_denominator):
    """数值求解并有理化，记录猜想台账"""
    from src.core.sdpsolve import SDPExplorer
    run_command(ctx, lambda app: SDPExplorer.explore_report(MatrixClass(matrix_class), n, tol, max_denominator))


@cli.command()
@click.argument("name", type=click.Choice(["hankel3", "general3"]))
@click.pass_context
def fixture(ctx, name: str):
    """对照已发表的数值数据"""
    run_command(ctx, lambda app: StructuredAnalyzer.hankel3_verify() if name == "hankel3" else CertificateVerifier.general3_verify())


def run(argv: Optional[List[str]] = None) -> int:
    """命令行入口，返回退出码"""
    setup_logging()
    try:
        code = cli.main(args=argv, prog_name="bwsos", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except USAGE_ERRORS as e:
        logger.error(f"参数错误: {e}")
        return EXIT_USAGE
    except BWSOSError as e:
        logger.error(f"计算失败: {e}")
        return EXIT_MATH_FAILED
    return code if isinstance(code, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(run())
