"""
证书模块测试
"""
from fractions import Fraction

import pytest

from src.core import fixtures
from src.core.bwform import LinearForm, objective_gram
from src.core.certificates import Certificate, CertificateVerifier, SOSDecomposition
from src.core.constraints import ConstraintBuilder, DualVector
from src.core.errors import CertificateFormatError, NotCertified
from src.utils.exact import SymMatrix
from src.utils.indexing import MatrixClass
from src.utils.report_utils import EXIT_OK, EXIT_PUBLISHED_MISMATCH


class TestPrimalCertificate:
    """原始证书测试"""

    def test_vector_v12(self):
        """测试 n=3 的 v_{1,2} 与 36 维数据一致"""
        pc = CertificateVerifier.build_primal(3)
        v12 = pc.dense(pc.pairs.index((1, 2)))
        assert v12 == list(fixtures.GENERAL3_V12)
        assert sum(x * x for x in v12) == 20

    def test_structure(self):
        """测试非零元、正交性、迹与互补松弛 S·v = 0"""
        for n in (3, 4):
            checks = CertificateVerifier.primal_structure_checks(CertificateVerifier.build_primal(n))
            assert all(checks.values())
            assert checks["complementary_slackness"]

    def test_slack_annihilates_vectors(self):
        """测试 (C − Σ y_t A_t)·v = ((2−n)/2)·v，而 C·v 本身不是"""
        for n in (3, 4):
            pc = CertificateVerifier.build_primal(n)
            dual = ConstraintBuilder.strategy_a(n)
            shifted = CertificateVerifier.build_dual(MatrixClass.GENERAL, n, DualVector(dual.y)).S.mat
            for index in range(len(pc.vectors)):
                v = pc.dense(index)
                assert shifted.matvec(v) == [Fraction(2 - n, 2) * x for x in v]
        assert not CertificateVerifier.objective_eigenvector_reading(CertificateVerifier.build_primal(3))

    def test_objective(self):
        """测试 trace(CX) = (2−n)/2"""
        assert CertificateVerifier.primal_objective(CertificateVerifier.build_primal(3)) == Fraction(-1, 2)
        assert CertificateVerifier.primal_objective(CertificateVerifier.build_primal(4)) == -1

    def test_feasibility(self):
        """测试原始可行性"""
        assert CertificateVerifier.primal_feasibility_check(CertificateVerifier.build_primal(2))
        assert CertificateVerifier.primal_feasibility_check(CertificateVerifier.build_primal(3))
        active = [q for q, _ in ConstraintBuilder.strategy_a(4).support()]
        assert CertificateVerifier.primal_feasibility_check(CertificateVerifier.build_primal(4), active)


class TestDualCertificate:
    """对偶证书测试"""

    def test_zero_dual_gives_objective(self):
        """测试 y=0 时 S = C"""
        dc = CertificateVerifier.build_dual(MatrixClass.GENERAL, 3, DualVector())
        assert dc.S.mat == objective_gram(MatrixClass.GENERAL, 3).mat

    def test_general3_report(self):
        """测试一般矩阵 n=3 的块表与控制和"""
        report = CertificateVerifier.verify_dual(CertificateVerifier.build_dual(MatrixClass.GENERAL, 3, ConstraintBuilder.strategy_a(3)))
        assert report.verdict("psd").passed
        assert report.details["defect"] == 8
        assert report.details["gamma"] == "1/2"
        assert report.control_sums["trace_2S"] == "132/1"
        assert report.control_sums["trace_C"] == "48/1"
        assert report.spectra["2S:total"]["5/1"] == 15
        assert report.verdict("block_spectra").passed
        # 只有已知的三行总数不一致
        assert report.exit_code == EXIT_PUBLISHED_MISMATCH
        assert sorted(report.mismatches) == ["table1_total_Eig=2n+2", "table1_total_Eig=n+2", "table1_total_Eig=n+4"]

    def test_general3_without_totals(self):
        """测试不比较表格总数时全部通过"""
        report = CertificateVerifier.verify_dual(CertificateVerifier.build_dual(MatrixClass.GENERAL, 3, ConstraintBuilder.strategy_a(3)), published_totals=False)
        assert report.exit_code == EXIT_OK
        assert report.verdict("EIG_control").passed

    def test_general4_blocks(self):
        """测试一般矩阵 n=4 的块大小与 trace(2S)"""
        report = CertificateVerifier.verify_dual(CertificateVerifier.build_dual(MatrixClass.GENERAL, 4, ConstraintBuilder.strategy_a(4)), published_totals=False)
        assert report.details["block_sizes"] == {"16": 6, "6": 1, "4": 3, "1": 6}
        assert report.control_sums["trace_2S"] == "600/1"
        assert report.details["defect"] == 15
        assert report.exit_code == EXIT_OK

    @pytest.mark.slow
    def test_general5_blocks(self):
        """测试一般矩阵 n=5 的块大小与亏量"""
        report = CertificateVerifier.verify_dual(CertificateVerifier.build_dual(MatrixClass.GENERAL, 5, ConstraintBuilder.strategy_a(5)), published_totals=False)
        assert report.details["block_sizes"] == {"22": 10, "10": 1, "4": 15, "1": 10}
        assert report.details["defect"] == 24
        assert report.verdict("psd").passed
        assert report.exit_code == EXIT_OK

    def test_strong_duality(self):
        """测试强对偶与非严格互补，C·v 的字面读法只记为与发表值不一致"""
        report = CertificateVerifier.strong_duality_report(3)
        assert report.control_sums["primal_objective"] == "-1/2"
        assert report.control_sums["dual_objective"] == "-1/2"
        assert report.verdict("primal_complementary_slackness").passed
        assert report.verdict("strong_duality").passed
        assert report.verdict("primal_eigenvector_of_C").published_mismatch
        assert report.mismatches == ["primal_eigenvector_of_C"]
        assert report.exit_code == EXIT_PUBLISHED_MISMATCH

    def test_strong_duality_without_published(self):
        """测试不记录字面读法时全部通过"""
        for n in (3, 4):
            report = CertificateVerifier.strong_duality_report(n, published=False)
            assert report.verdict("primal_eigenvector_of_C") is None
            assert report.exit_code == EXIT_OK

    def test_fixture_general3(self):
        """测试 10 阶块对照"""
        assert CertificateVerifier.general3_verify().exit_code == EXIT_OK


class TestSOSExtraction:
    """平方和提取测试"""

    def test_two_by_two(self):
        """测试 [[2,−1],[−1,2]] 的分解"""
        M = SymMatrix.from_dense([[2, -1], [-1, 2]])
        sos = CertificateVerifier.extract_sos(M)
        assert sos.gram(2) == M
        assert sorted(c for c, _ in sos.terms) == [Fraction(3, 2), 2]
        assert sos.terms[0] == (2, LinearForm.from_terms([(1, 1), (2, Fraction(-1, 2))]))

    def test_zero_matrix(self):
        """测试零矩阵给出空分解"""
        assert CertificateVerifier.extract_sos(SymMatrix.zero(3)).terms == ()

    def test_not_psd(self):
        """测试非半正定矩阵无法提取"""
        dual = ConstraintBuilder.strategy_a(4)
        dc = CertificateVerifier.build_dual(MatrixClass.GENERAL, 4, DualVector(dual.y, Fraction(1, 2)))
        with pytest.raises(NotCertified):
            CertificateVerifier.extract_sos(dc.S)

    def test_identity_general3(self):
        """测试 n=3 的多项式恒等式"""
        dc = CertificateVerifier.build_dual(MatrixClass.GENERAL, 3, ConstraintBuilder.strategy_a(3))
        sos = CertificateVerifier.extract_sos(dc.S)
        assert CertificateVerifier.verify_identity_gram(sos, dc)
        assert CertificateVerifier.verify_identity(sos, MatrixClass.GENERAL, 3, Fraction(1, 2))
        assert not CertificateVerifier.verify_identity(sos, MatrixClass.GENERAL, 3, 1)

    def test_identity_general2(self):
        """测试 n=2 时 BW 本身是平方和"""
        dc = CertificateVerifier.build_dual(MatrixClass.GENERAL, 2, ConstraintBuilder.strategy_a(2))
        assert CertificateVerifier.verify_identity(CertificateVerifier.extract_sos(dc.S), MatrixClass.GENERAL, 2, 0)


class TestCertificateFormat:
    """证书文本格式测试"""

    def test_export_and_parse(self):
        """测试导出后重新导入"""
        dual = ConstraintBuilder.strategy_a(3)
        sos = CertificateVerifier.extract_sos(CertificateVerifier.build_dual(MatrixClass.GENERAL, 3, dual).S)
        cert = Certificate(MatrixClass.GENERAL, 3, dual, sos)
        text = CertificateVerifier.export_certificate(cert)
        assert text.startswith("bwsos v1 general 3 1/2\n")
        assert CertificateVerifier.parse_certificate(text) == cert

    def test_header_only(self):
        """测试只有证书头"""
        cert = CertificateVerifier.parse_certificate("bwsos v1 toeplitz 3 0\n")
        assert cert.matrix_class is MatrixClass.TOEPLITZ
        assert cert.sos == SOSDecomposition()

    @pytest.mark.parametrize("text", [
        "",
        "bwsos v1 general 3\n",
        "bwsos v1 circulant 3 0\n",
        "bwsos v1 general 3 0\ny 1 2 3 1/2\n",
        "bwsos v1 general 3 0\ny 1 2 3 4 1/0\n",
        "bwsos v1 general 3 0\nsq 1 : 1\n",
        "bwsos v1 general 3 0\nfoo 1 2\n",
    ])
    def test_malformed(self, text):
        """测试格式错误"""
        with pytest.raises(CertificateFormatError):
            CertificateVerifier.parse_certificate(text)
