"""
数值SDP求解模块测试
"""
from fractions import Fraction

import numpy as np
import pytest

pytest.importorskip("cvxopt")

from src.config.settings import settings  # noqa: E402
from src.core.constraints import ConstraintBuilder  # noqa: E402
from src.core.errors import OrderTooLarge  # noqa: E402
from src.core.sdpsolve import RationalVerdict, SDPExplorer  # noqa: E402
from src.utils.indexing import MatrixClass  # noqa: E402


class TestInstance:
    """SDP实例构造测试"""

    def test_all_quadruples_when_small(self):
        """测试约束数较少时取全部四元组"""
        assert len(SDPExplorer.select_quadruples(MatrixClass.GENERAL, 3)) == 126

    def test_subset_contains_mixed_support(self):
        """测试约束子集包含混合项支撑"""
        chosen = SDPExplorer.select_quadruples(MatrixClass.GENERAL, 3, max_constraints=10, margin=0)
        support = {q for q, _ in ConstraintBuilder.strategy_a(3).support()}
        assert support <= set(chosen)
        assert len(chosen) < 126

    def test_margin(self):
        """测试额外补充的四元组"""
        base = SDPExplorer.select_quadruples(MatrixClass.GENERAL, 3, max_constraints=10, margin=0)
        padded = SDPExplorer.select_quadruples(MatrixClass.GENERAL, 3, max_constraints=10, margin=5)
        assert len(padded) == len(base) + 5

    def test_order_too_large(self, monkeypatch):
        """测试阶数超过求解器上限"""
        monkeypatch.setattr(settings, "solver_max_order", 10)
        with pytest.raises(OrderTooLarge):
            SDPExplorer.solve(SDPExplorer.build_instance(MatrixClass.GENERAL, 3))


class TestRationalize:
    """有理化测试"""

    def test_hankel3_exact(self):
        """测试把近似的 −1 还原为精确证书"""
        inst = SDPExplorer.build_instance(MatrixClass.HANKEL, 3)
        values = [-0.9999999 if q == (1, 2, 4, 5) else 1e-9 for q in inst.quadruples] + [0.0]
        result = SDPExplorer.rationalize(values, 64, inst)
        assert dict(result.dual.y) == {(1, 2, 4, 5): -1}
        assert result.verdict is RationalVerdict.CERTIFIED_EXACT

    def test_zero_dual_not_psd(self):
        """测试一般矩阵 n=3 的 C 本身不是半正定"""
        inst = SDPExplorer.build_instance(MatrixClass.GENERAL, 3)
        result = SDPExplorer.rationalize([0.0] * (len(inst.constraints) + 1), 64, inst)
        assert result.dual.active_count == 0
        assert result.verdict is RationalVerdict.ROUNDED_NOT_PSD

    def test_gamma_from_last_coordinate(self):
        """测试最后一个分量给出 gamma = −w"""
        inst = SDPExplorer.build_instance(MatrixClass.TRIDIAGONAL, 2)
        result = SDPExplorer.rationalize([0.0] * len(inst.constraints) + [-0.4999999], 64, inst)
        assert result.dual.gamma == Fraction(1, 2)
        assert result.verdict is RationalVerdict.CERTIFIED_EXACT


class TestFloatHelpers:
    """浮点谱工具测试"""

    def test_rounded_spectrum(self):
        """测试特征值取整"""
        counts, residual = SDPExplorer.rounded_spectrum(np.diag([0.0, 1.0, 1.0, 2.0000001]), range(3))
        assert counts == {0: 1, 1: 2, 2: 1}
        assert residual < 1e-6

    def test_block_sizes(self):
        """测试浮点块划分"""
        S = np.array([[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 1.0]])
        assert SDPExplorer.block_sizes_float(S) == {2: 1, 1: 1}


@pytest.mark.slow
class TestSolve:
    """求解器测试"""

    def test_general3(self):
        """测试一般矩阵 n=3 的最优值"""
        result = SDPExplorer.solve(SDPExplorer.build_instance(MatrixClass.GENERAL, 3))
        assert result.status == "optimal"
        assert result.objective == pytest.approx(-0.5, abs=1e-5)
        assert result.gamma == pytest.approx(0.5, abs=1e-5)
        assert result.min_eig_S > -1e-6

    def test_general4_gamma(self):
        """测试一般矩阵 n=4 的 gamma"""
        assert SDPExplorer.estimate_gamma(MatrixClass.GENERAL, 4) == pytest.approx(1.0, abs=1e-5)

    def test_tridiagonal_gamma_zero(self):
        """测试三对角矩阵无需对角平移"""
        assert SDPExplorer.estimate_gamma(MatrixClass.TRIDIAGONAL, 3) == pytest.approx(0.0, abs=1e-5)

    def test_explore(self):
        """测试猜想台账"""
        report = SDPExplorer.explore_report(MatrixClass.TRIDIAGONAL, 3)
        assert report.verdict("solver_converged").passed
        assert report.control_sums["gamma_rational"] == "0/1"
        assert report.details["ledger"][0]["class"] == "tridiagonal"

    def test_hankel3_rationalized(self):
        """测试 Hankel n=3 的数值解有理化为 y(1,2,4,5) = −1"""
        inst = SDPExplorer.build_instance(MatrixClass.HANKEL, 3)
        result = SDPExplorer.solve(inst)
        rationalized = SDPExplorer.rationalize(result.y_full, 64, inst)
        assert dict(rationalized.dual.y).get((1, 2, 4, 5)) == -1
        assert rationalized.dual.gamma == 0
        assert rationalized.verdict is RationalVerdict.CERTIFIED_EXACT

    @pytest.mark.parametrize("n", [8, 9])
    def test_explore_toeplitz(self, n):
        """测试 Toeplitz n=8、9 的数值解给出 gamma ≈ 0"""
        report = SDPExplorer.explore_report(MatrixClass.TOEPLITZ, n)
        assert report.verdict("solver_converged").passed
        assert report.details["gamma_estimate"] == pytest.approx(0.0, abs=1e-4)
        assert report.details["ledger"][0]["class"] == "toeplitz"
        assert report.details["ledger"][0]["n"] == n
