"""
约束与对偶变量模块测试
"""
from fractions import Fraction

import pytest

from src.core.bwform import objective_gram
from src.core.certificates import CertificateVerifier
from src.core.constraints import ConstraintBuilder, ConstraintMatrix, DualVector
from src.core.errors import BadQuadruple, DimensionMismatch, UnsupportedOrder
from src.utils.exact import SymMatrix
from src.utils.indexing import CandidateSpace, MatrixClass


class TestPluckerConstraint:
    """Plücker约束矩阵测试"""

    def test_entries(self):
        """测试 (2,3,4,5) 的三个非零位置"""
        space = objective_gram(MatrixClass.GENERAL, 3).space
        A = ConstraintBuilder.plucker_constraint((2, 3, 4, 5), space).mat
        assert A.get(2, 9) == 1
        assert A.get(7, 5) == 1
        assert A.get(4, 8) == -1
        assert len(A.entries) == 3

    def test_vanishes(self):
        """测试 z^T A z 恒为零"""
        space = CandidateSpace(5, (1,) * 5)
        for quad in ConstraintBuilder.all_quadruples(5):
            constraint = ConstraintBuilder.plucker_constraint(quad, space)
            assert ConstraintBuilder.constraint_vanishes(constraint, 5)
            assert ConstraintBuilder.constraint_vanishes_at(constraint, 5, samples=5)

    def test_non_constraint_detected(self):
        """测试普通矩阵不被当作约束"""
        space = CandidateSpace(4, (1,) * 4)
        fake = ConstraintMatrix((1, 2, 3, 4), SymMatrix.accumulate(space.size, [((0, 5), 1)]))
        assert not ConstraintBuilder.constraint_vanishes(fake, 4)
        assert not ConstraintBuilder.constraint_vanishes_at(fake, 4, samples=5)

    def test_bad_quadruple(self):
        """测试非法四元组"""
        with pytest.raises(BadQuadruple):
            ConstraintBuilder.check_quadruple((1, 1, 2, 3), 9)
        with pytest.raises(BadQuadruple):
            ConstraintBuilder.check_quadruple((1, 2, 3, 10), 9)
        with pytest.raises(BadQuadruple):
            ConstraintBuilder.check_quadruple((1, 2, 3), 9)

    def test_quadruple_count(self):
        """测试一般矩阵 n=3 的四元组个数"""
        assert sum(1 for _ in ConstraintBuilder.all_quadruples(9)) == 126


class TestStrategies:
    """策略A与策略B测试"""

    @pytest.mark.parametrize("n,expected", [(2, 0), (3, 15), (4, 72)])
    def test_strategy_a_counts(self, n, expected):
        """测试策略A的活跃约束数与 gamma"""
        dual = ConstraintBuilder.strategy_a(n)
        assert dual.active_count == expected == ConstraintBuilder.strategy_a_count(n)
        assert dual.gamma == Fraction(n - 2, 2)

    def test_strategy_a_values(self):
        """测试策略A的非零 y 均为 ±1/2 的整数倍"""
        for _, value in ConstraintBuilder.strategy_a(3).support():
            assert (2 * value).denominator == 1

    def test_strategy_b_smallest(self):
        """测试Toeplitz n=3 只有一个活跃约束"""
        dual = ConstraintBuilder.strategy_b(3)
        assert dict(dual.y) == {(1, 2, 3, 4): 1}
        assert dual.gamma == 0

    def test_strategy_b_order5(self):
        """测试Toeplitz n=5 的活跃约束与 S 的条目"""
        dual = ConstraintBuilder.strategy_b(5)
        assert dual.active_count == 14
        S = CertificateVerifier.build_dual(MatrixClass.TOEPLITZ, 5, dual).S.mat
        assert S.get(12, 16) == -2
        assert S.get(2, 20) == -2

    @pytest.mark.parametrize("n", range(3, 9))
    def test_strategy_b_count_formula(self, n):
        """测试策略B计数公式"""
        assert ConstraintBuilder.strategy_b(n).active_count == ConstraintBuilder.strategy_b_count(n)

    def test_unsupported_orders(self):
        """测试阶数下限"""
        with pytest.raises(UnsupportedOrder):
            ConstraintBuilder.strategy_a(1)
        with pytest.raises(UnsupportedOrder):
            ConstraintBuilder.strategy_b(2)


class TestBackwardCounts:
    """反三对角计数测试"""

    @pytest.mark.parametrize("n,expected", [(4, 8), (5, 17), (6, 18)])
    def test_mixed_pairs(self, n, expected):
        """测试混合项个数"""
        assert ConstraintBuilder.mixed_pair_count_backward(n) == expected

    @pytest.mark.parametrize("n", range(3, 9))
    def test_formula(self, n):
        """测试 5n−12 / 5n−8 公式"""
        assert ConstraintBuilder.mixed_pair_count_backward(n) == ConstraintBuilder.backward_count_formula(n)

    def test_term_counts_shape(self):
        """测试项数矩阵的形状"""
        counts = ConstraintBuilder.term_count_matrix(MatrixClass.BACKWARD_TRIDIAGONAL, 4)
        assert len(counts) == 4
        assert all(len(row) == 4 for row in counts)


class TestDualFromDifference:
    """由差矩阵读出对偶变量测试"""

    def test_recovers_strategy_a(self):
        """测试从 C + γI − S 还原策略A"""
        dual = ConstraintBuilder.strategy_a(3)
        C = objective_gram(MatrixClass.GENERAL, 3)
        S = CertificateVerifier.build_dual(MatrixClass.GENERAL, 3, dual).S.mat
        recovered = ConstraintBuilder.dual_from_difference(C.space, C.mat.shift(dual.gamma) - S, dual.gamma)
        assert dict(recovered.y) == dict(dual.y)
        assert recovered.gamma == dual.gamma

    def test_diagonal_rejected(self):
        """测试对角元不属于任何约束"""
        space = CandidateSpace(4, (1,) * 4)
        with pytest.raises(DimensionMismatch):
            ConstraintBuilder.dual_from_difference(space, SymMatrix.identity(space.size))

    def test_overlapping_ids_rejected(self):
        """测试下标重复的位置"""
        space = CandidateSpace(4, (1,) * 4)
        # z_{1,2} 与 z_{1,3} 共用下标 1
        with pytest.raises(DimensionMismatch):
            ConstraintBuilder.dual_from_difference(space, SymMatrix.accumulate(space.size, [((0, 1), 1)]))

    def test_inconsistent_difference_rejected(self):
        """测试三个位置不成比例时回代失败"""
        space = CandidateSpace(4, (1,) * 4)
        # 只有 (pos(1,2), pos(3,4)) 处非零
        with pytest.raises(DimensionMismatch):
            ConstraintBuilder.dual_from_difference(space, SymMatrix.accumulate(space.size, [((0, 5), 1)]))

    def test_empty(self):
        """测试零矩阵"""
        space = CandidateSpace(4, (1,) * 4)
        assert ConstraintBuilder.dual_from_difference(space, SymMatrix.zero(space.size)) == DualVector({}, Fraction(0))
