"""
精确有理运算模块测试
"""
from fractions import Fraction

import pytest

from src.core.errors import NonSymmetricInput, OrderTooLarge
from src.utils.exact import (
    ExactUtils,
    LDLCertificate,
    NotPSD,
    SymMatrix,
    format_rational,
    parse_rational,
)


class TestSymMatrix:
    """稀疏对称矩阵测试"""

    def test_accumulate_merges_mirror_entries(self):
        """测试 (i,j) 与 (j,i) 累加到同一位置"""
        M = SymMatrix.accumulate(3, [((0, 1), 1), ((1, 0), 2), ((2, 2), 1), ((2, 2), -1)])
        assert M.get(0, 1) == 3
        assert M.get(1, 0) == 3
        assert M.get(2, 2) == 0
        assert (2, 2) not in M.entries

    def test_from_mapping_rejects_asymmetric(self):
        """测试不对称输入被拒绝"""
        with pytest.raises(NonSymmetricInput):
            SymMatrix.from_mapping(2, {(0, 1): 1, (1, 0): 2})

    def test_from_dense_rejects_ragged_rows(self):
        """测试行长度不符"""
        with pytest.raises(NonSymmetricInput):
            SymMatrix.from_dense([[1, 0], [0]])

    def test_inner_product(self):
        """测试 Frobenius 内积"""
        A = SymMatrix.from_dense([[1, 1], [1, 2]])
        B = SymMatrix.from_dense([[2, 1], [1, 2]])
        assert A.inner(B) == 8

    def test_shift_and_trace(self):
        """测试对角平移与迹"""
        M = SymMatrix.from_dense([[1, 2], [2, 3]]).shift(Fraction(1, 2))
        assert M.diagonal() == [Fraction(3, 2), Fraction(7, 2)]
        assert M.trace() == 5

    def test_quadratic_form(self):
        """测试二次型求值"""
        M = SymMatrix.from_dense([[2, -1], [-1, 2]])
        assert M.quadratic_form([1, 1]) == 2
        assert M.quadratic_form([1, -1]) == 6

    def test_subtraction_to_zero(self):
        """测试相减为零矩阵"""
        M = SymMatrix.from_dense([[1, 2], [2, 3]])
        assert (M - M) == SymMatrix.zero(2)


class TestExactUtils:
    """精确线性代数工具测试"""

    def test_ldl_rank_one(self):
        """测试秩一半正定矩阵"""
        M = SymMatrix.from_dense([[4, 2], [2, 1]])
        cert = ExactUtils.ldl_psd_certify(M)
        assert isinstance(cert, LDLCertificate)
        assert cert.rank == 1
        assert cert.reconstruct() == M

    @pytest.mark.parametrize("rows", [[[1, 2], [2, 1]], [[0, 1], [1, 0]], [[-1, 0], [0, 1]]])
    def test_ldl_witness(self, rows):
        """测试非半正定矩阵给出见证向量"""
        M = SymMatrix.from_dense(rows)
        cert = ExactUtils.ldl_psd_certify(M)
        assert isinstance(cert, NotPSD)
        assert cert.value < 0
        assert M.quadratic_form(cert.witness) == cert.value

    def test_ldl_witness_pinned(self):
        """测试 [[1,2],[2,1]] 的见证向量由主元顺序确定"""
        cert = ExactUtils.ldl_psd_certify(SymMatrix.from_dense([[1, 2], [2, 1]]))
        assert cert.witness == (Fraction(-2), Fraction(1))
        assert cert.value == -3
        # (1, −1) 同样是合法见证，值为 −2
        assert SymMatrix.from_dense([[1, 2], [2, 1]]).quadratic_form([1, -1]) == -2

    def test_ldl_block_diagonal(self):
        """测试按连通分量分解"""
        M = SymMatrix.from_dense([[2, 1, 0], [1, 2, 0], [0, 0, 5]])
        cert = ExactUtils.ldl_psd_certify(M)
        assert isinstance(cert, LDLCertificate)
        assert cert.rank == 3
        assert cert.reconstruct() == M

    def test_connected_components_order(self):
        """测试连通分量按大小降序"""
        M = SymMatrix.from_dense([[1, 0, 0], [0, 1, 1], [0, 1, 1]])
        assert ExactUtils.connected_components(M) == [[1, 2], [0]]

    def test_char_poly(self):
        """测试特征多项式"""
        M = SymMatrix.from_dense([[2, -1], [-1, 2]])
        assert ExactUtils.char_poly(M) == [1, -4, 3]

    def test_char_poly_order_bound(self):
        """测试特征多项式阶数上限"""
        M = SymMatrix.from_dense([[2, -1], [-1, 2]])
        with pytest.raises(OrderTooLarge):
            ExactUtils.char_poly(M, max_order=1)

    def test_determinant(self):
        """测试行列式"""
        assert ExactUtils.determinant(SymMatrix.from_dense([[2, -1], [-1, 2]])) == 3

    @pytest.mark.parametrize("rows", [
        [[2, -1], [-1, 2]],
        [[1, 2, 0], [2, 1, 3], [0, 3, -4]],
        [[0, 1, 1, 0], [1, 0, 0, 2], [1, 0, 5, 1], [0, 2, 1, -1]],
    ])
    def test_char_poly_constant_term(self, rows):
        """测试特征多项式常数项等于 (−1)^n·det"""
        M = SymMatrix.from_dense(rows)
        assert ExactUtils.char_poly(M)[-1] == (-1) ** M.order * ExactUtils.determinant(M)

    def test_connected_components_permutation_invariant(self):
        """测试重排下标后连通分量的划分不变"""
        M = SymMatrix.from_dense([
            [1, 0, 2, 0, 0],
            [0, 3, 0, 0, 1],
            [2, 0, 1, 0, 0],
            [0, 0, 0, 4, 0],
            [0, 1, 0, 0, 2],
        ])
        perm = [4, 2, 0, 3, 1]
        original = {frozenset(block) for block in ExactUtils.connected_components(M)}
        permuted = {frozenset(perm[i] for i in block) for block in ExactUtils.connected_components(M.permuted(perm))}
        assert permuted == original

    def test_rational_spectrum(self):
        """测试有理特征值重数"""
        M = SymMatrix.from_dense([[2, -1], [-1, 2]])
        assert ExactUtils.rational_spectrum(M, range(5)) == {Fraction(1): 1, Fraction(3): 1}
        assert ExactUtils.nullity_at(SymMatrix.identity(4, 2), 2) == 4

    def test_eval_poly(self):
        """测试 Horner 求值"""
        assert ExactUtils.eval_poly([1, -4, 3], Fraction(1, 2)) == Fraction(5, 4)


class TestRationalFormat:
    """有理数序列化测试"""

    def test_format_and_parse(self):
        """测试 num/den 格式"""
        assert format_rational(Fraction(1, 2)) == "1/2"
        assert format_rational(3) == "3/1"
        assert parse_rational(" -3/4 ") == Fraction(-3, 4)
