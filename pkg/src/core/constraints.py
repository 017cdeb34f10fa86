"""
约束模块
生成Plücker约束矩阵 A_t，并按交换子中的混合项给出对偶变量（策略A与策略B）
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from .bwform import BWForm, gram_poly
from .errors import BadQuadruple, DimensionMismatch, UnsupportedOrder
from ..utils.exact import Number, SymMatrix
from ..utils.indexing import CandidateSpace, IndexUtils, MatrixClass

logger = logging.getLogger(__name__)

Quadruple = Tuple[int, int, int, int]


@dataclass(frozen=True)
class ConstraintMatrix:
    """z^T·mat·z = 2(z_ij z_kl + z_il z_jk − z_ik z_jl)"""
    quad: Quadruple
    mat: SymMatrix


@dataclass(frozen=True)
class DualVector:
    """对偶变量 y（按四元组）以及对角平移 gamma = −y_{M+1}"""
    y: Mapping[Quadruple, Fraction] = field(default_factory=dict, hash=False)
    gamma: Fraction = Fraction(0)

    def support(self) -> List[Tuple[Quadruple, Fraction]]:
        return sorted((q, v) for q, v in self.y.items() if v != 0)

    @property
    def active_count(self) -> int:
        return len(self.support())


class ConstraintBuilder:
    """Plücker约束与对偶变量构造器"""

    @staticmethod
    def check_quadruple(quad: Iterable[int], m: int) -> Quadruple:
        quad = tuple(quad)
        if len(quad) != 4 or not all(1 <= a < b <= m for a, b in zip(quad, quad[1:])) or quad[0] < 1:
            raise BadQuadruple(f"非法的四元组 {quad}，m={m}")
        return quad  # type: ignore[return-value]

    @staticmethod
    def all_quadruples(m: int) -> Iterable[Quadruple]:
        return combinations(range(1, m + 1), 4)

    @staticmethod
    def plucker_entries(quad: Quadruple) -> List[Tuple[Tuple[int, int], int]]:
        """四元组对应的三对候选编号（1起始）及其系数"""
        i, j, k, l = quad
        pos = IndexUtils.pos_index
        return [
            ((pos(i, j), pos(k, l)), 1),
            ((pos(i, l), pos(j, k)), 1),
            ((pos(i, k), pos(j, l)), -1),
        ]

    @staticmethod
    def plucker_constraint(quad: Iterable[int], space: CandidateSpace) -> ConstraintMatrix:
        """
        构造 A_t：(pos(i,j),pos(k,l)) 与 (pos(i,l),pos(j,k)) 处为 +1，(pos(i,k),pos(j,l)) 处为 −1
        """
        quad = ConstraintBuilder.check_quadruple(quad, space.m)
        items = [((a - 1, b - 1), value) for (a, b), value in ConstraintBuilder.plucker_entries(quad)]
        return ConstraintMatrix(quad, SymMatrix.accumulate(space.size, items))

    @staticmethod
    def plucker_coefficient(quad: Quadruple, ka: int, kb: int) -> int:
        """A_t 在候选编号 (ka, kb) 处的取值"""
        for (a, b), value in ConstraintBuilder.plucker_entries(quad):
            if {a, b} == {ka, kb}:
                return value
        raise BadQuadruple(f"候选 {ka},{kb} 不属于四元组 {quad}")

    @staticmethod
    def constraint_vanishes(constraint: ConstraintMatrix, m: int) -> bool:
        """z^T A z 代入后是否恒为零多项式"""
        return not gram_poly(constraint.mat, m)

    @staticmethod
    def constraint_vanishes_at(constraint: ConstraintMatrix, m: int, samples: int = 50, seed: int = 0) -> bool:
        """在随机有理点上精确检验 z^T A z = 0"""
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            p = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-9, 10, m), rng.integers(1, 7, m))]
            q = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-9, 10, m), rng.integers(1, 7, m))]
            z = [p[a - 1] * q[b - 1] - q[a - 1] * p[b - 1] for a, b in CandidateSpace(m, (1,) * m).pairs()]
            if constraint.mat.quadratic_form(z) != 0:
                return False
        return True

    @staticmethod
    def mixed_pairs(form: BWForm) -> Iterable[Tuple[Quadruple, int, Fraction, int, Fraction]]:
        """
        按行优先遍历交换子条目，逐条目按字典序给出四个下标互异的候选对
        产出 (四元组, ka, ca, kb, cb)
        """
        for _, _, entry in form.commutator.cells():
            terms = entry.terms()
            for x, (ka, ca) in enumerate(terms):
                a = IndexUtils.decode(ka)
                for kb, cb in terms[x + 1:]:
                    b = IndexUtils.decode(kb)
                    ids = set(a) | set(b)
                    if len(ids) == 4:
                        yield tuple(sorted(ids)), ka, ca, kb, cb

    @staticmethod
    def dual_from_commutator(matrix_class: MatrixClass, n: int, gamma: Number = 0) -> DualVector:
        """
        对每个混合项 c_a c_b z_a z_b 累加 y_t += −c_a c_b / (2·A_t(a,b))
        比例 s=1 时混合项减半（策略A），s=1/2 时混合项被消去（策略B）
        """
        form = BWForm(matrix_class, n)
        y: Dict[Quadruple, Fraction] = {}
        for quad, ka, ca, kb, cb in ConstraintBuilder.mixed_pairs(form):
            coefficient = ConstraintBuilder.plucker_coefficient(quad, ka, kb)
            y[quad] = y.get(quad, Fraction(0)) - ca * cb / (2 * coefficient)
        y = {q: v for q, v in sorted(y.items()) if v != 0}
        logger.debug(f"{form.matrix_class.value} n={n} 生成 {len(y)} 个非零对偶变量")
        return DualVector(y, Fraction(gamma))

    @staticmethod
    def dual_from_difference(space: CandidateSpace, difference: SymMatrix, gamma: Number = 0) -> DualVector:
        """
        已知 Σ y_t A_t = difference 时读出 y
        每个四元组的三个位置互不相同，逐元素读取后再整体回代校验
        """
        y: Dict[Quadruple, Fraction] = {}
        for (a, b), value in difference.entries.items():
            ids = set(IndexUtils.decode(a + 1)) | set(IndexUtils.decode(b + 1))
            if a == b or len(ids) != 4:
                raise DimensionMismatch(f"位置 ({a + 1},{b + 1}) 不属于任何约束矩阵")
            quad = tuple(sorted(ids))
            y[quad] = value / ConstraintBuilder.plucker_coefficient(quad, a + 1, b + 1)  # type: ignore[index]
        rebuilt = SymMatrix.accumulate(
            space.size,
            [((ka - 1, kb - 1), v * sign) for q, v in y.items() for (ka, kb), sign in ConstraintBuilder.plucker_entries(q)],
        )
        if rebuilt != difference:
            raise DimensionMismatch("差矩阵不在约束矩阵张成的空间内")
        return DualVector(dict(sorted(y.items())), Fraction(gamma))

    @staticmethod
    def strategy_a(n: int) -> DualVector:
        """一般矩阵：混合项减半，gamma = (n−2)/2"""
        if n < 2:
            raise UnsupportedOrder(f"策略A要求 n ≥ 2，实际为 {n}")
        dual = ConstraintBuilder.dual_from_commutator(MatrixClass.GENERAL, n, Fraction(n - 2, 2))
        expected = ConstraintBuilder.strategy_a_count(n)
        if dual.active_count != expected:
            logger.warning(f"策略A n={n} 活跃约束数 {dual.active_count}，期望 {expected}")
        return dual

    @staticmethod
    def strategy_b(n: int) -> DualVector:
        """Toeplitz矩阵：混合项全部消去，gamma = 0"""
        if n < 3:
            raise UnsupportedOrder(f"策略B要求 n ≥ 3，实际为 {n}")
        return ConstraintBuilder.dual_from_commutator(MatrixClass.TOEPLITZ, n, 0)

    @staticmethod
    def strategy_a_count(n: int) -> int:
        """C(n,2)(n²−4)"""
        return comb(n, 2) * (n * n - 4)

    @staticmethod
    def strategy_b_count(n: int) -> int:
        """(n−1)(n−2)(2n−3)/6"""
        return (n - 1) * (n - 2) * (2 * n - 3) // 6

    @staticmethod
    def mixed_pair_count(matrix_class: MatrixClass, n: int) -> int:
        return sum(1 for _ in ConstraintBuilder.mixed_pairs(BWForm(matrix_class, n)))

    @staticmethod
    def mixed_pair_count_backward(n: int) -> int:
        """反三对角矩阵交换子中下标互异的混合项个数"""
        if n < 3:
            raise UnsupportedOrder(f"反三对角计数要求 n ≥ 3，实际为 {n}")
        return ConstraintBuilder.mixed_pair_count(MatrixClass.BACKWARD_TRIDIAGONAL, n)

    @staticmethod
    def backward_count_formula(n: int) -> int:
        """n 为偶数时 5n−12，奇数时 5n−8"""
        return 5 * n - 12 if n % 2 == 0 else 5 * n - 8

    @staticmethod
    def term_count_matrix(matrix_class: MatrixClass, n: int) -> List[List[int]]:
        """交换子每个条目中的候选项个数"""
        table = BWForm(matrix_class, n).commutator
        return [[len(table.entry(i, j).coeffs) for j in range(1, n + 1)] for i in range(1, n + 1)]

    @staticmethod
    def constraints_for(space: CandidateSpace, quads: Optional[Iterable[Quadruple]] = None) -> List[ConstraintMatrix]:
        quads = ConstraintBuilder.all_quadruples(space.m) if quads is None else quads
        return [ConstraintBuilder.plucker_constraint(q, space) for q in quads]
