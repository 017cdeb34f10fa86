"""
BW双二次型模块
负责把交换子条目表示为候选变量的线性型，构造目标Gram矩阵C和BW多项式
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Mapping, Tuple

from ..utils.exact import Number, SymMatrix, candidate_poly, entry_ring, to_qq
from ..utils.indexing import CandidateSpace, IndexMatrix, IndexUtils, MatrixClass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearForm:
    """候选变量的线性型，coeffs 的键为1起始的候选编号"""
    coeffs: Mapping[int, Fraction] = field(default_factory=dict, hash=False)

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[int, Number]]) -> "LinearForm":
        acc: Dict[int, Fraction] = {}
        for k, c in terms:
            acc[k] = acc.get(k, Fraction(0)) + Fraction(c)
        return cls({k: v for k, v in sorted(acc.items()) if v != 0})

    def terms(self) -> List[Tuple[int, Fraction]]:
        return sorted(self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm.from_terms(self.terms() + other.terms())

    def __neg__(self) -> "LinearForm":
        return self.scale(-1)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def scale(self, factor: Number) -> "LinearForm":
        return LinearForm.from_terms((k, c * factor) for k, c in self.terms())

    def gram_items(self) -> List[Tuple[Tuple[int, int], Fraction]]:
        """
        秩一矩阵 Gram(ℓ) 的上三角条目（0起始），满足 z^T·Gram·z = ℓ²
        """
        terms = self.terms()
        items = []
        for a, (k, ck) in enumerate(terms):
            for l, cl in terms[a:]:
                items.append(((k - 1, l - 1), ck * cl))
        return items

    def gram(self, order: int) -> SymMatrix:
        return SymMatrix.accumulate(order, self.gram_items())

    def to_poly(self, m: int):
        ring, _, _ = entry_ring(m)
        poly = ring.zero
        for k, c in self.terms():
            i, j = IndexUtils.decode(k)
            poly += candidate_poly(m, i, j) * to_qq(c)
        return poly

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in self.terms():
            i, j = IndexUtils.decode(k)
            name = f"z{i},{j}"
            if c == 1:
                parts.append(f"+{name}")
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{'+' if c > 0 else '-'}{abs(c)}*{name}")
        text = " ".join(parts)
        return text[1:] if text.startswith("+") else text


@dataclass(frozen=True)
class CommutatorTable:
    """R = [P,Q] 的 n×n 条目线性型"""
    n: int
    entries: Tuple[Tuple[LinearForm, ...], ...]

    def entry(self, i: int, j: int) -> LinearForm:
        """按1起始的行列取条目"""
        return self.entries[i - 1][j - 1]

    def cells(self):
        """按行优先遍历 (i, j, R(i,j))"""
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                yield i, j, self.entry(i, j)

    def trace_form(self) -> LinearForm:
        total = LinearForm()
        for i in range(1, self.n + 1):
            total = total + self.entry(i, i)
        return total


@dataclass(frozen=True)
class GramMatrix:
    """候选空间上的二次型矩阵"""
    space: CandidateSpace
    mat: SymMatrix

    def to_poly(self):
        return gram_poly(self.mat, self.space.m)


def class_scale(matrix_class: MatrixClass) -> Fraction:
    """z^T C z = s·BW 中的比例 s"""
    if MatrixClass(matrix_class) in (MatrixClass.TOEPLITZ, MatrixClass.HANKEL):
        return Fraction(1, 2)
    return Fraction(1)


def commutator_forms(ind: IndexMatrix) -> CommutatorTable:
    """
    R(i,j) = Σ_k z_{IND(i,k), IND(k,j)}，缺失的单元格不贡献
    """
    n = ind.n
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            terms = []
            for k in range(1, n + 1):
                a, b = ind.at(i, k), ind.at(k, j)
                if a is None or b is None:
                    continue
                normalized = IndexUtils.normalize_candidate(a, b)
                if normalized is not None:
                    terms.append(normalized)
            row.append(LinearForm.from_terms(terms))
        rows.append(tuple(row))
    return CommutatorTable(n, tuple(rows))


def toeplitz_multiplicities(n: int) -> Tuple[int, ...]:
    """Toeplitz 变量在 IND 中的出现次数：偏移 d 的上下对角线各 n−d 次"""
    upper = tuple(n - d for d in range(1, n))
    return upper + upper


@lru_cache(maxsize=None)
def objective_gram(matrix_class: MatrixClass, n: int) -> GramMatrix:
    """
    C = s·(2·diag(μ_a μ_b) − Σ Gram(R(i,j)))，满足 z^T C z = s·BW
    """
    form = BWForm(matrix_class, n)
    space = form.space
    items: List[Tuple[Tuple[int, int], Fraction]] = []
    for k, (a, b) in enumerate(space.pairs()):
        items.append(((k, k), Fraction(2 * space.mu[a - 1] * space.mu[b - 1])))
    for _, _, entry in form.commutator.cells():
        items.extend((key, -value) for key, value in entry.gram_items())
    mat = SymMatrix.accumulate(space.size, items).scale(form.scale)
    logger.debug(f"目标矩阵 C 构造完成: {form.matrix_class.value} n={n} N={space.size} trace={mat.trace()}")
    return GramMatrix(space, mat)


def gram_poly(mat: SymMatrix, m: int):
    """z^T M z 代入 z_{a,b} = p_a q_b − q_a p_b 后的多项式"""
    ring, _, _ = entry_ring(m)
    z = {}
    poly = ring.zero
    for (k, l), value in mat.entries.items():
        for idx in (k, l):
            if idx not in z:
                z[idx] = candidate_poly(m, *IndexUtils.decode(idx + 1))
        weight = value if k == l else 2 * value
        poly += z[k] * z[l] * to_qq(weight)
    return poly


def _entry_matrices(matrix_class: MatrixClass, n: int):
    ind = IndexUtils.build_index_matrix(matrix_class, n)
    ring, p, q = entry_ring(ind.m)
    P = [[p[c - 1] if c is not None else ring.zero for c in row] for row in ind.cells]
    Q = [[q[c - 1] if c is not None else ring.zero for c in row] for row in ind.cells]
    return ring, ind, P, Q


def bw_polynomial(matrix_class: MatrixClass, n: int):
    """
    BW(p,q) = 2(‖P‖²‖Q‖² − tr²(PᵀQ)) − ‖PQ − QP‖²
    """
    ring, ind, P, Q = _entry_matrices(matrix_class, n)
    norm_p = sum((P[i][j] ** 2 for i in range(n) for j in range(n)), ring.zero)
    norm_q = sum((Q[i][j] ** 2 for i in range(n) for j in range(n)), ring.zero)
    inner = sum((P[i][j] * Q[i][j] for i in range(n) for j in range(n)), ring.zero)
    commutator = ring.zero
    for i in range(n):
        for j in range(n):
            r = sum((P[i][k] * Q[k][j] - Q[i][k] * P[k][j] for k in range(n)), ring.zero)
            commutator += r ** 2
    return 2 * (norm_p * norm_q - inner ** 2) - commutator


def lagrange_identity_holds(matrix_class: MatrixClass, n: int) -> bool:
    """
    验证 2(‖P‖²‖Q‖² − tr²(PᵀQ)) = 2Σ_{i<j} μ_i μ_j z_{i,j}²
    """
    ring, ind, P, Q = _entry_matrices(matrix_class, n)
    space = IndexUtils.candidate_space(ind)
    norm_p = sum((P[i][j] ** 2 for i in range(n) for j in range(n)), ring.zero)
    norm_q = sum((Q[i][j] ** 2 for i in range(n) for j in range(n)), ring.zero)
    inner = sum((P[i][j] * Q[i][j] for i in range(n) for j in range(n)), ring.zero)
    weighted = ring.zero
    for a, b in space.pairs():
        weighted += candidate_poly(ind.m, a, b) ** 2 * (space.mu[a - 1] * space.mu[b - 1])
    return 2 * (norm_p * norm_q - inner ** 2) == 2 * weighted


def compressed_norm_matches(n: int) -> bool:
    """
    比较 Toeplitz 交换子的 ‖R‖² 与压缩公式 2Σ_{i=1}^{2}Σ_{j=1}^{n−i} R(i,j)²
    """
    table = BWForm(MatrixClass.TOEPLITZ, n).commutator
    m = 2 * (n - 1)
    full = sum((table.entry(i, j).to_poly(m) ** 2 for i, j, _ in table.cells()), entry_ring(m)[0].zero)
    compressed = entry_ring(m)[0].zero
    for i in range(1, 3):
        for j in range(1, n - i + 1):
            compressed += table.entry(i, j).to_poly(m) ** 2
    matches = full == 2 * compressed
    logger.info(f"Toeplitz n={n} 压缩范数公式{'一致' if matches else '不一致'}")
    return matches


class BWForm:
    """某一矩阵类、某一阶数下的BW型"""

    def __init__(self, matrix_class: MatrixClass, n: int):
        self.matrix_class = MatrixClass(matrix_class)
        self.n = n
        self.index_matrix = IndexUtils.build_index_matrix(self.matrix_class, n)
        self.space = IndexUtils.candidate_space(self.index_matrix)
        self.scale = class_scale(self.matrix_class)

    @cached_property
    def commutator(self) -> CommutatorTable:
        return commutator_forms(self.index_matrix)

    @property
    def objective(self) -> GramMatrix:
        return objective_gram(self.matrix_class, self.n)

    def polynomial(self):
        return bw_polynomial(self.matrix_class, self.n)

    def objective_matches_polynomial(self) -> bool:
        """z^T C z 代入后是否等于 s·BW"""
        return self.objective.to_poly() == self.polynomial() * to_qq(self.scale)
