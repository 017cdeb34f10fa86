"""
精确有理运算工具模块
提供稀疏对称有理矩阵、LDL半正定认证、零空间维数、特征多项式、连通分量和多项式环
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as csgraph_components
from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import xring

from ..config.settings import settings
from ..core.errors import NonSymmetricInput, OrderTooLarge

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


def to_qq(value: Number):
    """Fraction -> sympy QQ"""
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(value) -> Fraction:
    """sympy QQ -> Fraction"""
    return Fraction(int(value.numerator), int(value.denominator))


def format_rational(value: Number) -> str:
    """有理数序列化为 "num/den" 字符串"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """解析 "num/den" 或整数字符串"""
    return Fraction(text.strip())


@dataclass(frozen=True)
class SymMatrix:
    """
    稀疏对称有理矩阵，下标从0开始
    只存储上三角 (i <= j) 的非零元素
    """
    order: int
    entries: Mapping[Tuple[int, int], Fraction] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        for (i, j), value in self.entries.items():
            if not (0 <= i <= j < self.order) or value == 0:
                raise ValueError(f"非法的矩阵条目 ({i},{j})={value}，阶数 {self.order}")

    @classmethod
    def zero(cls, order: int) -> "SymMatrix":
        return cls(order, {})

    @classmethod
    def identity(cls, order: int, scale: Number = 1) -> "SymMatrix":
        scale = Fraction(scale)
        if scale == 0:
            return cls(order, {})
        return cls(order, {(i, i): scale for i in range(order)})

    @classmethod
    def accumulate(cls, order: int, items: Iterable[Tuple[Tuple[int, int], Number]]) -> "SymMatrix":
        """
        累加 ((i,j), value) 条目，(i,j) 与 (j,i) 视为同一位置
        """
        acc: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), value in items:
            key = (i, j) if i <= j else (j, i)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(value)
        return cls(order, {k: v for k, v in acc.items() if v != 0})

    @classmethod
    def from_mapping(cls, order: int, mapping: Mapping[Tuple[int, int], Number]) -> "SymMatrix":
        """
        由完整的条目映射构造，同时给出 (i,j) 和 (j,i) 时两者必须相等
        """
        acc: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), value in mapping.items():
            value = Fraction(value)
            key = (i, j) if i <= j else (j, i)
            mirror = mapping.get((j, i))
            if mirror is not None and Fraction(mirror) != value:
                raise NonSymmetricInput(f"条目 ({i},{j})={value} 与 ({j},{i})={mirror} 不对称")
            if value != 0:
                acc[key] = value
        return cls(order, acc)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[Number]]) -> "SymMatrix":
        order = len(rows)
        mapping = {}
        for i, row in enumerate(rows):
            if len(row) != order:
                raise NonSymmetricInput(f"第{i}行长度 {len(row)} 与阶数 {order} 不符")
            for j, value in enumerate(row):
                if value != 0:
                    mapping[(i, j)] = value
        return cls.from_mapping(order, mapping)

    def get(self, i: int, j: int) -> Fraction:
        key = (i, j) if i <= j else (j, i)
        return self.entries.get(key, Fraction(0))

    def diagonal(self) -> List[Fraction]:
        return [self.get(i, i) for i in range(self.order)]

    def trace(self) -> Fraction:
        return sum(self.diagonal(), Fraction(0))

    def off_diagonal(self) -> Dict[Tuple[int, int], Fraction]:
        return {k: v for k, v in self.entries.items() if k[0] != k[1]}

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        self._check_order(other)
        return SymMatrix.accumulate(self.order, list(self.entries.items()) + list(other.entries.items()))

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        return self + other.scale(-1)

    def scale(self, factor: Number) -> "SymMatrix":
        factor = Fraction(factor)
        if factor == 0:
            return SymMatrix.zero(self.order)
        return SymMatrix(self.order, {k: v * factor for k, v in self.entries.items()})

    def shift(self, value: Number) -> "SymMatrix":
        """返回 M + value·I"""
        return self + SymMatrix.identity(self.order, value)

    def submatrix(self, indices: Sequence[int]) -> "SymMatrix":
        local = {g: l for l, g in enumerate(indices)}
        items = []
        for (i, j), value in self.entries.items():
            if i in local and j in local:
                items.append(((local[i], local[j]), value))
        return SymMatrix.accumulate(len(indices), items)

    def permuted(self, perm: Sequence[int]) -> "SymMatrix":
        """perm[new] = old"""
        return self.submatrix(perm)

    def to_dense(self) -> List[List[Fraction]]:
        rows = [[Fraction(0)] * self.order for _ in range(self.order)]
        for (i, j), value in self.entries.items():
            rows[i][j] = value
            rows[j][i] = value
        return rows

    def to_float(self) -> np.ndarray:
        dense = np.zeros((self.order, self.order))
        for (i, j), value in self.entries.items():
            dense[i, j] = float(value)
            dense[j, i] = float(value)
        return dense

    def to_domain(self) -> DomainMatrix:
        rows = [[to_qq(v) for v in row] for row in self.to_dense()]
        return DomainMatrix(rows, (self.order, self.order), QQ)

    def matvec(self, vector: Sequence[Number]) -> List[Fraction]:
        if len(vector) != self.order:
            raise ValueError(f"向量长度 {len(vector)} 与阶数 {self.order} 不符")
        out = [Fraction(0)] * self.order
        for (i, j), value in self.entries.items():
            out[i] += value * vector[j]
            if i != j:
                out[j] += value * vector[i]
        return out

    def quadratic_form(self, vector: Sequence[Number]) -> Fraction:
        total = Fraction(0)
        for (i, j), value in self.entries.items():
            term = value * vector[i] * vector[j]
            total += term if i == j else 2 * term
        return total

    def inner(self, other: "SymMatrix") -> Fraction:
        """trace(self·other)"""
        self._check_order(other)
        small, big = (self, other) if len(self.entries) <= len(other.entries) else (other, self)
        total = Fraction(0)
        for (i, j), value in small.entries.items():
            partner = big.entries.get((i, j))
            if partner is not None:
                total += value * partner if i == j else 2 * value * partner
        return total

    def _check_order(self, other: "SymMatrix"):
        if other.order != self.order:
            raise ValueError(f"矩阵阶数不一致: {self.order} != {other.order}")


@dataclass(frozen=True)
class LDLCertificate:
    """
    P^T·L·D·L^T·P = M 的精确分解
    permutation[r] 是第 r 个主元对应的原始下标，lower 以置换后的坐标存储严格下三角部分
    """
    order: int
    permutation: Tuple[int, ...]
    diag: Tuple[Fraction, ...]
    lower: Mapping[Tuple[int, int], Fraction] = field(hash=False)
    rank: int = 0

    def column(self, c: int) -> Dict[int, Fraction]:
        """L 的第 c 列（置换坐标，含对角1）"""
        col = {c: Fraction(1)}
        for (r, k), value in self.lower.items():
            if k == c:
                col[r] = value
        return col

    def reconstruct(self) -> SymMatrix:
        columns: Dict[int, Dict[int, Fraction]] = {c: {c: Fraction(1)} for c in range(self.order)}
        for (r, c), value in self.lower.items():
            columns[c][r] = value
        items = []
        for c, d in enumerate(self.diag):
            if d == 0:
                continue
            col = sorted(columns[c].items())
            for a, (ra, va) in enumerate(col):
                for rb, vb in col[a:]:
                    items.append(((self.permutation[ra], self.permutation[rb]), d * va * vb))
        return SymMatrix.accumulate(self.order, items)


@dataclass(frozen=True)
class NotPSD:
    """非半正定的见证向量 w，满足 w^T M w = value < 0"""
    witness: Tuple[Fraction, ...]
    value: Fraction


class ExactUtils:
    """精确线性代数工具类"""

    @staticmethod
    def connected_components(matrix: SymMatrix) -> List[List[int]]:
        """
        按稀疏图 (i~j 当 M(i,j)≠0) 划分下标
        返回的块按大小降序排列，大小相同时按最小下标升序
        """
        if matrix.order == 0:
            return []
        rows, cols = [], []
        for (i, j) in matrix.off_diagonal():
            rows.append(i)
            cols.append(j)
        graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(matrix.order, matrix.order))
        _, labels = csgraph_components(graph.tocsr(), directed=False)
        blocks: Dict[int, List[int]] = {}
        for index, label in enumerate(labels):
            blocks.setdefault(int(label), []).append(index)
        return sorted(blocks.values(), key=lambda block: (-len(block), block[0]))

    @staticmethod
    def ldl_psd_certify(matrix: SymMatrix) -> Union[LDLCertificate, NotPSD]:
        """
        逐连通分量做最大对角主元的 LDL^T 分解
        成功返回精确分解；失败返回 w^T M w < 0 的见证向量
        见证向量不唯一，取决于主元顺序：[[1,2],[2,1]] 给出 (−2, 1)，值为 −3
        """
        permutation: List[int] = []
        diag: List[Fraction] = []
        lower: Dict[Tuple[int, int], Fraction] = {}

        for block in ExactUtils.connected_components(matrix):
            offset = len(permutation)
            result = _ldl_dense(matrix.submatrix(block).to_dense())
            if isinstance(result, tuple) and len(result) == 2:
                local_witness, value = result
                witness = [Fraction(0)] * matrix.order
                for local, original in enumerate(block):
                    witness[original] = local_witness[local]
                check = matrix.quadratic_form(witness)
                assert check == value and check < 0, "见证向量校验失败"
                logger.debug(f"块(大小 {len(block)})非半正定，见证值 {value}")
                return NotPSD(tuple(witness), check)
            local_perm, local_diag, local_lower = result
            permutation.extend(block[p] for p in local_perm)
            diag.extend(local_diag)
            for (r, c), value in local_lower.items():
                lower[(r + offset, c + offset)] = value

        rank = sum(1 for d in diag if d > 0)
        return LDLCertificate(matrix.order, tuple(permutation), tuple(diag), lower, rank)

    @staticmethod
    def nullity_at(matrix: SymMatrix, value: Number) -> int:
        """dim ker(M − λI)，逐连通分量精确求秩"""
        value = Fraction(value)
        total = 0
        for block in ExactUtils.connected_components(matrix):
            if len(block) == 1:
                total += 1 if matrix.get(block[0], block[0]) == value else 0
                continue
            shifted = matrix.submatrix(block).shift(-value)
            total += len(block) - shifted.to_domain().rank()
        return total

    @staticmethod
    def rational_spectrum(matrix: SymMatrix, candidates: Iterable[Number]) -> Dict[Fraction, int]:
        """在候选特征值上统计重数（只保留非零重数）"""
        spectrum = {}
        for value in sorted(set(Fraction(c) for c in candidates)):
            multiplicity = ExactUtils.nullity_at(matrix, value)
            if multiplicity:
                spectrum[value] = multiplicity
        return spectrum

    @staticmethod
    def char_poly(matrix: SymMatrix, max_order: Optional[int] = None) -> List[Fraction]:
        """首一特征多项式系数，从最高次开始"""
        bound = settings.charpoly_max_order if max_order is None else max_order
        if matrix.order > bound:
            raise OrderTooLarge(matrix.order, bound)
        if matrix.order == 0:
            return [Fraction(1)]
        return [from_qq(c) for c in matrix.to_domain().charpoly()]

    @staticmethod
    def determinant(matrix: SymMatrix) -> Fraction:
        if matrix.order == 0:
            return Fraction(1)
        return from_qq(matrix.to_domain().det())

    @staticmethod
    def eval_poly(coeffs: Sequence[Number], x: Number) -> Fraction:
        """Horner 法精确求值，系数从最高次开始"""
        x = Fraction(x)
        acc = Fraction(0)
        for c in coeffs:
            acc = acc * x + c
        return acc


def _ldl_dense(a: List[List[Fraction]]):
    """
    稠密块的半正定 LDL^T
    返回 (perm, diag, lower) 或 (witness, value)
    """
    k = len(a)
    perm = list(range(k))
    lower: Dict[Tuple[int, int], Fraction] = {}
    diag: List[Fraction] = []

    def witness_from(u: List[Fraction]):
        # 解 L^T w = u（置换坐标），再映射回块内原始下标
        w = list(u)
        for i in range(k - 1, -1, -1):
            for j in range(i + 1, k):
                lij = lower.get((j, i))
                if lij:
                    w[i] -= lij * w[j]
        local = [Fraction(0)] * k
        for pos, original in enumerate(perm):
            local[original] = w[pos]
        value = sum(
            (local[i] * a_orig[i][j] * local[j] for i in range(k) for j in range(k) if a_orig[i][j]),
            Fraction(0),
        )
        return local, value

    a_orig = [row[:] for row in a]

    for step in range(k):
        remaining = range(step, k)
        lowest = min(remaining, key=lambda r: a[r][r])
        if a[lowest][lowest] < 0:
            u = [Fraction(0)] * k
            u[lowest] = Fraction(1)
            return witness_from(u)

        pivot = max(remaining, key=lambda r: a[r][r])
        if a[pivot][pivot] == 0:
            # 剩余对角全为零，剩余块必须全为零
            for r in range(step, k):
                for s in range(r + 1, k):
                    if a[r][s] != 0:
                        u = [Fraction(0)] * k
                        u[r] = Fraction(1)
                        u[s] = Fraction(-1) if a[r][s] > 0 else Fraction(1)
                        return witness_from(u)
            diag.extend([Fraction(0)] * (k - step))
            return perm, diag, lower

        if pivot != step:
            a[step], a[pivot] = a[pivot], a[step]
            for row in a:
                row[step], row[pivot] = row[pivot], row[step]
            perm[step], perm[pivot] = perm[pivot], perm[step]
            for c in range(step):
                x, y = lower.pop((step, c), None), lower.pop((pivot, c), None)
                if x is not None:
                    lower[(pivot, c)] = x
                if y is not None:
                    lower[(step, c)] = y

        d = a[step][step]
        diag.append(d)
        column = {}
        for i in range(step + 1, k):
            if a[i][step] != 0:
                column[i] = a[i][step] / d
                lower[(i, step)] = column[i]
        for i, li in column.items():
            for j, lj in column.items():
                if j <= i:
                    a[i][j] -= li * lj * d
                    a[j][i] = a[i][j]
        for i in range(step + 1, k):
            a[i][step] = a[step][i] = Fraction(0)

    return perm, diag, lower


@lru_cache(maxsize=None)
def entry_ring(m: int):
    """
    变量 p_1..p_m, q_1..q_m 上的有理多项式环
    返回 (ring, p_gens, q_gens)
    """
    names = [f"p{i}" for i in range(1, m + 1)] + [f"q{i}" for i in range(1, m + 1)]
    ring, gens = xring(names, QQ)
    return ring, tuple(gens[:m]), tuple(gens[m:])


def candidate_poly(m: int, a: int, b: int):
    """z_{a,b} = p_a q_b − q_a p_b（下标从1开始）"""
    _, p, q = entry_ring(m)
    return p[a - 1] * q[b - 1] - q[a - 1] * p[b - 1]
