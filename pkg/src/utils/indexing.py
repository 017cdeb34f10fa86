"""
下标工具模块
构造各矩阵类的"小"下标矩阵 IND、候选变量的线性编号 POS 以及符号归一化
"""
from dataclasses import dataclass
from enum import Enum
from math import isqrt
from typing import List, Optional, Tuple

from ..core.errors import BadPair, UnsupportedOrder


class MatrixClass(str, Enum):
    """支持的结构化矩阵类"""
    GENERAL = "general"
    TRIDIAGONAL = "tridiagonal"
    BACKWARD_TRIDIAGONAL = "backward"
    CYCLIC_HANKEL = "cyclic-hankel"
    HANKEL = "hankel"
    TOEPLITZ = "toeplitz"

    @classmethod
    def parse(cls, text: str) -> "MatrixClass":
        key = text.strip().lower().replace("_", "-")
        aliases = {
            "backward-tridiagonal": cls.BACKWARD_TRIDIAGONAL,
            "cyclic": cls.CYCLIC_HANKEL,
            "cyclichankel": cls.CYCLIC_HANKEL,
        }
        if key in aliases:
            return aliases[key]
        return cls(key)


@dataclass(frozen=True)
class IndexMatrix:
    """n×n 下标矩阵，cells[i][j] 为变量编号（1..m）或 None"""
    matrix_class: MatrixClass
    n: int
    cells: Tuple[Tuple[Optional[int], ...], ...]
    m: int

    def at(self, i: int, j: int) -> Optional[int]:
        """按1起始的行列取变量编号"""
        return self.cells[i - 1][j - 1]

    def occurrences(self) -> Tuple[int, ...]:
        counts = [0] * self.m
        for row in self.cells:
            for cell in row:
                if cell is not None:
                    counts[cell - 1] += 1
        return tuple(counts)

    def positions(self, var: int) -> List[Tuple[int, int]]:
        return [
            (i + 1, j + 1)
            for i, row in enumerate(self.cells)
            for j, cell in enumerate(row)
            if cell == var
        ]


@dataclass(frozen=True)
class CandidateSpace:
    """候选变量 z_{i,j} (i<j≤m) 的空间，mu 为每个变量在 IND 中的出现次数"""
    m: int
    mu: Tuple[int, ...]

    @property
    def size(self) -> int:
        return self.m * (self.m - 1) // 2

    def pos(self, i: int, j: int) -> int:
        if not (1 <= i < j <= self.m):
            raise BadPair(f"非法的候选下标对 ({i},{j})，m={self.m}")
        return IndexUtils.pos_index(i, j)

    def decode(self, k: int) -> Tuple[int, int]:
        if not (1 <= k <= self.size):
            raise BadPair(f"候选编号 {k} 越界，N={self.size}")
        return IndexUtils.decode(k)

    def normalize(self, a: int, b: int) -> Optional[Tuple[int, int]]:
        return IndexUtils.normalize_candidate(a, b)

    def pairs(self):
        """按候选编号顺序遍历 (i,j)"""
        for j in range(2, self.m + 1):
            for i in range(1, j):
                yield i, j


class IndexUtils:
    """下标工具类"""

    @staticmethod
    def build_index_matrix(matrix_class: MatrixClass, n: int) -> IndexMatrix:
        """
        按矩阵类构造下标矩阵
        """
        if n < 2:
            raise UnsupportedOrder(f"矩阵阶数必须至少为2，实际为 {n}")

        matrix_class = MatrixClass(matrix_class)
        grid: List[List[Optional[int]]] = [[None] * n for _ in range(n)]

        if matrix_class is MatrixClass.GENERAL:
            for i in range(n):
                for j in range(n):
                    grid[i][j] = i * n + j + 1
            m = n * n
        elif matrix_class in (MatrixClass.TRIDIAGONAL, MatrixClass.BACKWARD_TRIDIAGONAL):
            # 带内按行编号
            m = 0
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if matrix_class is MatrixClass.TRIDIAGONAL:
                        inside = abs(i - j) <= 1
                    else:
                        inside = abs(i + j - (n + 1)) <= 1
                    if inside:
                        m += 1
                        grid[i - 1][j - 1] = m
        elif matrix_class is MatrixClass.CYCLIC_HANKEL:
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    grid[i - 1][j - 1] = (i + j - 2) % n + 1
            m = n
        elif matrix_class is MatrixClass.HANKEL:
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    grid[i - 1][j - 1] = i + j - 1
            m = 2 * n - 1
        else:
            # Toeplitz：上对角线偏移 d 编号 d，下对角线编号 (n−1)+d，主对角线不参与
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if j > i:
                        grid[i - 1][j - 1] = j - i
                    elif i > j:
                        grid[i - 1][j - 1] = (n - 1) + (i - j)
            m = 2 * (n - 1)

        cells = tuple(tuple(row) for row in grid)
        return IndexMatrix(matrix_class, n, cells, m)

    @staticmethod
    def candidate_space(ind: IndexMatrix) -> CandidateSpace:
        return CandidateSpace(ind.m, ind.occurrences())

    @staticmethod
    def pos_index(i: int, j: int) -> int:
        """POS(i,j) = i + (j−1)(j−2)/2，要求 i < j"""
        if i < 1 or i >= j:
            raise BadPair(f"候选下标对必须满足 1 ≤ i < j，实际为 ({i},{j})")
        return i + (j - 1) * (j - 2) // 2

    @staticmethod
    def decode(k: int) -> Tuple[int, int]:
        """pos_index 的逆映射"""
        if k < 1:
            raise BadPair(f"候选编号必须为正，实际为 {k}")
        # 最小的 j 满足 j(j−1)/2 ≥ k
        j = (1 + isqrt(8 * k)) // 2
        while j * (j - 1) // 2 < k:
            j += 1
        while (j - 1) * (j - 2) // 2 >= k:
            j -= 1
        return k - (j - 1) * (j - 2) // 2, j

    @staticmethod
    def normalize_candidate(a: int, b: int) -> Optional[Tuple[int, int]]:
        """
        z_{a,b} 归一化为 (候选编号, 符号)，a=b 时返回 None（z_{i,i}=0）
        """
        if a == b:
            return None
        if a < b:
            return IndexUtils.pos_index(a, b), 1
        return IndexUtils.pos_index(b, a), -1
