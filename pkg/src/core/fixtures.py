"""
已发表数值数据
这里的矩阵和表格逐字录入，校验代码独立重算后与之比较
"""

# 一般矩阵 n=3 的 v_{1,2}
GENERAL3_V12 = (
    2, 0, 0, 2, 0, 0, 0, 2, 0, 2, 0, 0, 1, 0, 0, 0, 0, 0,
    0, 0, -1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0,
)

# 一般矩阵 n=3 的 2S 中包含第1行的块
GENERAL3_BLOCK_INDEX = (1, 4, 8, 10, 13, 21, 24, 28, 30, 32)
GENERAL3_BLOCK = (
    (3, 0, -2, 0, -1, 0, -1, 0, 0, 0),
    (0, 3, 0, -2, 0, 1, 0, -1, 0, 0),
    (-2, 0, 3, 0, 0, 0, -1, -1, 0, 0),
    (0, -2, 0, 3, -1, 1, 0, 0, 0, 0),
    (-1, 0, 0, -1, 5, 0, 0, -1, -1, 1),
    (0, 1, 0, 1, 0, 3, -1, 0, 0, 0),
    (-1, 0, -1, 0, 0, -1, 3, 0, 0, 0),
    (0, -1, -1, 0, -1, 0, 0, 5, 1, -1),
    (0, 0, 0, 0, -1, 0, 0, 1, 5, 0),
    (0, 0, 0, 0, 1, 0, 0, -1, 0, 5),
)
GENERAL3_BLOCK_EIGENVALUES = (0, 0, 3, 3, 4, 5, 5, 5, 5, 8)

# 三对角矩阵: n -> (λ=0, λ=1, λ=2, λ=3, 2阶块, 活跃约束, rk(X))
TRIDIAGONAL_TABLE = {
    2: (3, 0, 3, 0, 2, 0, 3),
    3: (7, 1, 12, 1, 6, 1, 7),
    4: (11, 2, 30, 2, 10, 2, 11),
    5: (15, 3, 57, 3, 14, 3, 15),
    6: (19, 4, 93, 4, 18, 4, 19),
    7: (23, 5, 138, 5, 22, 5, 23),
    8: (27, 6, 192, 6, 26, 6, 27),
}

# 反三对角矩阵: n -> (λ=0, λ=1, λ=2, λ=3, λ=4, 活跃约束, 2阶块, 4阶块, rk(X))，None 表示未给出
BACKWARD_TABLE = {
    2: (3, 0, 3, 0, 0, 2, 0, 0, 3),
    3: (8, None, None, None, None, 3, 3, 7, 5),
    4: (13, 4, 25, 0, 3, 6, 3, 8, 13),
    5: (20, None, None, None, None, 11, 6, 17, 18),
    6: (25, 6, 81, 2, 6, 14, 6, 18, 25),
    7: (32, None, None, None, None, 30, 9, 27, 30),
    8: (37, 8, 173, 4, 9, 22, 9, 28, 37),
}

# n=6 反三对角交换子每个条目的项数（* 处记为 2）
BACKWARD6_TERM_COUNTS = (
    (2, 2, 1, 0, 0, 0),
    (2, 3, 2, 1, 0, 0),
    (1, 2, 2, 2, 1, 0),
    (0, 1, 2, 2, 2, 1),
    (0, 0, 1, 2, 3, 2),
    (0, 0, 0, 1, 2, 2),
)

# Hankel n=3：打印的对偶向量（按字典序四元组）与 S
HANKEL3_Y_PRINTED = (0, 0, 1, 0, 0)
HANKEL3_S = (
    (1, 0, -1, 0, 0, -1, 0, 0, 0, 1),
    (0, 2, 0, 0, -1, 0, 0, 0, -1, 0),
    (-1, 0, 4, 0, 0, -2, 0, 0, 0, -1),
    (0, 0, 0, 2, 0, 0, 0, -1, 0, 0),
    (0, -1, 0, 0, 3, 0, 1, 0, -1, 0),
    (-1, 0, -2, 0, 0, 4, 0, 0, 0, -1),
    (0, 0, 0, 0, 1, 0, 1, 0, 0, 0),
    (0, 0, 0, -1, 0, 0, 0, 2, 0, 0),
    (0, -1, 0, 0, -1, 0, 0, 0, 2, 0),
    (1, 0, -1, 0, 0, -1, 0, 0, 0, 1),
)
# 在 C 中为零、在 S 中非零的位置（1起始，上三角）
HANKEL3_BRACE_ENTRIES = ((1, 10), (4, 8), (5, 7))

# 三个块：候选编号、矩阵、特征值、特征向量（每个元组是与特征值同序的一个向量）
HANKEL3_BLOCKS = (
    {
        "index": (1, 3, 6, 10),
        "matrix": ((1, -1, -1, 1), (-1, 4, -2, -1), (-1, -2, 4, -1), (1, -1, -1, 1)),
        "eigenvalues": (0, 0, 4, 6),
        "vectors": ((2, 1, 1, 0), (-1, 1, 1, 3), (1, -1, -1, 1), (0, 1, -1, 0)),
    },
    {
        "index": (2, 5, 7, 9),
        "matrix": ((2, -1, 0, -1), (-1, 3, 1, -1), (0, 1, 1, 0), (-1, -1, 0, 2)),
        "eigenvalues": (0, 1, 3, 4),
        "vectors": ((1, 1, -1, 1), (1, 0, 2, 1), (1, 0, 0, -1), (1, -3, -1, 1)),
    },
    {
        "index": (4, 8),
        "matrix": ((2, -1), (-1, 2)),
        "eigenvalues": (1, 3),
        "vectors": ((1, 1), (1, -1)),
    },
)

# 最终恒等式：左边的对角系数（按候选顺序）与减去的三个平方，右边的七个平方
# 线性型写成 ((i, j, 系数), ...)
HANKEL3_LHS_DIAGONAL = (2, 3, 6, 2, 4, 6, 1, 2, 3, 2)
HANKEL3_LHS_SUBTRACTED = (
    ((1, 3, 1), (2, 4, 1), (3, 5, 1)),
    ((1, 2, 1), (2, 3, 1), (3, 4, 1)),
    ((2, 3, 1), (3, 4, 1), (4, 5, 1)),
)
HANKEL3_RHS = (
    ((1, 1), ((1, 2, 1), (2, 3, -1), (3, 4, -1), (4, 5, 1))),
    ((3, 1), ((2, 3, 1), (3, 4, -1))),
    ((1, 6), ((1, 3, 1), (1, 5, 2), (3, 5, 1))),
    ((3, 2), ((1, 3, 1), (3, 5, -1))),
    ((1, 3), ((1, 3, 1), (2, 4, -3), (1, 5, -1), (3, 5, 1))),
    ((1, 2), ((1, 4, 1), (2, 5, 1))),
    ((3, 2), ((1, 4, 1), (2, 5, -1))),
)

# n=4 循环Hankel矩阵的六平方恒等式
CYCLIC4_SQUARES = (
    ((1, 2, 1), (2, 3, 1), (1, 4, -1), (3, 4, 1)),
    ((1, 2, 1), (2, 3, -1), (1, 4, 1), (3, 4, 1)),
    ((1, 2, 1), (1, 3, 1), (2, 4, -1), (3, 4, -1)),
    ((1, 2, 1), (1, 3, -1), (2, 4, 1), (3, 4, -1)),
    ((1, 3, 1), (2, 3, 1), (1, 4, 1), (2, 4, 1)),
    ((1, 3, 1), (2, 3, -1), (1, 4, -1), (2, 4, 1)),
)

# Toeplitz n=8 的关键块 B = [[D,H],[H,D]]
TOEPLITZ8_D = (42, 30, 20, 12, 6, 2)
TOEPLITZ8_H = (
    (-1, -1, -1, -1, -1, -1),
    (-1, -2, -2, -2, -2, -1),
    (-1, -2, -3, -3, -2, -1),
    (-1, -2, -3, -3, -2, -1),
    (-1, -2, -2, -2, -2, -1),
    (-1, -1, -1, -1, -1, -1),
)
# 打印的 p1 与按块精确重算后的 p1（x⁴ 系数 536 应为 3536）
TOEPLITZ8_P1_PRINTED = (1, -100, 536, -53472, 327472, -575680, -145152)
TOEPLITZ8_P1 = (1, -100, 3536, -53472, 327472, -575680, -145152)
TOEPLITZ8_NEGATIVE_ROOT = -0.2228
