"""
数值SDP求解模块
用 cvxopt 的原始-对偶内点法求解 min tr(CX), tr(X)=1, tr(A_t X)=0, X ⪰ 0，
并把近似最优的对偶变量有理化为精确证书
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import islice
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from cvxopt import matrix, solvers, spmatrix
from scipy.sparse import coo_matrix, csr_matrix
from scipy.sparse.csgraph import connected_components

from .bwform import GramMatrix, objective_gram
from .certificates import CertificateVerifier, DualCertificate
from .constraints import ConstraintBuilder, ConstraintMatrix, DualVector, Quadruple
from .errors import MaxIterations, OrderTooLarge
from ..config.settings import settings
from ..utils.exact import ExactUtils, LDLCertificate, format_rational
from ..utils.indexing import IndexUtils, MatrixClass
from ..utils.report_utils import Report

logger = logging.getLogger(__name__)

ZERO_THRESHOLD = 1e-6
ACTIVE_THRESHOLD = 1e-4


class RationalVerdict(str, Enum):
    CERTIFIED_EXACT = "CertifiedExact"
    ROUNDED_NOT_PSD = "RoundedButNotPSD"


@dataclass(frozen=True)
class SDPInstance:
    """C、约束列表，normalize_trace 为真时加入 tr(X)=1 以及对应的对偶平移"""
    C: GramMatrix
    constraints: List[ConstraintMatrix]
    normalize_trace: bool = True
    matrix_class: Optional[MatrixClass] = None
    n: Optional[int] = None

    @property
    def quadruples(self) -> Tuple[Quadruple, ...]:
        return tuple(c.quad for c in self.constraints)


@dataclass
class SolverResult:
    X: np.ndarray
    y: np.ndarray
    w: float
    S: np.ndarray
    objective: float
    primal_residual: float
    dual_residual: float
    min_eig_S: float
    iterations: int
    status: str
    quadruples: Tuple[Quadruple, ...] = field(default_factory=tuple)

    @property
    def gamma(self) -> float:
        return -self.w

    @property
    def y_full(self) -> np.ndarray:
        """(y_1..y_M, y_{M+1})，最后一个分量为对角平移的对偶变量"""
        return np.append(self.y, self.w)


@dataclass(frozen=True)
class RationalizedDual:
    dual: DualVector
    verdict: RationalVerdict
    certificate: Optional[DualCertificate] = None


def _constraint_columns(inst: SDPInstance) -> coo_matrix:
    """按列存放 vec(A_t)（列优先展开），最后一列为 vec(I)"""
    N = inst.C.mat.order
    rows, cols, vals = [], [], []
    for col, constraint in enumerate(inst.constraints):
        for (a, b), value in constraint.mat.entries.items():
            v = float(value)
            rows.append(a + b * N)
            cols.append(col)
            vals.append(v)
            if a != b:
                rows.append(b + a * N)
                cols.append(col)
                vals.append(v)
    width = len(inst.constraints)
    if inst.normalize_trace:
        for i in range(N):
            rows.append(i + i * N)
            cols.append(width)
            vals.append(1.0)
        width += 1
    return coo_matrix((vals, (rows, cols)), shape=(N * N, width))


class SDPExplorer:
    """数值SDP求解与有理化"""

    @staticmethod
    def select_quadruples(matrix_class: MatrixClass, n: int, max_constraints: Optional[int] = None,
                          margin: Optional[int] = None) -> List[Quadruple]:
        """
        约束总数不超过上限时取全部四元组；否则取交换子混合项的支撑、
        与 C 的非零非对角元相交的四元组，再按字典序补充 margin 个
        """
        max_constraints = settings.max_constraints if max_constraints is None else max_constraints
        margin = settings.constraint_margin if margin is None else margin
        C = objective_gram(matrix_class, n)
        m = C.space.m
        if comb(m, 4) <= max_constraints:
            return list(ConstraintBuilder.all_quadruples(m))

        chosen = {q for q, _ in ConstraintBuilder.dual_from_commutator(matrix_class, n).support()}
        for (a, b) in C.mat.off_diagonal():
            ids = set(IndexUtils.decode(a + 1)) | set(IndexUtils.decode(b + 1))
            if len(ids) == 4:
                chosen.add(tuple(sorted(ids)))
        extra = islice((q for q in ConstraintBuilder.all_quadruples(m) if q not in chosen), margin)
        chosen.update(extra)
        logger.info(f"约束子集: {len(chosen)} / {comb(m, 4)} 个四元组")
        return sorted(chosen)

    @staticmethod
    def build_instance(matrix_class: MatrixClass, n: int, quadruples: Optional[Sequence[Quadruple]] = None,
                       normalize_trace: bool = True) -> SDPInstance:
        matrix_class = MatrixClass(matrix_class)
        C = objective_gram(matrix_class, n)
        quads = SDPExplorer.select_quadruples(matrix_class, n) if quadruples is None else list(quadruples)
        return SDPInstance(C, ConstraintBuilder.constraints_for(C.space, quads), normalize_trace, matrix_class, n)

    @staticmethod
    def solve(inst: SDPInstance, tol: Optional[float] = None, maxit: Optional[int] = None) -> SolverResult:
        """
        对偶形式 max w, C − Σ y_t A_t − w·I ⪰ 0 交给 cvxopt.solvers.sdp
        cvxopt 的对偶变量 zs[0] 即原始问题的 X
        """
        tol = settings.tol if tol is None else tol
        maxit = settings.maxit if maxit is None else maxit
        N = inst.C.mat.order
        if N > settings.solver_max_order:
            raise OrderTooLarge(N, settings.solver_max_order)

        M = len(inst.constraints)
        G = _constraint_columns(inst)
        width = G.shape[1]
        c = np.zeros(width)
        if inst.normalize_trace:
            c[-1] = -1.0
        C = inst.C.mat.to_float()

        logger.info(f"开始求解SDP: 阶数 {N}，约束 {M} 个，tol={tol}，maxit={maxit}")
        sol = solvers.sdp(
            matrix(c),
            Gs=[spmatrix(G.data.tolist(), G.row.tolist(), G.col.tolist(), (N * N, width))],
            hs=[matrix(np.ascontiguousarray(C))],
            options={"show_progress": False, "abstol": tol, "reltol": tol, "feastol": tol, "maxiters": maxit},
        )

        x = np.array(sol["x"]).ravel()
        X = np.array(sol["zs"][0])
        S = np.array(sol["ss"][0])
        Gc = G.tocsr()
        primal = np.abs(Gc.T @ X.ravel(order="F") + c)
        dual = np.abs(C.ravel(order="F") - Gc @ x - S.ravel(order="F"))
        w = float(x[M]) if inst.normalize_trace else 0.0
        result = SolverResult(
            X=X,
            y=x[:M],
            w=w,
            S=S,
            objective=float(np.sum(C * X)),
            primal_residual=float(primal.max()) if primal.size else 0.0,
            dual_residual=float(dual.max()) if dual.size else 0.0,
            min_eig_S=float(np.linalg.eigvalsh(S).min()),
            iterations=int(sol.get("iterations") or 0),
            status=str(sol["status"]),
            quadruples=inst.quadruples,
        )
        logger.info(f"求解结束: 状态 {result.status}，目标 {result.objective:.8f}，"
                    f"残差 {result.primal_residual:.2e}/{result.dual_residual:.2e}，迭代 {result.iterations}")
        if result.status != "optimal":
            raise MaxIterations(f"求解器未收敛（状态 {result.status}，迭代 {result.iterations}）", result)
        return result

    @staticmethod
    def estimate_gamma(matrix_class: MatrixClass, n: int, tol: Optional[float] = None) -> float:
        """最优对偶目标的相反数"""
        return SDPExplorer.solve(SDPExplorer.build_instance(matrix_class, n), tol).gamma

    @staticmethod
    def rationalize(y_float: Sequence[float], max_denominator: Optional[int], inst: SDPInstance) -> RationalizedDual:
        """
        按绝对值从大到小逐个取分母不超过 max_denominator 的最佳有理逼近，
        精确组装 S 后用 LDL 认证；y_float 可以带上最后一个分量 y_{M+1}
        """
        max_denominator = settings.max_denominator if max_denominator is None else max_denominator
        values = [float(v) for v in y_float]
        M = len(inst.constraints)
        w = values[M] if len(values) > M else 0.0
        order = sorted(range(M), key=lambda i: (-abs(values[i]), i))
        y: Dict[Quadruple, Fraction] = {}
        for i in order:
            value = Fraction(values[i]).limit_denominator(max_denominator)
            if value != 0:
                y[inst.constraints[i].quad] = value
        gamma = -Fraction(w).limit_denominator(max_denominator)
        dual = DualVector(dict(sorted(y.items())), gamma)

        dc = CertificateVerifier.build_dual(inst.matrix_class, inst.n, dual)
        cert = ExactUtils.ldl_psd_certify(dc.S.mat)
        verdict = RationalVerdict.CERTIFIED_EXACT if isinstance(cert, LDLCertificate) else RationalVerdict.ROUNDED_NOT_PSD
        logger.info(f"有理化: {dual.active_count} 个非零 y，gamma={format_rational(gamma)}，{verdict.value}")
        return RationalizedDual(dual, verdict, dc)

    @staticmethod
    def rounded_spectrum(S: np.ndarray, values: Sequence[int]) -> Tuple[Dict[int, int], float]:
        """特征值取整后的重数，以及最大取整误差"""
        eigs = np.linalg.eigvalsh(S)
        rounded = np.rint(eigs)
        residual = float(np.abs(eigs - rounded).max()) if eigs.size else 0.0
        return {v: int(np.sum(rounded == v)) for v in values}, residual

    @staticmethod
    def block_sizes_float(S: np.ndarray) -> Dict[int, int]:
        graph = csr_matrix(np.abs(S) > ZERO_THRESHOLD)
        _, labels = connected_components(graph, directed=False)
        sizes: Dict[int, int] = {}
        for size in np.bincount(labels):
            sizes[int(size)] = sizes.get(int(size), 0) + 1
        return sizes

    @staticmethod
    def active_dual_count(y: Sequence[float], threshold: float = ACTIVE_THRESHOLD) -> int:
        """SDP 解中 |y_t| 超过阈值的对偶变量个数"""
        return int(np.sum(np.abs(np.asarray(y, dtype=float)) > threshold))

    @staticmethod
    def table3_row(n: int, tol: Optional[float] = None) -> Tuple[int, ...]:
        """反三对角矩阵 (λ=0..4, 活跃对偶变量, 2阶块, 4阶块, rk(X))，活跃数按数值解的 |y_t| 计"""
        inst = SDPExplorer.build_instance(MatrixClass.BACKWARD_TRIDIAGONAL, n)
        result = SDPExplorer.solve(inst, tol)
        spectrum, residual = SDPExplorer.rounded_spectrum(result.S, range(5))
        if residual > 1e-5:
            logger.warning(f"反三对角 n={n} 特征值取整误差 {residual:.2e}")
        active = SDPExplorer.active_dual_count(result.y)
        sizes = SDPExplorer.block_sizes_float(result.S)
        rank_x = int(np.sum(np.linalg.eigvalsh(result.X) > ZERO_THRESHOLD))
        logger.debug(f"反三对角 n={n}: 活跃对偶 {active}，块 {sizes}，rk(X)={rank_x}")
        return (*(spectrum[v] for v in range(5)), active, sizes.get(2, 0), sizes.get(4, 0), rank_x)

    @staticmethod
    def explore_report(matrix_class: MatrixClass, n: int, tol: Optional[float] = None,
                       max_denominator: Optional[int] = None, report: Optional[Report] = None) -> Report:
        """求解、有理化并把结果记入猜想台账"""
        matrix_class = MatrixClass(matrix_class)
        report = report or Report(command="explore", matrix_class=matrix_class.value, n=n)
        inst = SDPExplorer.build_instance(matrix_class, n)
        try:
            result = SDPExplorer.solve(inst, tol)
            converged = True
        except MaxIterations as e:
            logger.warning(str(e))
            result = e.result
            converged = False
        rationalized = SDPExplorer.rationalize(result.y_full, max_denominator, inst)

        report.add("solver_converged", converged, result.status, exact=False)
        report.details["gamma_estimate"] = round(result.gamma, 8)
        report.details["objective"] = round(result.objective, 8)
        report.details["primal_residual"] = result.primal_residual
        report.details["dual_residual"] = result.dual_residual
        report.details["min_eig_S"] = result.min_eig_S
        report.details["constraints"] = len(inst.constraints)
        report.control("gamma_rational", rationalized.dual.gamma)
        report.details.setdefault("ledger", []).append({
            "class": matrix_class.value,
            "n": n,
            "gamma": round(result.gamma, 8),
            "active": rationalized.dual.active_count,
            "verdict": rationalized.verdict.value,
        })
        # 台账只记录结论，有理化失败不算数学错误
        report.details["verdict"] = rationalized.verdict.value
        return report
