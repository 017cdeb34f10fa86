"""
证书模块
构造并校验原始/对偶证书，从Gram矩阵提取平方和分解，复现一般矩阵的块结构与控制和
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import Poly, Rational as SymRational, Symbol

from .bwform import BWForm, GramMatrix, LinearForm, objective_gram
from .constraints import ConstraintBuilder, DualVector, Quadruple
from .errors import CertificateFormatError, DimensionMismatch, NotCertified
from ..config.settings import settings
from ..utils.exact import (
    ExactUtils,
    LDLCertificate,
    NotPSD,
    SymMatrix,
    candidate_poly,
    entry_ring,
    format_rational,
    parse_rational,
    to_qq,
)
from ..utils.indexing import IndexUtils, MatrixClass
from ..utils.report_utils import Report

logger = logging.getLogger(__name__)

FORMAT_TAG = "bwsos v1"


@dataclass(frozen=True)
class PrimalCertificate:
    """原始证书：向量 v_{i,j}（稀疏，1起始候选编号）与 X0 = Σ v v^T"""
    n: int
    pairs: Tuple[Tuple[int, int], ...]
    vectors: Tuple[Mapping[int, int], ...]
    X0: SymMatrix
    normalizer: Fraction

    @property
    def X(self) -> SymMatrix:
        return self.X0.scale(self.normalizer)

    def dense(self, index: int) -> List[int]:
        vector = self.vectors[index]
        return [vector.get(k, 0) for k in range(1, self.X0.order + 1)]


@dataclass(frozen=True)
class DualCertificate:
    """对偶证书 S = C − Σ y_t A_t + gamma·I"""
    matrix_class: MatrixClass
    n: int
    dual: DualVector
    S: GramMatrix

    @property
    def gamma(self) -> Fraction:
        return self.dual.gamma


@dataclass(frozen=True)
class SOSDecomposition:
    """Σ c_r·ℓ_r² 的平方和分解"""
    terms: Tuple[Tuple[Fraction, LinearForm], ...] = ()

    def gram(self, order: int) -> SymMatrix:
        items = []
        for c, form in self.terms:
            items.extend((key, c * value) for key, value in form.gram_items())
        return SymMatrix.accumulate(order, items)

    def to_poly(self, m: int):
        ring, _, _ = entry_ring(m)
        poly = ring.zero
        for c, form in self.terms:
            poly += form.to_poly(m) ** 2 * to_qq(c)
        return poly


@dataclass(frozen=True)
class Certificate:
    """可导出的证书：对偶变量加平方和分解"""
    matrix_class: MatrixClass
    n: int
    dual: DualVector
    sos: SOSDecomposition = field(default_factory=SOSDecomposition)


def _counts(pairs: Iterable[Tuple[int, int]]) -> Dict[Fraction, int]:
    acc: Dict[Fraction, int] = {}
    for value, mult in pairs:
        if mult:
            acc[Fraction(value)] = acc.get(Fraction(value), 0) + mult
    return dict(sorted(acc.items()))


def _block_kind(n: int, size: int) -> Optional[str]:
    if size == 6 * n - 8:
        return "big"
    if size == comb(n, 2):
        return "middle"
    if size == 4:
        return "four"
    if size == 1:
        return "scalar"
    return None


def _verify_table1(dc: DualCertificate, components: List[List[int]], defect: int, report: Report,
                   published_totals: bool = True):
    n = dc.n
    two_s = dc.S.mat.scale(2)
    expected = CertificateVerifier.table1_expectations(n)
    c2 = comb(n, 2)

    sizes = Counter(len(block) for block in components)
    report.add("block_sizes", dict(sizes) == expected["blocks"],
               f"实际 {dict(sorted(sizes.items()))}，期望 {expected['blocks']}")
    report.add("defect", defect == n * n - 1, f"亏量 {defect}，期望 {n * n - 1}")

    candidates = [0, 4, n, n + 2, n + 4, 2 * n + 2]
    spectra_ok = True
    complete = True
    diag_ok = True
    totals: Counter = Counter()
    for index, block in enumerate(components):
        kind = _block_kind(n, len(block))
        sub = two_s.submatrix(block)
        spectrum, missing = CertificateVerifier.block_spectrum(sub, candidates)
        complete = complete and missing == 0
        totals.update(spectrum)
        if index < 3 or kind in ("middle",):
            report.spectrum(f"2S:block{index}:{kind}", spectrum)
        if kind is None or spectrum != expected[kind]:
            spectra_ok = False
            logger.warning(f"块 {index}（{kind}，大小 {len(block)}）谱 {spectrum} 与期望 {expected.get(kind)} 不符")
        if kind == "big":
            diagonal = sub.diagonal()
            if diagonal.count(n) != 2 * n or diagonal.count(n + 2) != 4 * (n - 2):
                diag_ok = False
    report.add("block_spectra", spectra_ok, "各块 2S 谱与块表逐列一致")
    report.add("spectra_complete", complete, "各块重数之和等于块阶数")
    report.add("big_block_diagonal", diag_ok, f"大块对角线含 {2 * n} 个 {n} 与 {4 * (n - 2)} 个 {n + 2}")
    report.spectrum("2S:total", totals)

    # 表格总数列逐行比较，后三行为已知的发表值不一致
    eig_sum = 0
    weighted = Fraction(0)
    for label, value, recomputed, printed in CertificateVerifier.table1_rows(n):
        eig_sum += recomputed
        weighted += recomputed * value
        flagged = label in ("n+2", "n+4", "2n+2")
        if not published_totals:
            continue
        report.add(
            f"table1_total_Eig={label}",
            recomputed == printed,
            f"重算 {recomputed}，表中 {format_rational(printed)}",
            published_mismatch=flagged,
        )

    trace_2s = two_s.trace()
    trace_c = objective_gram(MatrixClass.GENERAL, n).mat.trace()
    report.control("trace_2S", trace_2s)
    report.control("defect", defect)
    report.control("order", dc.S.mat.order)
    report.add("ROW_control", defect == 2 * c2 + (n - 1), "C(n,2)·2 + (n−1) = n²−1")
    report.add("EIG_control", eig_sum == comb(n * n, 2), f"重数总和 {eig_sum} = C(n²,2)")
    report.add("DIAG_control", trace_2s == c2 * (n + 1) * (n * n + 2 * n - 4),
               f"trace(2S) = {trace_2s}")
    report.add("DIAG_weighted", weighted == trace_2s, "Σ 特征值·重数 = trace(2S)")
    report.add("TRACE_control", trace_c == n * (n - 1) ** 2 * (n + 1), f"trace(C) = {trace_c}")
    report.add("trace_relation", trace_2s == 2 * (trace_c + dc.gamma * comb(n * n, 2)),
               "trace(2S) = 2(trace(C) + gamma·C(n²,2))")
    max_eig = max(totals) if totals else Fraction(0)
    report.add("max_eigenvalue", max_eig / 2 <= n + 1, f"S 的最大特征值 {format_rational(max_eig / 2)}")


class CertificateVerifier:
    """原始/对偶证书的构造、校验与导出"""

    # 原始证书

    @staticmethod
    def primal_vector(n: int, i: int, j: int) -> Dict[int, int]:
        """
        v_{i,j}：四组内积 ⟨row_i,col_j⟩、⟨col_i,row_j⟩、⟨row_i,row_j⟩、⟨col_i,col_j⟩ 的下标对
        经归一化后的单位向量带符号求和
        """
        ind = IndexUtils.build_index_matrix(MatrixClass.GENERAL, n)
        vector: Dict[int, int] = {}
        for k in range(1, n + 1):
            for a, b in (
                (ind.at(i, k), ind.at(k, j)),
                (ind.at(k, i), ind.at(j, k)),
                (ind.at(i, k), ind.at(j, k)),
                (ind.at(k, i), ind.at(k, j)),
            ):
                normalized = IndexUtils.normalize_candidate(a, b)
                if normalized is None:
                    continue
                pos, sign = normalized
                vector[pos] = vector.get(pos, 0) + sign
        return {k: v for k, v in sorted(vector.items()) if v != 0}

    @staticmethod
    def build_primal(n: int) -> PrimalCertificate:
        """一般矩阵的原始证书，归一化因子 1/(4(n+2)·C(n,2))"""
        size = comb(n * n, 2)
        pairs = tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))
        vectors = tuple(CertificateVerifier.primal_vector(n, i, j) for i, j in pairs)
        items = []
        for vector in vectors:
            entries = sorted(vector.items())
            for a, (ka, va) in enumerate(entries):
                for kb, vb in entries[a:]:
                    items.append(((ka - 1, kb - 1), va * vb))
        X0 = SymMatrix.accumulate(size, items)
        normalizer = Fraction(1, 4 * (n + 2) * comb(n, 2)) if n > 1 else Fraction(1)
        logger.debug(f"原始证书 n={n}: {len(vectors)} 个向量，X0 非零元 {len(X0.entries)}")
        return PrimalCertificate(n, pairs, vectors, X0, normalizer)

    @staticmethod
    def primal_feasibility_check(pc: PrimalCertificate, quadruples: Optional[Iterable[Quadruple]] = None) -> bool:
        """对给定（默认全部）四元组检验 trace(A_t·X0) = 0"""
        m = pc.n * pc.n
        quads = ConstraintBuilder.all_quadruples(m) if quadruples is None else quadruples
        for quad in quads:
            quad = ConstraintBuilder.check_quadruple(quad, m)
            total = sum(
                (2 * value * pc.X0.get(a - 1, b - 1) for (a, b), value in ConstraintBuilder.plucker_entries(quad)),
                Fraction(0),
            )
            if total != 0:
                logger.warning(f"原始可行性失败: 四元组 {quad} 上 trace(A·X0) = {total}")
                return False
        return True

    @staticmethod
    def primal_objective(pc: PrimalCertificate) -> Fraction:
        """trace(C·X)"""
        return objective_gram(MatrixClass.GENERAL, pc.n).mat.inner(pc.X)

    @staticmethod
    def primal_structure_checks(pc: PrimalCertificate, dc: Optional[DualCertificate] = None) -> Dict[str, bool]:
        """
        非零元个数、范数、两两正交、迹为1，以及互补松弛 S·v = 0
        即 (C − Σ y_t A_t)·v = ((2−n)/2)·v；dc 缺省时取策略A的对偶证书
        """
        n = pc.n
        if dc is None:
            dc = CertificateVerifier.build_dual(MatrixClass.GENERAL, n, ConstraintBuilder.strategy_a(n))
        S = dc.S.mat
        results = {}
        results["nonzeros"] = all(
            len(v) == 4 * (n - 1)
            and sum(1 for x in v.values() if x == 2) == 4
            and sum(1 for x in v.values() if abs(x) == 1) == 4 * (n - 2)
            for v in pc.vectors
        )
        results["norm"] = all(sum(x * x for x in v.values()) == 4 * (n + 2) for v in pc.vectors)
        results["orthogonal"] = all(
            sum(x * pc.vectors[b].get(k, 0) for k, x in pc.vectors[a].items()) == 0
            for a in range(len(pc.vectors))
            for b in range(a + 1, len(pc.vectors))
        )
        results["unit_trace"] = pc.X.trace() == 1
        results["complementary_slackness"] = all(
            not any(S.matvec(pc.dense(index))) for index in range(len(pc.vectors))
        )
        return results

    @staticmethod
    def objective_eigenvector_reading(pc: PrimalCertificate) -> bool:
        """字面读法 C·v = ((2−n)/2)·v 是否对全部 v 成立（已发表的说法，不作为证书条件）"""
        C = objective_gram(MatrixClass.GENERAL, pc.n).mat
        eigen = Fraction(2 - pc.n, 2)
        for index in range(len(pc.vectors)):
            dense = pc.dense(index)
            if C.matvec(dense) != [eigen * x for x in dense]:
                return False
        return True

    # 对偶证书

    @staticmethod
    def build_dual(matrix_class: MatrixClass, n: int, dual: DualVector) -> DualCertificate:
        """S = C − Σ y_t A_t + gamma·I"""
        C = objective_gram(matrix_class, n)
        space = C.space
        items = list(C.mat.entries.items())
        for quad, value in dual.support():
            if max(quad) > space.m:
                raise DimensionMismatch(f"四元组 {quad} 超出候选空间 m={space.m}")
            ConstraintBuilder.check_quadruple(quad, space.m)
            for (a, b), sign in ConstraintBuilder.plucker_entries(quad):
                items.append(((a - 1, b - 1), -value * sign))
        S = SymMatrix.accumulate(space.size, items).shift(dual.gamma)
        return DualCertificate(MatrixClass(matrix_class), n, dual, GramMatrix(space, S))

    @staticmethod
    def certify(matrix: SymMatrix) -> Union[LDLCertificate, NotPSD]:
        result = ExactUtils.ldl_psd_certify(matrix)
        if isinstance(result, NotPSD):
            logger.info(f"矩阵非半正定，见证值 {result.value}")
        else:
            logger.debug(f"矩阵半正定，秩 {result.rank}/{matrix.order}")
        return result

    # 平方和分解

    @staticmethod
    def extract_sos(matrix: Union[SymMatrix, GramMatrix], certificate: Optional[LDLCertificate] = None) -> SOSDecomposition:
        """
        从LDL分解读出平方和：系数为主元，线性型为 L^T·P 的对应行
        """
        mat = matrix.mat if isinstance(matrix, GramMatrix) else matrix
        if certificate is None:
            certificate = ExactUtils.ldl_psd_certify(mat)
        if isinstance(certificate, NotPSD):
            raise NotCertified(f"矩阵非半正定（见证值 {certificate.value}），无法提取平方和")

        columns: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (r, c), value in certificate.lower.items():
            columns.setdefault(c, []).append((certificate.permutation[r] + 1, value))
        terms = []
        for c, d in enumerate(certificate.diag):
            if d == 0:
                continue
            form = LinearForm.from_terms([(certificate.permutation[c] + 1, 1)] + columns.get(c, []))
            terms.append((d, form))
        return SOSDecomposition(tuple(terms))

    @staticmethod
    def sum_of_candidate_squares(m: int):
        ring, _, _ = entry_ring(m)
        total = ring.zero
        for j in range(2, m + 1):
            for i in range(1, j):
                total += candidate_poly(m, i, j) ** 2
        return total

    @staticmethod
    def verify_identity(sos: SOSDecomposition, matrix_class: MatrixClass, n: int, gamma) -> bool:
        """
        Σ c·ℓ² 代入后是否等于 s·BW + gamma·Σ z²（s 为矩阵类的比例）
        """
        form = BWForm(matrix_class, n)
        m = form.space.m
        target = form.polynomial() * to_qq(form.scale) + CertificateVerifier.sum_of_candidate_squares(m) * to_qq(Fraction(gamma))
        holds = sos.to_poly(m) == target
        logger.info(f"恒等式校验 {form.matrix_class.value} n={n} gamma={gamma}: {'成立' if holds else '不成立'}")
        return holds

    @staticmethod
    def verify_identity_gram(sos: SOSDecomposition, dc: DualCertificate) -> bool:
        """Gram层面的快速校验：Σ c·ℓℓ^T = S"""
        return sos.gram(dc.S.mat.order) == dc.S.mat

    # 谱

    @staticmethod
    def block_spectrum(block: SymMatrix, candidates: Optional[Sequence] = None) -> Tuple[Dict[Fraction, int], int]:
        """
        块的有理特征值及重数，以及无理特征值的个数
        给出 candidates 时只在候选值上求零空间维数
        """
        if candidates is not None:
            spectrum = ExactUtils.rational_spectrum(block, candidates)
            return spectrum, block.order - sum(spectrum.values())
        if block.order > settings.charpoly_max_order:
            bound = max((sum(abs(v) for v in row) for row in block.to_dense()), default=Fraction(0))
            spectrum = ExactUtils.rational_spectrum(block, range(-int(bound) - 1, int(bound) + 2))
            return spectrum, block.order - sum(spectrum.values())
        x = Symbol("x")
        coeffs = ExactUtils.char_poly(block)
        poly = Poly([SymRational(c.numerator, c.denominator) for c in coeffs], x)
        spectrum: Dict[Fraction, int] = {}
        irrational = 0
        for factor, multiplicity in poly.factor_list()[1]:
            if factor.degree() == 1:
                a, b = factor.all_coeffs()
                root = -SymRational(b) / SymRational(a)
                key = Fraction(int(root.p), int(root.q))
                spectrum[key] = spectrum.get(key, 0) + multiplicity
            else:
                irrational += factor.degree() * multiplicity
        return dict(sorted(spectrum.items())), irrational

    @staticmethod
    def table1_expectations(n: int) -> Dict[str, object]:
        """
        一般矩阵 2S 的块结构：大块 6n−8、中块 C(n,2)、4阶块与1阶块
        相同特征值的键合并
        """
        c2 = comb(n, 2)
        blocks = Counter()
        for size, count in ((6 * n - 8, c2), (c2, 1), (4, 3 * comb(n, 4)), (1, c2)):
            if count:
                blocks[size] += count
        return {
            "blocks": dict(blocks),
            "big": _counts([(0, 2), (4, 1), (n, 2 * n - 4), (n + 2, 3 * n - 5), (n + 4, n - 3), (2 * n + 2, 1)]),
            "middle": _counts([(0, n - 1), (n, comb(n - 1, 2))]),
            "four": _counts([(n, 1), (n + 2, 2), (n + 4, 1)]),
            "scalar": _counts([(n + 2, 1)]),
        }

    @staticmethod
    def table1_rows(n: int) -> List[Tuple[str, int, int, Fraction]]:
        """
        逐行给出 (行名, 特征值, 由各块列重算的总数, 表中给出的总数公式值)
        """
        c2 = comb(n, 2)
        counts = (c2, 1, 3 * comb(n, 4), c2)
        columns = [
            ("0", 0, (2, n - 1, 0, 0), Fraction(n * n - 1)),
            ("4", 4, (1, 0, 0, 0), Fraction(n * (n - 1), 2)),
            ("n", n, (2 * n - 4, comb(n - 1, 2), 1, 0), Fraction((n * n - 1) * (n - 2) * (n + 4), 8)),
            ("n+2", n + 2, (3 * n - 5, 0, 2, 1), Fraction((n * n - 1) * (n - 2) * (n + 4), 4)),
            ("n+4", n + 4, (n - 3, 0, 1, 0), Fraction(n * (n - 1) * (n * n + n - 2), 8)),
            ("2n+2", 2 * n + 2, (1, 0, 0, 0), Fraction(n * (n - 2), 2)),
        ]
        rows = []
        for label, value, column, printed in columns:
            recomputed = sum(c * k for c, k in zip(column, counts))
            rows.append((label, value, recomputed, printed))
        return rows

    @staticmethod
    def verify_dual(dc: DualCertificate, report: Optional[Report] = None, published_totals: bool = True) -> Report:
        """
        校验对偶证书：半正定性、亏量、块结构、谱；一般矩阵再核对块表与四个控制和
        失败只记录在报告中，不抛出异常
        """
        report = report or Report(command="verify", matrix_class=dc.matrix_class.value, n=dc.n)
        S = dc.S.mat
        n = dc.n

        result = ExactUtils.ldl_psd_certify(S)
        psd = isinstance(result, LDLCertificate)
        if psd:
            exact_ok = result.reconstruct() == S
            report.add("ldl_reconstructs", exact_ok, "P^T L D L^T P = S")
            defect = S.order - result.rank
            report.add("psd", True, f"秩 {result.rank}/{S.order}")
        else:
            defect = ExactUtils.nullity_at(S, 0)
            report.add("psd", False, f"见证值 w^T S w = {format_rational(result.value)}")
        report.details["defect"] = defect
        report.details["gamma"] = format_rational(dc.gamma)
        report.details["active"] = dc.dual.active_count

        components = ExactUtils.connected_components(S)
        sizes = Counter(len(block) for block in components)
        report.details["block_sizes"] = {str(k): v for k, v in sorted(sizes.items(), reverse=True)}
        report.control("trace_C", objective_gram(dc.matrix_class, n).mat.trace())

        if dc.matrix_class is MatrixClass.GENERAL and n >= 3:
            _verify_table1(dc, components, defect, report, published_totals)
        else:
            nontrivial = [block for block in components if len(block) > 1]
            for index, block in enumerate(nontrivial):
                spectrum, irrational = CertificateVerifier.block_spectrum(S.submatrix(block))
                report.spectrum(f"block{index}", spectrum)
                if irrational:
                    report.details[f"block{index}_irrational"] = irrational
            scalars = Counter(S.get(b[0], b[0]) for b in components if len(b) == 1)
            if scalars:
                report.spectrum("scalars", scalars)
        return report

    @staticmethod
    def strong_duality_report(n: int, report: Optional[Report] = None, published: bool = True) -> Report:
        """
        一般矩阵：原始目标 trace(C·X) 与对偶目标 −gamma 精确相等，并检查互补松弛 S·v = 0
        published 为真时另记 C·v = ((2−n)/2)·v 这一字面读法的核对结果
        """
        report = report or Report(command="duality", matrix_class=MatrixClass.GENERAL.value, n=n)
        pc = CertificateVerifier.build_primal(n)
        dual = ConstraintBuilder.strategy_a(n)
        dc = CertificateVerifier.build_dual(MatrixClass.GENERAL, n, dual)
        objective = CertificateVerifier.primal_objective(pc)
        report.control("primal_objective", objective)
        report.control("dual_objective", -dual.gamma)
        for name, ok in CertificateVerifier.primal_structure_checks(pc, dc).items():
            report.add(f"primal_{name}", ok)
        if published:
            report.add("primal_eigenvector_of_C", CertificateVerifier.objective_eigenvector_reading(pc),
                       "C·v = ((2−n)/2)·v 只对 C − Σ y_t A_t 成立", published_mismatch=True)
        quads = None if n <= 4 else (q for q, _ in dual.support())
        report.add("primal_feasible", CertificateVerifier.primal_feasibility_check(pc, quads),
                   "全部四元组" if quads is None else "活跃四元组")
        report.add("strong_duality", objective == -dual.gamma == Fraction(2 - n, 2),
                   f"trace(CX) = {format_rational(objective)}")
        report.add("active_count", dual.active_count == comb(n, 2) * (n * n - 4),
                   f"{dual.active_count} 个活跃约束")
        cert = ExactUtils.ldl_psd_certify(dc.S.mat)
        if isinstance(cert, LDLCertificate):
            defect = dc.S.mat.order - cert.rank
            report.details["rank_X"] = len(pc.vectors)
            report.add("no_strict_complementarity", n < 3 or len(pc.vectors) < defect,
                       f"rank(X) = {len(pc.vectors)}，defect(S) = {defect}")
        return report

    # 证书文本格式

    @staticmethod
    def export_certificate(cert: Certificate) -> str:
        """
        bwsos v1 <class> <n> <gamma>
        y i j k l num/den
        sq num/den : k1 c1 k2 c2 …
        """
        lines = [f"{FORMAT_TAG} {cert.matrix_class.value} {cert.n} {format_rational(cert.dual.gamma)}"]
        for quad, value in cert.dual.support():
            lines.append("y " + " ".join(str(x) for x in quad) + f" {format_rational(value)}")
        for c, form in cert.sos.terms:
            body = " ".join(f"{k} {format_rational(v)}" for k, v in form.terms())
            lines.append(f"sq {format_rational(c)} : {body}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def parse_certificate(text: str) -> Certificate:
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines or not lines[0].startswith(FORMAT_TAG + " "):
            raise CertificateFormatError(f"缺少证书头 '{FORMAT_TAG}'")
        header = lines[0][len(FORMAT_TAG):].split()
        if len(header) != 3:
            raise CertificateFormatError(f"证书头格式错误: {lines[0]}")
        try:
            matrix_class = MatrixClass.parse(header[0])
            n = int(header[1])
            gamma = parse_rational(header[2])
        except ValueError as e:
            raise CertificateFormatError(f"证书头解析失败: {e}") from e

        y: Dict[Quadruple, Fraction] = {}
        terms = []
        for number, line in enumerate(lines[1:], start=2):
            parts = line.split()
            try:
                if parts[0] == "y" and len(parts) == 6:
                    quad = tuple(int(x) for x in parts[1:5])
                    y[quad] = parse_rational(parts[5])  # type: ignore[index]
                elif parts[0] == "sq" and len(parts) >= 3 and parts[2] == ":":
                    body = parts[3:]
                    if len(body) % 2:
                        raise ValueError("候选编号与系数不成对")
                    pairs = [(int(body[a]), parse_rational(body[a + 1])) for a in range(0, len(body), 2)]
                    terms.append((parse_rational(parts[1]), LinearForm.from_terms(pairs)))
                else:
                    raise ValueError(f"未知的行类型 '{parts[0]}'")
            except (ValueError, ZeroDivisionError) as e:
                raise CertificateFormatError(f"第{number}行解析失败: {e}") from e
        return Certificate(matrix_class, n, DualVector(y, gamma), SOSDecomposition(tuple(terms)))

    @staticmethod
    def general3_verify(report: Optional[Report] = None) -> Report:
        """一般矩阵 n=3：v_{1,2} 与含第1行的 10 阶块对照已发表数据"""
        from . import fixtures

        report = report or Report(command="fixture general3", matrix_class=MatrixClass.GENERAL.value, n=3)
        pc = CertificateVerifier.build_primal(3)
        v12 = pc.dense(pc.pairs.index((1, 2)))
        report.add("v12_matches_printed", v12 == list(fixtures.GENERAL3_V12), "36 维向量逐项一致")

        two_s = CertificateVerifier.build_dual(MatrixClass.GENERAL, 3, ConstraintBuilder.strategy_a(3)).S.mat.scale(2)
        block = next(b for b in ExactUtils.connected_components(two_s) if 0 in b)
        index = tuple(k + 1 for k in sorted(block))
        report.add("block_index", index == fixtures.GENERAL3_BLOCK_INDEX, f"下标集合 {index}")
        sub = two_s.submatrix(sorted(block))
        report.add("block_matches_printed", sub == SymMatrix.from_dense(fixtures.GENERAL3_BLOCK), "10 阶块逐项一致")
        spectrum, irrational = CertificateVerifier.block_spectrum(sub)
        report.spectrum("block", spectrum)
        report.add("block_eigenvalues",
                   irrational == 0 and spectrum == dict(Counter(Fraction(v) for v in fixtures.GENERAL3_BLOCK_EIGENVALUES)),
                   f"{fixtures.GENERAL3_BLOCK_EIGENVALUES}")
        return report
