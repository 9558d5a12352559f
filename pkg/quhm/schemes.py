"""
The 2-class association scheme of a skew core and its tensor powers.

A skew core ``Q`` splits as ``Q = A_1 - A_2`` with ``A_1`` the +1 positions and ``A_2`` the -1
positions; with ``A_0 = I`` this is a commutative scheme whose eigenvalues live in
Q(sqrt(-q)). The m-th tensor power is never materialized: the class of a pair of vertices is
read off their base-q digits, most significant digit first, matching Kronecker index order.
"""
import logging
import typing
from fractions import Fraction

import numpy as np
import pydantic

from quhm import exactmat
from quhm.checks import CheckResult, Report
from quhm.config import Settings, get_settings
from quhm.cores import CoreKind, CoreMatrix
from quhm.errors import MatrixShapeError, OrderCapExceededError, ParameterError
from quhm.exactmat import AnyMatrix, GaussMatrix, IntMatrix, Scalar
from quhm.quadfield import QuadComplex, QuadMatrix, invert
from quhm.utils import check_order, digits

if typing.TYPE_CHECKING:  # pragma: no cover
    from quhm.constructions import QuhMatrix

log = logging.getLogger(__name__)

ClassLabel = typing.Tuple[int, ...]
Coordinate = typing.Tuple[int, int]

# Entries scanned per chunk by bose_mesner_coeffs.
_CHUNK = 1 << 20


def _first(mask: np.ndarray) -> typing.Optional[typing.Tuple[int, ...]]:
    if not mask.any():
        return None
    return tuple(int(v) for v in np.argwhere(mask)[0])


class Scheme:
    """
    A verified commutative association scheme given by its adjacency matrices.

    The constructor checks every axiom and computes the intersection numbers
    ``p[i, j, k]`` with ``A_i A_j = sum_k p[i, j, k] A_k``.

    Parameters
    ----------
    adjacency : list of :py:class:`quhm.exactmat.IntMatrix`
        ``A_0, ..., A_d``, (0, 1)-matrices of a common order.
    settings : Optional, :py:class:`quhm.config.Settings`
        For the order cap.

    Raises
    ------
    :py:exc:`quhm.errors.VerificationError` :
        If an axiom fails. The report is attached.
    """

    n: int
    d: int
    adjacency: typing.List[IntMatrix]
    intersection_numbers: np.ndarray
    report: Report

    def __init__(
        self,
        adjacency: typing.Sequence[IntMatrix],
        *,
        settings: typing.Optional[Settings] = None,
    ) -> None:
        if not adjacency:
            raise ParameterError("A scheme needs at least one relation")
        self.adjacency = [IntMatrix(a) for a in adjacency]
        self.n = self.adjacency[0].order
        self.d = len(self.adjacency) - 1
        check_order(self.n, (settings or get_settings()).order_cap)
        for a in self.adjacency:
            if a.shape != (self.n, self.n):
                raise MatrixShapeError(
                    f"Relation of shape {a.shape} in a scheme of order {self.n}"
                )
        self.report, self.intersection_numbers = _verify_axioms(self.adjacency)
        self.intersection_numbers.setflags(write=False)
        self.report.raise_for_failure()

    def __repr__(self) -> str:  # pragma: no cover
        return f"<Scheme n={self.n} d={self.d}>"

    @classmethod
    def from_adjacency(
        cls,
        adjacency: typing.Sequence[typing.Any],
        *,
        settings: typing.Optional[Settings] = None,
    ) -> "Scheme":
        """
        Build and verify a scheme from (0, 1)-matrices or nested lists.
        """
        relations = [a if isinstance(a, IntMatrix) else IntMatrix(a) for a in adjacency]
        return cls(relations, settings=settings)

    def tensor(self, other: "Scheme", *, settings: typing.Optional[Settings] = None) -> "Scheme":
        """
        The materialized tensor product scheme. Relation ``(i, j)`` is ``A_i (x) B_j`` and sits
        at position ``i * (other.d + 1) + j``.
        """
        check_order(self.n * other.n, (settings or get_settings()).order_cap)
        relations = [exactmat.kron(a, b) for a in self.adjacency for b in other.adjacency]
        return Scheme(typing.cast(typing.List[IntMatrix], relations), settings=settings)

    def valencies(self) -> typing.List[int]:
        return [int(a.entries[0].sum()) for a in self.adjacency]

    def render_intersection_numbers(self) -> str:
        lines = []
        for k in range(self.d + 1):
            lines.append(f"p^{k}:")
            for i in range(self.d + 1):
                row = " ".join(f"{int(v):>4}" for v in self.intersection_numbers[i, :, k])
                lines.append(f"  {row}")
        return "\n".join(lines)


def _verify_axioms(adjacency: typing.List[IntMatrix]) -> typing.Tuple[Report, np.ndarray]:
    n = adjacency[0].order
    d = len(adjacency) - 1
    report = Report(f"association scheme of order {n} with {d} classes")
    numbers = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)

    binary = [_first((a.entries != 0) & (a.entries != 1)) for a in adjacency]
    bad = next(((i, w) for i, w in enumerate(binary) if w is not None), None)
    if bad is not None:
        report.add(CheckResult.failing("zero-one", witness=bad[1], detail=f"relation {bad[0]}"))
        return report, numbers
    report.add(CheckResult.passing("zero-one"))

    witness = exactmat.first_difference(adjacency[0], exactmat.identity(n))
    if witness is None:
        report.add(CheckResult.passing("identity-relation"))
    else:
        report.add(CheckResult.failing("identity-relation", witness=witness))

    total = np.sum([a.entries for a in adjacency], axis=0)
    witness = _first(total != 1)
    if witness is None:
        report.add(CheckResult.passing("partition"))
    else:
        report.add(CheckResult.failing("partition", witness=witness))

    lost = [i for i, a in enumerate(adjacency) if a.transpose() not in adjacency]
    if lost:
        report.add(CheckResult.failing("transpose-closed", witness=(lost[0],)))
    else:
        report.add(CheckResult.passing("transpose-closed"))

    # A position of every relation, to read p_ij^k off a product.
    anchors = [_first(a.entries == 1) for a in adjacency]
    products: typing.Dict[typing.Tuple[int, int], IntMatrix] = {}
    closed: typing.Optional[typing.Tuple[int, int]] = None
    for i, a_i in enumerate(adjacency):
        for j, a_j in enumerate(adjacency):
            product = typing.cast(IntMatrix, exactmat.matmul(a_i, a_j))
            products[i, j] = product
            for k, anchor in enumerate(anchors):
                if anchor is not None:
                    numbers[i, j, k] = product.entries[anchor]
            rebuilt = np.tensordot(numbers[i, j], [a.entries for a in adjacency], axes=1)
            if closed is None and not np.array_equal(rebuilt, product.entries):
                closed = (i, j)
    if closed is None:
        report.add(CheckResult.passing("intersection-numbers"))
    else:
        report.add(CheckResult.failing("intersection-numbers", witness=closed))

    noncommuting = next(
        ((i, j) for (i, j), p in products.items() if i < j and p != products[j, i]), None
    )
    if noncommuting is None:
        report.add(CheckResult.passing("commutative"))
    else:
        report.add(CheckResult.failing("commutative", witness=noncommuting))
    return report, numbers


def is_doubly_regular_tournament(matrix: IntMatrix) -> CheckResult:
    """
    Whether a (0, 1)-matrix of order ``n`` is a doubly regular tournament:
    ``A + A^T = J - I`` and ``A A^T = ((n + 1) / 4) I + ((n - 3) / 4) J``.
    """
    name = "doubly-regular-tournament"
    n = matrix.order
    if n % 4 != 3:
        return CheckResult.failing(name, detail=f"order {n} is not 3 mod 4")
    a = matrix.entries
    witness = _first(a + a.T != 1 - np.eye(n, dtype=np.int64))
    if witness is not None:
        return CheckResult.failing(name, witness=witness, detail="tournament")
    expected = (n + 1) // 4 * np.eye(n, dtype=np.int64) + (n - 3) // 4
    witness = exactmat.first_difference(exactmat.gram(matrix, matrix), IntMatrix(expected))
    if witness is not None:
        return CheckResult.failing(name, witness=witness, detail="regular")
    return CheckResult.passing(name)


def core_relations(core: CoreMatrix) -> typing.List[IntMatrix]:
    """
    ``[I, A_1, A_2]`` with ``A_1`` the +1 positions and ``A_2`` the -1 positions of the core.
    """
    q_entries = core.matrix.entries
    return [
        exactmat.identity(core.q),
        IntMatrix((q_entries == 1).astype(np.int64)),
        IntMatrix((q_entries == -1).astype(np.int64)),
    ]


def scheme_from_core(core: CoreMatrix, *, settings: typing.Optional[Settings] = None) -> Scheme:
    """
    The 2-class scheme of a skew core, with every axiom verified and the doubly regular
    tournament property of ``A_1`` recorded in the scheme's report.

    Raises
    ------
    :py:exc:`quhm.errors.CoreKindError` :
        If the core is symmetric.
    :py:exc:`quhm.errors.VerificationError` :
        If an axiom or the tournament property fails.
    """
    core.require(CoreKind.SKEW)
    scheme = Scheme(core_relations(core), settings=settings)
    if core.q > 1:
        scheme.report.add(is_doubly_regular_tournament(scheme.adjacency[1]))
        scheme.report.raise_for_failure()
    log.debug("Scheme of q=%d has valencies %s", core.q, scheme.valencies())
    return scheme


def eigenmatrix_base(q: int) -> QuadMatrix:
    """
    The eigenmatrix ``P`` of the scheme of a skew core of order ``q``::

        [[1,  (q-1)/2,         (q-1)/2        ],
         [1,  (-1+sqrt(-q))/2, (-1-sqrt(-q))/2],
         [1,  (-1-sqrt(-q))/2, (-1+sqrt(-q))/2]]

    Raises
    ------
    :py:exc:`quhm.errors.ParameterError` :
        If ``q`` is not 3 mod 4.
    """
    if q % 4 != 3:
        raise ParameterError(f"The eigenmatrix needs q = 3 mod 4, got {q}")
    x = [[2, q - 1, q - 1], [2, -1, -1], [2, -1, -1]]
    y = [[0, 0, 0], [0, 1, -1], [0, -1, 1]]
    return QuadMatrix(x, y, 2, q=q)


def tensor_eigenmatrix(
    base: QuadMatrix, m: int, *, settings: typing.Optional[Settings] = None
) -> QuadMatrix:
    """
    The Kronecker power ``P (x) ... (x) P`` with ``m`` factors; ``[1]`` for ``m = 0``.

    Raises
    ------
    :py:exc:`quhm.errors.OrderCapExceededError` :
        If ``3^m`` exceeds the eigenmatrix cap.
    """
    if m < 0:
        raise ParameterError(f"The depth must be non-negative, got {m}")
    cap = (settings or get_settings()).eigenmatrix_cap
    order = base.shape[0] ** m
    if order > cap:
        raise OrderCapExceededError(order, cap)
    result = QuadMatrix([[1]], [[0]], q=base.q)
    for _ in range(m):
        result = result.kron(base)
    return result


class TensorSchemeIndex(pydantic.BaseModel):
    """
    Index arithmetic for the m-th tensor power of the scheme of a core of order ``q``.

    Vertices are ``0 .. q^m - 1``; vertex ``r`` has base-q digits ``(r_1, ..., r_m)``, most
    significant first. Class labels are tuples in ``{0, 1, 2}^m`` ordered lexicographically,
    which is the row order of :py:func:`tensor_eigenmatrix`.
    """

    model_config = pydantic.ConfigDict(frozen=True)

    q: int = pydantic.Field(ge=1)
    m: int = pydantic.Field(ge=0)

    @property
    def order(self) -> int:
        return self.q**self.m

    @property
    def class_count(self) -> int:
        return 3**self.m

    def vertex_digits(self, r: int) -> typing.Tuple[int, ...]:
        if not 0 <= r < self.order:
            raise ParameterError(f"Vertex {r} outside 0..{self.order - 1}")
        return tuple(reversed(digits(r, self.q, self.m)))

    def labels(self) -> typing.List[ClassLabel]:
        return [tuple(reversed(digits(k, 3, self.m))) for k in range(self.class_count)]

    def label_code(self, label: ClassLabel) -> int:
        if len(label) != self.m or any(c not in (0, 1, 2) for c in label):
            raise ParameterError(f"{label} is not a class label of depth {self.m}")
        code = 0
        for c in label:
            code = 3 * code + c
        return code

    def multiplicity(self, label: ClassLabel) -> int:
        """
        Rank of the idempotent of an eigenmatrix row, the product of 1 for a trivial
        coordinate and ``(q - 1) / 2`` otherwise.
        """
        half = (self.q - 1) // 2
        result = 1
        for c in label:
            result *= 1 if c == 0 else half
        return result


def _class_table(core: CoreMatrix) -> np.ndarray:
    entries = core.matrix.entries
    table = np.zeros(entries.shape, dtype=np.int64)
    table[entries == 1] = 1
    table[entries == -1] = 2
    return table


def _check_index(idx: TensorSchemeIndex, core: CoreMatrix) -> None:
    core.require(CoreKind.SKEW)
    if idx.q != core.q:
        raise ParameterError(f"Index for q={idx.q} used with a core of order {core.q}")


def class_of_pair(r: int, c: int, idx: TensorSchemeIndex, core: CoreMatrix) -> ClassLabel:
    """
    The class of the vertex pair ``(r, c)`` in the tensor scheme: coordinate ``t`` is 0 when
    the digits agree, 1 when the core has +1 at them and 2 when it has -1.

    Raises
    ------
    :py:exc:`quhm.errors.ParameterError` :
        If a vertex is out of range or the core does not match the index.
    """
    _check_index(idx, core)
    table = _class_table(core)
    return tuple(
        int(table[a, b]) for a, b in zip(idx.vertex_digits(r), idx.vertex_digits(c))
    )


class MembershipResult:
    """
    Outcome of :py:func:`bose_mesner_coeffs`.

    On success ``coeffs`` maps every class label that occurs to the constant value of the
    matrix on that class. On failure ``witness`` holds two coordinates of one class where
    the matrix takes different values.
    """

    coeffs: typing.Dict[ClassLabel, Scalar]
    witness: typing.Optional[typing.Tuple[Coordinate, Coordinate]]

    def __init__(
        self,
        coeffs: typing.Dict[ClassLabel, Scalar],
        witness: typing.Optional[typing.Tuple[Coordinate, Coordinate]] = None,
    ) -> None:
        self.coeffs = coeffs
        self.witness = witness

    def __repr__(self) -> str:  # pragma: no cover
        return f"<MembershipResult passed={self.passed} classes={len(self.coeffs)}>"

    @property
    def passed(self) -> bool:
        return self.witness is None

    def __bool__(self) -> bool:
        return self.passed

    def check(self) -> CheckResult:
        if self.witness is None:
            return CheckResult.passing("membership", f"{len(self.coeffs)} classes")
        first, second = self.witness
        return CheckResult.failing(
            "membership", witness=second, detail=f"same class as {first}, different value"
        )


def bose_mesner_coeffs(
    matrix: AnyMatrix, idx: TensorSchemeIndex, core: CoreMatrix
) -> MembershipResult:
    """
    Decide whether a matrix lies in the Bose-Mesner algebra of the tensor scheme, that is
    whether it is constant on every class, and return its coefficients.

    The adjacency matrices are never built: rows are scanned in chunks and every entry is
    classified from the base-q digits of its coordinates.

    Raises
    ------
    :py:exc:`quhm.errors.MatrixShapeError` :
        If the matrix order is not ``q^m``.
    """
    _check_index(idx, core)
    n = idx.order
    if matrix.shape != (n, n):
        raise MatrixShapeError(f"Expected order {n} for q={idx.q} m={idx.m}, got {matrix.shape}")
    if isinstance(matrix, GaussMatrix):
        re, im = matrix.re, matrix.im
    else:
        re, im = matrix.entries, np.zeros_like(matrix.entries)
    table = _class_table(core)
    weights = 3 ** np.arange(idx.m - 1, -1, -1, dtype=np.int64)
    # digit_rows[v, t] is the t-th most significant base-q digit of v.
    digit_rows = np.array([idx.vertex_digits(v) for v in range(n)], dtype=np.int64).reshape(
        n, idx.m
    )

    seen = np.zeros(idx.class_count, dtype=bool)
    ref_re = np.zeros(idx.class_count, dtype=np.int64)
    ref_im = np.zeros(idx.class_count, dtype=np.int64)
    ref_at = np.zeros((idx.class_count, 2), dtype=np.int64)

    step = max(1, _CHUNK // n)
    for start in range(0, n, step):
        rows = np.arange(start, min(n, start + step))
        codes = np.zeros((rows.size, n), dtype=np.int64)
        for t in range(idx.m):
            codes += weights[t] * table[digit_rows[rows, t][:, None], digit_rows[None, :, t]]
        flat = codes.ravel()
        block_re = re[rows].ravel()
        block_im = im[rows].ravel()
        found, first = np.unique(flat, return_index=True)
        fresh = ~seen[found]
        new_codes, new_at = found[fresh], first[fresh]
        ref_re[new_codes] = block_re[new_at]
        ref_im[new_codes] = block_im[new_at]
        ref_at[new_codes, 0] = rows[new_at // n]
        ref_at[new_codes, 1] = new_at % n
        seen[new_codes] = True
        bad = (block_re != ref_re[flat]) | (block_im != ref_im[flat])
        if bad.any():
            at = int(np.argmax(bad))
            code = int(flat[at])
            first_at = (int(ref_at[code, 0]), int(ref_at[code, 1]))
            log.debug("Matrix is not constant on class %d", code)
            return MembershipResult({}, (first_at, (int(rows[at // n]), at % n)))

    labels = idx.labels()
    coeffs: typing.Dict[ClassLabel, Scalar] = {}
    for code in np.flatnonzero(seen):
        value: Scalar = int(ref_re[code])
        if isinstance(matrix, GaussMatrix):
            value = (int(ref_re[code]), int(ref_im[code]))
        coeffs[labels[int(code)]] = value
    return MembershipResult(coeffs)


def _coefficient_tensor(
    coeffs: typing.Mapping[ClassLabel, Scalar], idx: TensorSchemeIndex
) -> np.ndarray:
    tensor = np.zeros((3,) * idx.m, dtype=object)
    for label, value in coeffs.items():
        if isinstance(value, tuple):
            raise ParameterError("Eigenvalues need real coefficients")
        tensor[label] = int(value)
    return tensor


def _mode_product(
    pa: np.ndarray, pb: np.ndarray, q: int, x: np.ndarray, y: np.ndarray, axis: int
) -> typing.Tuple[np.ndarray, np.ndarray]:
    def along(matrix: np.ndarray, tensor: np.ndarray) -> np.ndarray:
        return np.moveaxis(np.tensordot(matrix, tensor, axes=([1], [axis])), 0, axis)

    return (
        along(pa, x) - q * along(pb, y),
        along(pa, y) + along(pb, x),
    )


def scheme_eigenvalues(
    coeffs: typing.Mapping[ClassLabel, Scalar], idx: TensorSchemeIndex
) -> typing.Dict[ClassLabel, QuadComplex]:
    """
    Eigenvalues of ``sum c_label A_label`` on every idempotent of the tensor scheme.

    This is the tensor eigenmatrix applied to the coefficient vector, computed one axis at a
    time so the eigenmatrix itself is never built. Absent labels count as zero.
    """
    q = idx.q
    base = eigenmatrix_base(q)
    pa = base.x
    pb = base.y
    x = _coefficient_tensor(coeffs, idx)
    y = np.zeros_like(x)
    for axis in range(idx.m):
        x, y = _mode_product(pa, pb, q, x, y, axis)
    d = base.d**idx.m
    return {
        label: QuadComplex(int(x[label]), int(y[label]), d, q=q) for label in idx.labels()
    }


class EigenvalueCertificate:
    """
    One eigenvalue of a QUH matrix read off the scheme: ``value`` is ``sqrt(q + 1)`` times the
    eigenvalue, on an eigenspace of dimension ``multiplicity``. It certifies unimodularity
    when ``|value|^2 = (q + 1) q^m``.
    """

    label: ClassLabel
    multiplicity: int
    value: QuadComplex
    expected: int

    def __init__(
        self, label: ClassLabel, multiplicity: int, value: QuadComplex, expected: int
    ) -> None:
        self.label = label
        self.multiplicity = multiplicity
        self.value = value
        self.expected = expected

    def __repr__(self) -> str:  # pragma: no cover
        return f"<EigenvalueCertificate label={self.label} value={self.value}>"

    @property
    def norm(self) -> Fraction:
        return self.value.norm()

    @property
    def passed(self) -> bool:
        return self.norm == self.expected

    def render(self) -> str:
        label = "".join(str(c) for c in self.label) or "-"
        verdict = "ok" if self.passed else "FAIL"
        return f"{label:>8} x{self.multiplicity:<6} {self.value!s:<32} |.|^2={self.norm} {verdict}"


def spectrum_via_scheme(
    matrix: "QuhMatrix", idx: TensorSchemeIndex, core: CoreMatrix
) -> typing.List[EigenvalueCertificate]:
    """
    The spectrum of a QUH matrix whose two patterns lie in the Bose-Mesner algebra of the
    tensor scheme, one certificate per eigenmatrix row.

    With ``lambda_A`` and ``lambda_B`` the eigenvalues of the two patterns, the eigenvalue
    of ``H`` times ``sqrt(q + 1)`` is ``lambda_A + sqrt(-q) lambda_B``.

    Raises
    ------
    :py:exc:`quhm.errors.VerificationError` :
        If a pattern is not in the algebra. The membership report is attached.
    """
    if matrix.q_param != core.q:
        raise ParameterError(f"QUH parameter {matrix.q_param} against a core of order {core.q}")
    report = Report(f"membership of QUH({matrix.n}, {matrix.q_param})")
    results = []
    for name, pattern in (("A", matrix.A), ("B", matrix.B)):
        result = bose_mesner_coeffs(pattern, idx, core)
        check = report.add(result.check())
        check.detail = f"pattern {name}; {check.detail}"
        results.append(result)
    report.raise_for_failure()
    return spectrum_from_coeffs(results[0].coeffs, results[1].coeffs, idx)


def spectrum_from_coeffs(
    coeffs_a: typing.Mapping[ClassLabel, Scalar],
    coeffs_b: typing.Mapping[ClassLabel, Scalar],
    idx: TensorSchemeIndex,
) -> typing.List[EigenvalueCertificate]:
    """
    Eigenvalue certificates of ``A + sqrt(-q) B`` given the scheme coefficients of both
    patterns.
    """
    lambda_a = scheme_eigenvalues(coeffs_a, idx)
    lambda_b = scheme_eigenvalues(coeffs_b, idx)
    s = QuadComplex.sqrt_minus_q(idx.q)
    expected = (idx.q + 1) * idx.order
    return [
        EigenvalueCertificate(
            label, idx.multiplicity(label), lambda_a[label] + s * lambda_b[label], expected
        )
        for label in idx.labels()
    ]


def dual_eigenmatrix(q: int) -> QuadMatrix:
    """
    ``Q = q P^-1``, computed exactly.
    """
    inverse = invert(eigenmatrix_base(q).entries())
    return QuadMatrix.from_entries(inverse).scale(QuadComplex(q, q=q))


def idempotents_base(core: CoreMatrix) -> typing.List[QuadMatrix]:
    """
    The primitive idempotents ``E_0, E_1, E_2`` of the scheme of a skew core, with
    ``E_i = (1/q) sum_j Q[j, i] A_j``.

    The result is verified: ``E_i E_j = delta_ij E_i``, ``sum E_i = I`` and ``E_0 = J / q``.

    Raises
    ------
    :py:exc:`quhm.errors.VerificationError` :
        If one of the identities fails.
    """
    core.require(CoreKind.SKEW)
    q = core.q
    dual = dual_eigenmatrix(q)
    relations = [QuadMatrix.from_int(a, q=q) for a in core_relations(core)]
    scale = QuadComplex(1, 0, q, q=q)
    idempotents = []
    for i in range(3):
        total = QuadMatrix.zeros(q, q, q=q)
        for j, relation in enumerate(relations):
            total = total + relation.scale(dual[j, i] * scale)
        idempotents.append(total)

    report = Report(f"idempotents of the scheme of q={q}")
    orthogonal = next(
        (
            (i, j)
            for i, e_i in enumerate(idempotents)
            for j, e_j in enumerate(idempotents)
            if e_i @ e_j != (e_i if i == j else QuadMatrix.zeros(q, q, q=q))
        ),
        None,
    )
    if orthogonal is None:
        report.add(CheckResult.passing("orthogonal-idempotents"))
    else:
        report.add(CheckResult.failing("orthogonal-idempotents", witness=orthogonal))
    identity = QuadMatrix.from_int(exactmat.identity(q), q=q)
    if idempotents[0] + idempotents[1] + idempotents[2] == identity:
        report.add(CheckResult.passing("resolution-of-identity"))
    else:
        report.add(CheckResult.failing("resolution-of-identity"))
    if idempotents[0] == QuadMatrix.from_int(exactmat.ones(q), q=q).scale(scale):
        report.add(CheckResult.passing("trivial-idempotent"))
    else:
        report.add(CheckResult.failing("trivial-idempotent"))
    report.raise_for_failure()
    return idempotents


def verify_eigenmatrix(
    scheme: Scheme, eigenmatrix: QuadMatrix, idempotents: typing.Sequence[QuadMatrix]
) -> Report:
    """
    Check ``A_j E_i = P[i, j] E_i`` for every relation ``j`` and idempotent ``i``.
    """
    q = eigenmatrix.q
    report = Report(f"eigenmatrix of a scheme of order {scheme.n}")
    if eigenmatrix.shape != (len(idempotents), scheme.d + 1):
        report.add(
            CheckResult.failing("eigen-relation", detail=f"eigenmatrix shape {eigenmatrix.shape}")
        )
        return report
    relations = [QuadMatrix.from_int(a, q=q) for a in scheme.adjacency]
    for i, e_i in enumerate(idempotents):
        for j, a_j in enumerate(relations):
            if a_j @ e_i != e_i.scale(eigenmatrix[i, j]):
                report.add(CheckResult.failing("eigen-relation", witness=(i, j)))
                return report
    report.add(CheckResult.passing("eigen-relation"))
    return report
