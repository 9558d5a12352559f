"""
Matrix documents and their two serializations.

JSON is canonical: keys sorted, no insignificant whitespace and a trailing newline, so
emitting a parsed document gives back the same bytes. The text format is a header line
``kind q m n`` followed by every matrix as ``n`` lines of ``n`` characters, one blank line
between matrices::

    quh 3 1 3
    +++
    +++
    +++

    +-+
    ++-
    -++

Characters are ``+`` (1), ``-`` (-1), ``0`` (0), ``i`` (i) and ``j`` (-i). A missing depth is
written ``-``. A ``scheme-coeffs`` body holds lines ``<name> <class digits> <value>`` instead,
with ``-`` as the digits of the empty class label. Metadata only exists in JSON.
"""
import json
import logging
import pathlib
import typing

import numpy as np
import pydantic

from quhm.constructions import QuhMatrix
from quhm.cores import CoreMatrix, Provenance
from quhm.errors import DocumentError, QuhmError
from quhm.exactmat import AnyMatrix, GaussMatrix, IntMatrix, Scalar

log = logging.getLogger(__name__)

DocumentKind = typing.Literal["core", "sign-pair", "quh", "gauss", "hadamard", "scheme-coeffs"]
DocumentFormat = typing.Literal["json", "txt"]
ClassLabel = typing.Tuple[int, ...]
Coefficients = typing.Dict[ClassLabel, Scalar]

CANONICAL_NAMES: typing.Dict[str, typing.Tuple[typing.Tuple[str, ...], ...]] = {
    "core": (("Q",),),
    "sign-pair": (("A", "B"),),
    "quh": (("A", "B"),),
    "gauss": (("M",), ("C", "D")),
    "hadamard": (("H",),),
    "scheme-coeffs": (("A",), ("A", "B")),
}
"""
Allowed matrix (or coefficient map) names per kind, in emission order.
"""

_SYMBOLS: typing.Dict[typing.Tuple[int, int], str] = {
    (1, 0): "+",
    (-1, 0): "-",
    (0, 0): "0",
    (0, 1): "i",
    (0, -1): "j",
}
_VALUES = {symbol: value for value, symbol in _SYMBOLS.items()}


class MatrixDocument(pydantic.BaseModel):
    """
    A serializable object: a core, a sign pair, a QUH matrix, a Gaussian matrix or pair, a
    real Hadamard matrix, or the Bose-Mesner coefficients of a pair of patterns.

    The matrix names are fixed by the kind, see :py:data:`CANONICAL_NAMES`.

    Raises
    ------
    :py:exc:`pydantic.ValidationError` :
        If the names, orders or entry types do not fit the kind.
    """

    model_config = pydantic.ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: DocumentKind
    q: int = pydantic.Field(ge=1)
    m: typing.Optional[int] = pydantic.Field(None, ge=0)
    matrices: typing.Dict[str, typing.Union[IntMatrix, GaussMatrix]] = {}
    coeffs: typing.Dict[str, Coefficients] = {}
    metadata: typing.Dict[str, str] = {}

    @pydantic.model_validator(mode="after")
    def _check_layout(self) -> "MatrixDocument":
        names = tuple(self.coeffs) if self.kind == "scheme-coeffs" else tuple(self.matrices)
        if self.kind == "scheme-coeffs" and self.matrices:
            raise ValueError("A scheme-coeffs document holds no matrices")
        if self.kind != "scheme-coeffs" and self.coeffs:
            raise ValueError(f"A {self.kind} document holds no coefficients")
        if tuple(sorted(names)) not in {tuple(sorted(n)) for n in CANONICAL_NAMES[self.kind]}:
            raise ValueError(f"Names {list(names)} do not fit kind '{self.kind}'")
        if self.kind == "scheme-coeffs":
            if self.m is None:
                raise ValueError("A scheme-coeffs document needs a depth")
            for table in self.coeffs.values():
                if any(len(label) != self.m for label in table):
                    raise ValueError(f"Class labels must have length {self.m}")
            return self
        orders = {matrix.shape for matrix in self.matrices.values()}
        if len(orders) != 1 or any(rows != cols for rows, cols in orders):
            raise ValueError(f"Matrices must be square of one order, got {sorted(orders)}")
        gauss = self.kind == "gauss"
        if any(isinstance(matrix, GaussMatrix) != gauss for matrix in self.matrices.values()):
            raise ValueError(f"Wrong entry type for kind '{self.kind}'")
        return self

    @property
    def names(self) -> typing.Tuple[str, ...]:
        """
        Matrix or coefficient names in canonical order.
        """
        present = set(self.coeffs if self.kind == "scheme-coeffs" else self.matrices)
        for option in CANONICAL_NAMES[self.kind]:
            if set(option) == present:
                return option
        raise DocumentError("Inconsistent names")  # pragma: no cover

    @property
    def n(self) -> int:
        if self.kind == "scheme-coeffs":
            return self.q ** typing.cast(int, self.m)
        return next(iter(self.matrices.values())).shape[0]

    def matrix(self, name: str) -> AnyMatrix:
        try:
            return self.matrices[name]
        except KeyError:
            raise DocumentError(f"No matrix '{name}' in a {self.kind} document") from None

    def to_core(self) -> CoreMatrix:
        """
        Raises
        ------
        :py:exc:`quhm.errors.VerificationError` :
            If the matrix is not a core.
        """
        self._expect("core")
        try:
            provenance = Provenance(self.metadata.get("provenance", Provenance.USER.value))
        except ValueError:
            raise DocumentError(f"Unknown provenance {self.metadata['provenance']!r}") from None
        return CoreMatrix(self.matrix("Q"), provenance)

    def to_quh(self, *, check: bool = True) -> QuhMatrix:
        """
        The QUH matrix of a ``quh`` or ``sign-pair`` document, verified unless told not to.
        """
        self._expect("quh", "sign-pair")
        a, b = self.matrix("A"), self.matrix("B")
        assert isinstance(a, IntMatrix) and isinstance(b, IntMatrix)
        return QuhMatrix(a, b, self.q, self.m, check=check)

    def _expect(self, *kinds: str) -> None:
        if self.kind not in kinds:
            raise DocumentError(f"Expected a {' or '.join(kinds)} document, got {self.kind}")


# Builders


def core_document(
    core: CoreMatrix, metadata: typing.Optional[typing.Dict[str, str]] = None
) -> MatrixDocument:
    meta = {"provenance": core.provenance.value, "core-kind": core.kind.value}
    meta.update(metadata or {})
    return MatrixDocument(
        kind="core", q=core.q, m=None, matrices={"Q": core.matrix}, metadata=meta
    )


def quh_document(
    matrix: QuhMatrix, metadata: typing.Optional[typing.Dict[str, str]] = None
) -> MatrixDocument:
    return MatrixDocument(
        kind="quh",
        q=matrix.q_param,
        m=matrix.m,
        matrices={"A": matrix.A, "B": matrix.B},
        metadata=dict(metadata or {}),
    )


def pair_document(
    a: AnyMatrix,
    b: AnyMatrix,
    q: int,
    m: typing.Optional[int],
    metadata: typing.Optional[typing.Dict[str, str]] = None,
) -> MatrixDocument:
    """
    A ``sign-pair`` document for a real pair, a ``gauss`` document with ``C`` and ``D`` for a
    Gaussian one.
    """
    if isinstance(a, GaussMatrix) or isinstance(b, GaussMatrix):
        matrices: typing.Dict[str, AnyMatrix] = {"C": a.to_gauss(), "D": b.to_gauss()}
        kind: DocumentKind = "gauss"
    else:
        matrices = {"A": a, "B": b}
        kind = "sign-pair"
    return MatrixDocument(
        kind=kind,
        q=q,
        m=m,
        matrices=matrices,
        metadata=dict(metadata or {}),
    )


def single_document(
    kind: DocumentKind,
    matrix: AnyMatrix,
    q: int,
    m: typing.Optional[int],
    metadata: typing.Optional[typing.Dict[str, str]] = None,
) -> MatrixDocument:
    """
    A ``gauss`` document with ``M`` or a ``hadamard`` document with ``H``.
    """
    name = {"gauss": "M", "hadamard": "H"}.get(kind)
    if name is None:
        raise DocumentError(f"Kind '{kind}' does not hold a single matrix")
    return MatrixDocument(
        kind=kind, q=q, m=m, matrices={name: matrix}, metadata=dict(metadata or {})
    )


def coeffs_document(
    coeffs: typing.Dict[str, Coefficients],
    q: int,
    m: int,
    metadata: typing.Optional[typing.Dict[str, str]] = None,
) -> MatrixDocument:
    return MatrixDocument(
        kind="scheme-coeffs", q=q, m=m, coeffs=coeffs, metadata=dict(metadata or {})
    )


# JSON


def _label_key(label: ClassLabel) -> str:
    return "".join(str(c) for c in label)


def _json_value(value: Scalar) -> typing.Any:
    return list(value) if isinstance(value, tuple) else value


def to_json_obj(document: MatrixDocument) -> typing.Dict[str, typing.Any]:
    obj: typing.Dict[str, typing.Any] = {
        "kind": document.kind,
        "q": document.q,
        "m": document.m,
        "n": document.n,
        "metadata": dict(document.metadata),
    }
    if document.kind == "scheme-coeffs":
        obj["coeffs"] = {
            name: {_label_key(label): _json_value(v) for label, v in table.items()}
            for name, table in document.coeffs.items()
        }
    for name, matrix in document.matrices.items():
        obj[name] = matrix.to_pairs() if isinstance(matrix, GaussMatrix) else matrix.to_list()
    return obj


def emit_json(document: MatrixDocument) -> str:
    return json.dumps(to_json_obj(document), sort_keys=True, separators=(",", ":")) + "\n"


def _parse_label(key: str, m: int) -> ClassLabel:
    if len(key) != m or any(c not in "012" for c in key):
        raise DocumentError(f"Invalid class label '{key}' for depth {m}")
    return tuple(int(c) for c in key)


def _parse_scalar(value: typing.Any) -> Scalar:
    if isinstance(value, bool):
        raise DocumentError(f"Invalid coefficient {value!r}")
    if isinstance(value, int):
        return value
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        return value[0], value[1]
    raise DocumentError(f"Invalid coefficient {value!r}")


def _build(fields: typing.Dict[str, typing.Any], n: typing.Optional[int]) -> MatrixDocument:
    try:
        document = MatrixDocument(**fields)
    except (pydantic.ValidationError, QuhmError) as e:
        raise DocumentError(f"Inconsistent document: {e}") from e
    if n is not None and document.n != n:
        raise DocumentError(f"Declared order {n} but the content has order {document.n}")
    return document


def parse_json(text: str) -> MatrixDocument:
    """
    Raises
    ------
    :py:exc:`quhm.errors.DocumentError` :
        If the text is not a well-formed document.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"Invalid JSON: {e}") from e
    if not isinstance(obj, dict):
        raise DocumentError("A document must be a JSON object")
    kind = obj.pop("kind", None)
    if kind not in CANONICAL_NAMES:
        raise DocumentError(f"Unknown document kind {kind!r}")
    fields: typing.Dict[str, typing.Any] = {
        "kind": kind,
        "q": obj.pop("q", None),
        "m": obj.pop("m", None),
        "metadata": obj.pop("metadata", {}),
    }
    n = obj.pop("n", None)
    if kind == "scheme-coeffs":
        raw = obj.pop("coeffs", None)
        if not isinstance(raw, dict) or not isinstance(fields["m"], int):
            raise DocumentError("A scheme-coeffs document needs a depth and a coeffs object")
        fields["coeffs"] = {
            name: {
                _parse_label(key, fields["m"]): _parse_scalar(value)
                for key, value in table.items()
            }
            for name, table in raw.items()
        }
    else:
        matrices: typing.Dict[str, AnyMatrix] = {}
        for name in list(obj):
            rows = obj.pop(name)
            try:
                if kind == "gauss":
                    matrices[name] = GaussMatrix.from_pairs(rows)
                else:
                    matrices[name] = IntMatrix(rows)
            except (QuhmError, TypeError, ValueError) as e:
                raise DocumentError(f"Matrix '{name}': {e}") from e
        fields["matrices"] = matrices
    if obj:
        raise DocumentError(f"Unexpected keys {sorted(obj)}")
    return _build(fields, n)


# Text


def _matrix_lines(name: str, matrix: AnyMatrix) -> typing.List[str]:
    if isinstance(matrix, GaussMatrix):
        re, im = matrix.re, matrix.im
    else:
        re, im = matrix.entries, np.zeros_like(matrix.entries)
    lines = []
    for i, (row_re, row_im) in enumerate(zip(re, im)):
        try:
            lines.append("".join(_SYMBOLS[int(a), int(b)] for a, b in zip(row_re, row_im)))
        except KeyError:
            raise DocumentError(
                f"Matrix '{name}' row {i} has an entry outside of 1, -1, 0, i, -i"
            ) from None
    return lines


def _text_scalar(value: Scalar) -> str:
    return f"{value[0]},{value[1]}" if isinstance(value, tuple) else str(value)


def emit_text(document: MatrixDocument) -> str:
    m = "-" if document.m is None else str(document.m)
    out = [f"{document.kind} {document.q} {m} {document.n}"]
    if document.kind == "scheme-coeffs":
        for name in document.names:
            for label in sorted(document.coeffs[name]):
                digits = _label_key(label) or "-"
                out.append(f"{name} {digits} {_text_scalar(document.coeffs[name][label])}")
        return "\n".join(out) + "\n"
    blocks = ["\n".join(_matrix_lines(name, document.matrices[name])) for name in document.names]
    return out[0] + "\n" + "\n\n".join(blocks) + "\n"


def _parse_int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise DocumentError(f"Invalid {what} '{token}'") from None


def _parse_text_scalar(token: str) -> Scalar:
    if "," in token:
        re, im = token.split(",", 1)
        return _parse_int(re, "coefficient"), _parse_int(im, "coefficient")
    return _parse_int(token, "coefficient")


def parse_text(text: str) -> MatrixDocument:
    """
    Raises
    ------
    :py:exc:`quhm.errors.DocumentError` :
        If the text does not follow the grammar or is inconsistent.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise DocumentError("Empty document")
    header = lines[0].split()
    if len(header) != 4:
        raise DocumentError(f"Invalid header '{lines[0]}'")
    kind, q_token, m_token, n_token = header
    if kind not in CANONICAL_NAMES:
        raise DocumentError(f"Unknown document kind '{kind}'")
    q = _parse_int(q_token, "q")
    m = None if m_token == "-" else _parse_int(m_token, "m")
    n = _parse_int(n_token, "order")
    fields: typing.Dict[str, typing.Any] = {"kind": kind, "q": q, "m": m}

    if kind == "scheme-coeffs":
        coeffs: typing.Dict[str, Coefficients] = {}
        for line in lines[1:]:
            parts = line.split(" ")
            if len(parts) != 3:
                raise DocumentError(f"Invalid coefficient line '{line}'")
            name, key, value = parts
            label = _parse_label("" if key == "-" else key, m or 0)
            coeffs.setdefault(name, {})[label] = _parse_text_scalar(value)
        fields["coeffs"] = coeffs
        return _build(fields, n)

    blocks: typing.List[typing.List[str]] = [[]]
    for line in lines[1:]:
        if line == "":
            blocks.append([])
        else:
            blocks[-1].append(line)
    options = [names for names in CANONICAL_NAMES[kind] if len(names) == len(blocks)]
    if not options:
        raise DocumentError(f"A {kind} document cannot hold {len(blocks)} matrices")
    matrices: typing.Dict[str, AnyMatrix] = {}
    for name, block in zip(options[0], blocks):
        if len(block) != n or any(len(row) != n for row in block):
            raise DocumentError(f"Matrix '{name}' is not {n} x {n}")
        try:
            values = [[_VALUES[c] for c in row] for row in block]
        except KeyError as e:
            raise DocumentError(f"Matrix '{name}' has an unknown symbol {e}") from None
        array = np.array(values, dtype=np.int64)
        if kind == "gauss":
            matrices[name] = GaussMatrix(array[:, :, 0], array[:, :, 1])
        elif array[:, :, 1].any():
            raise DocumentError(f"Matrix '{name}' of a {kind} document has imaginary entries")
        else:
            matrices[name] = IntMatrix(array[:, :, 0])
    fields["matrices"] = matrices
    return _build(fields, n)


# Files


def emit(document: MatrixDocument, fmt: DocumentFormat = "json") -> str:
    return emit_json(document) if fmt == "json" else emit_text(document)


def parse(text: str, fmt: typing.Optional[DocumentFormat] = None) -> MatrixDocument:
    """
    Parse either format; without ``fmt`` a leading ``{`` selects JSON.
    """
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "txt"
    return parse_json(text) if fmt == "json" else parse_text(text)


def read_document(path: typing.Union[str, pathlib.Path]) -> MatrixDocument:
    """
    Raises
    ------
    :py:exc:`quhm.errors.DocumentError` :
        If the file cannot be read or parsed.
    """
    try:
        text = pathlib.Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(f"Cannot read {path}: {e}") from e
    log.debug("Read %d bytes from %s", len(text), path)
    return parse(text)


def write_document(
    document: MatrixDocument,
    path: typing.Union[str, pathlib.Path],
    fmt: DocumentFormat = "json",
) -> None:
    pathlib.Path(path).write_text(emit(document, fmt), encoding="utf-8")
    log.debug("Wrote a %s document of order %d to %s", document.kind, document.n, path)
