"""
Command-line front end.

Exit codes: 0 when everything passed, 1 when a check failed, 2 for usage and parse errors and
3 when a construction failed its own verification.
"""
import argparse
import logging
import sys
import typing
from fractions import Fraction

import pydantic

from quhm import __version__
from quhm.checks import CheckResult, Report
from quhm.config import Settings, set_settings
from quhm.constructions import QuhMatrix, SeedPair
from quhm.cores import CoreMatrix, is_multicirculant, jacobsthal, verify_core, verify_skew_hadamard
from quhm.documents import (
    DocumentFormat,
    MatrixDocument,
    coeffs_document,
    core_document,
    emit,
    pair_document,
    quh_document,
    read_document,
    single_document,
    write_document,
)
from quhm.errors import (
    DocumentError,
    MatrixError,
    ParameterError,
    QuhmError,
    VerificationError,
)
from quhm.exactmat import GaussMatrix, IntMatrix
from quhm.generators import GENERATORS
from quhm.schemes import (
    TensorSchemeIndex,
    bose_mesner_coeffs,
    eigenmatrix_base,
    idempotents_base,
    scheme_from_core,
    spectrum_from_coeffs,
    spectrum_via_scheme,
    tensor_eigenmatrix,
    verify_eigenmatrix,
)
from quhm.utils import parse_factorization, prime_power
from quhm.verify import (
    best_bound,
    check_excess_lemma,
    excess,
    regular_rows,
    verify_amicable,
    verify_butson,
    verify_pair_identity,
    verify_quaternary_entries,
    verify_unit_hadamard,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CONSTRUCTION_FAILED = 3

ORDERING = "GF(q) elements by base-p digits, constant term least significant"
LABELING = "A1 = +1 positions of Q, A2 = -1 positions of Q"


class CheckContext:
    """
    Extra inputs some checks need.
    """

    factorization: typing.Optional[typing.List[int]]
    core: typing.Optional[CoreMatrix]

    def __init__(
        self,
        factorization: typing.Optional[typing.List[int]] = None,
        core: typing.Optional[CoreMatrix] = None,
    ) -> None:
        self.factorization = factorization
        self.core = core

    def core_for(self, q: int) -> CoreMatrix:
        return self.core if self.core is not None else jacobsthal(q)


CheckFunction = typing.Callable[[MatrixDocument, CheckContext], typing.List[CheckResult]]


def _skip(name: str, document: MatrixDocument) -> typing.List[CheckResult]:
    return [CheckResult.skipped(name, f"does not apply to a {document.kind} document")]


def _pair(document: MatrixDocument) -> typing.Optional[typing.Tuple[typing.Any, typing.Any]]:
    if document.kind in ("quh", "sign-pair"):
        return document.matrix("A"), document.matrix("B")
    if document.kind == "gauss" and "C" in document.matrices:
        return document.matrix("C"), document.matrix("D")
    return None


def _quh(document: MatrixDocument) -> typing.Optional[QuhMatrix]:
    if document.kind not in ("quh", "sign-pair"):
        return None
    return document.to_quh(check=False)


def check_amicable(document: MatrixDocument, ctx: CheckContext) -> typing.List[CheckResult]:
    pair = _pair(document)
    return _skip("amicable", document) if pair is None else [verify_amicable(*pair)]


def check_pair_identity(document: MatrixDocument, ctx: CheckContext) -> typing.List[CheckResult]:
    pair = _pair(document)
    if pair is None:
        return _skip("pair-identity", document)
    return [verify_pair_identity(pair[0], pair[1], document.q)]


def check_regular(document: MatrixDocument, ctx: CheckContext) -> typing.List[CheckResult]:
    matrix = _quh(document)
    return _skip("regular", document) if matrix is None else [regular_rows(matrix)]


def check_best_bound(document: MatrixDocument, ctx: CheckContext) -> typing.List[CheckResult]:
    matrix = _quh(document)
    if matrix is None:
        return _skip("best-bound", document)
    report = best_bound(matrix)
    return [report["best-bound"], report["best-equality"]]


def check_butson(document: MatrixDocument, ctx: CheckContext) -> typing.List[CheckResult]:
    matrix = _quh(document)
    if matrix is None:
        return _skip("butson", document)
    verdict = verify_butson(matrix)
    if not verdict:
        return [CheckResult.skipped("butson", f"q_param={matrix.q_param} gives no roots of unity")]
    return [CheckResult.passing("butson", verdict.label(matrix.n))]


def check_unit_hadamard(document: MatrixDocument, ctx: CheckContext) -> typing.List[CheckResult]:
    if document.kind == "gauss" and "M" in document.matrices:
        matrix = document.matrix("M")
        assert isinstance(matrix, GaussMatrix)
        return [verify_unit_hadamard(matrix)["unit-hadamard"]]
    quh = _quh(document)
    if quh is None:
        return _skip("unit-hadamard", document)
    report = verify_unit_hadamard(quh)
    if report.passed:
        return [CheckResult.passing("unit-hadamard", "amicable and pair-identity")]
    return [CheckResult.failing("unit-hadamard", witness=report.failures[0].witness)]


def check_quaternary_entries(
    document: MatrixDocument, ctx: CheckContext
) -> typing.List[CheckResult]:
    if document.kind != "gauss":
        return _skip("quaternary-entries", document)
    results = []
    for name in document.names:
        matrix = document.matrix(name)
        assert isinstance(matrix, GaussMatrix)
        result = verify_quaternary_entries(matrix)
        result.detail = f"matrix {name}"
        results.append(result)
    return results


def check_core(document: MatrixDocument, ctx: CheckContext) -> typing.List[CheckResult]:
    if document.kind != "core":
        return _skip("core", document)
    matrix = document.matrix("Q")
    assert isinstance(matrix, IntMatrix)
    return verify_core(matrix).results


def _skew_hadamard_report(document: MatrixDocument) -> typing.Optional[Report]:
    if document.kind != "hadamard":
        return None
    matrix = document.matrix("H")
    assert isinstance(matrix, IntMatrix)
    return verify_skew_hadamard(matrix)


def check_hadamard(document: MatrixDocument, ctx: CheckContext) -> typing.List[CheckResult]:
    report = _skew_hadamard_report(document)
    if report is None:
        return _skip("hadamard", document)
    return [report["sign-entries"], report["hadamard"]]


def check_skew_type(document: MatrixDocument, ctx: CheckContext) -> typing.List[CheckResult]:
    report = _skew_hadamard_report(document)
    return _skip("skew-type", document) if report is None else [report["skew-type"]]


def default_factorization(document: MatrixDocument) -> typing.Optional[typing.List[int]]:
    """
    ``[p] * (e m)`` for ``q = p^e`` when it multiplies to the document order.
    """
    if document.m is None or document.kind == "scheme-coeffs":
        return None
    try:
        p, e = prime_power(document.q)
    except ParameterError:
        return None
    dims = [p] * (e * document.m)
    return dims if p ** len(dims) == document.n else None


def check_multicirculant(
    document: MatrixDocument, ctx: CheckContext
) -> typing.List[CheckResult]:
    if document.kind == "scheme-coeffs":
        return _skip("multicirculant", document)
    if ctx.factorization is None:
        return [CheckResult.skipped("multicirculant", "no factorization given")]
    results = []
    for name in document.names:
        detail = f"matrix {name}, {ctx.factorization}"
        try:
            ok = is_multicirculant(document.matrix(name), ctx.factorization)
        except MatrixError as e:
            results.append(CheckResult.failing("multicirculant", detail=f"{detail}: {e}"))
            continue
        if ok:
            results.append(CheckResult.passing("multicirculant", detail))
        else:
            results.append(CheckResult.failing("multicirculant", detail=detail))
    return results


def _spectrum_result(certificates: typing.Sequence[typing.Any]) -> CheckResult:
    bad = next((c for c in certificates if not c.passed), None)
    if bad is None:
        return CheckResult.passing("spectrum", f"{len(certificates)} eigenvalues unimodular")
    return CheckResult.failing(
        "spectrum", detail=f"class {bad.label}: |value|^2 = {bad.norm}, expected {bad.expected}"
    )


def check_membership(document: MatrixDocument, ctx: CheckContext) -> typing.List[CheckResult]:
    matrix = _quh(document)
    if matrix is None or document.m is None or document.n != document.q**document.m:
        return _skip("membership", document)
    core = ctx.core_for(document.q)
    idx = TensorSchemeIndex(q=document.q, m=document.m)
    results = []
    for name in ("A", "B"):
        result = bose_mesner_coeffs(document.matrix(name), idx, core).check()
        result.detail = f"pattern {name}; {result.detail}"
        results.append(result)
    if all(results) and core.q % 4 == 3:
        results.append(_spectrum_result(spectrum_via_scheme(matrix, idx, core)))
    return results


def _certificates_from_coeffs(document: MatrixDocument) -> typing.List[CheckResult]:
    idx = TensorSchemeIndex(q=document.q, m=typing.cast(int, document.m))
    certificates = spectrum_from_coeffs(document.coeffs["A"], document.coeffs["B"], idx)
    return [_spectrum_result(certificates)]


def check_spectrum(document: MatrixDocument, ctx: CheckContext) -> typing.List[CheckResult]:
    if document.kind != "scheme-coeffs" or "B" not in document.coeffs:
        return _skip("spectrum", document)
    return _certificates_from_coeffs(document)


CHECKS: typing.Dict[str, CheckFunction] = {
    "core": check_core,
    "amicable": check_amicable,
    "pair-identity": check_pair_identity,
    "quaternary-entries": check_quaternary_entries,
    "unit-hadamard": check_unit_hadamard,
    "regular": check_regular,
    "best-bound": check_best_bound,
    "butson": check_butson,
    "hadamard": check_hadamard,
    "skew-type": check_skew_type,
    "multicirculant": check_multicirculant,
    "membership": check_membership,
    "spectrum": check_spectrum,
}
"""
Checks the ``verify`` command can run on a document, by name.
"""

DEFAULT_CHECKS: typing.Dict[str, typing.List[str]] = {
    "core": ["core"],
    "sign-pair": ["amicable", "pair-identity"],
    "quh": ["amicable", "pair-identity", "regular", "best-bound", "butson"],
    "gauss": ["quaternary-entries", "amicable", "pair-identity", "unit-hadamard"],
    "hadamard": ["hadamard"],
    "scheme-coeffs": ["spectrum"],
}
"""
Checks run on a document of each kind when none are requested.
"""


def run_checks(
    document: MatrixDocument,
    checks: typing.Optional[typing.Sequence[str]] = None,
    ctx: typing.Optional[CheckContext] = None,
) -> Report:
    """
    Run named checks (the defaults of the document kind when ``checks`` is empty) and
    collect their results.

    Raises
    ------
    :py:exc:`quhm.errors.ParameterError` :
        If a check name is unknown.
    """
    ctx = ctx or CheckContext()
    names = list(checks or DEFAULT_CHECKS[document.kind])
    if ctx.factorization is not None and "multicirculant" not in names:
        names.append("multicirculant")
    report = Report(f"{document.kind} document of order {document.n}")
    for name in names:
        try:
            function = CHECKS[name]
        except KeyError:
            raise ParameterError(f"Unknown check '{name}'") from None
        for result in function(document, ctx):
            report.add(result)
    return report


# Commands


def _load_core(path: typing.Optional[str]) -> typing.Optional[CoreMatrix]:
    return None if path is None else read_document(path).to_core()


def _output(document: MatrixDocument, out: typing.Optional[str], fmt: DocumentFormat) -> None:
    if out is None:
        sys.stdout.write(emit(document, fmt))
    else:
        write_document(document, out, fmt)


def _construction_document(
    kind: str, result: typing.Any, q: int, m: int, metadata: typing.Dict[str, str]
) -> MatrixDocument:
    if kind == "core":
        return core_document(result, metadata)
    if kind in ("ja", "seeded", "cd"):
        return pair_document(result[0], result[1], q, m, metadata)
    if kind == "quh":
        return quh_document(result, metadata)
    if kind == "qhad":
        return single_document("gauss", result, q, m, metadata)
    if kind == "paley":
        return single_document("hadamard", result, q, None, metadata)
    return single_document("hadamard", result, q, m, metadata)


def cmd_construct(args: argparse.Namespace) -> int:
    """
    Build an object, verify it unless told not to, and write its document with the list of
    checks that ran in the ``checks`` metadata entry.
    """
    core = _load_core(args.core_file)
    if core is None and args.q is None:
        raise ParameterError("Either --q or --core-file is required")
    params: typing.Dict[str, typing.Any] = {"q": args.q, "core": core, "verify": False}
    if args.kind == "seeded":
        if args.seed_file is None:
            raise ParameterError("construct seeded needs --seed-file")
        seed = read_document(args.seed_file)
        seed_core = core or jacobsthal(args.q)
        a, b = seed.matrix("A"), seed.matrix("B")
        assert isinstance(a, IntMatrix) and isinstance(b, IntMatrix)
        params["seed"] = SeedPair(a, b, seed_core.q)
    generator = GENERATORS[args.kind](**params)
    used_core = generator.get_core()
    result = generator.generate(args.m)
    metadata = {
        "construction": args.kind,
        "provenance": used_core.provenance.value,
        "ordering": ORDERING,
    }
    document = _construction_document(args.kind, result, used_core.q, args.m, metadata)
    if args.no_verify:
        stamp = "none"
    else:
        checks = ["hadamard", "skew-type"] if args.kind == "paley" else None
        report = run_checks(document, checks, CheckContext(core=used_core))
        if not report.passed:
            sys.stderr.write(report.render() + "\n")
            return EXIT_CONSTRUCTION_FAILED
        stamp = ",".join(dict.fromkeys(report.names))
        log.info("Construction verified: %s", stamp)
    stamped = document.model_copy(update={"metadata": {**document.metadata, "checks": stamp}})
    _output(stamped, args.out, args.format)
    return EXIT_OK


def _excess_lemma(args: argparse.Namespace) -> int:
    core = _load_core(args.core_file)
    if core is None:
        if args.q is None:
            raise ParameterError("--check excess-lemma needs --q or --core-file")
        core = jacobsthal(args.q)
    report, rows = check_excess_lemma(core, args.m_max)
    print(
        f"{'m':>3} {'S(J_m)':>16} {'expected':>16} "
        f"{'S(A_m)':>16} {'expected':>16} {'recurrence':>10}"
    )
    for row in rows:
        print(row.render())
    print(report.render())
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_verify(args: argparse.Namespace) -> int:
    checks = list(args.check or [])
    if "excess-lemma" in checks:
        return _excess_lemma(args)
    if args.path is None:
        raise ParameterError("verify needs a document path")
    document = read_document(args.path)
    factorization = parse_factorization(args.factorization) if args.factorization else None
    ctx = CheckContext(factorization, _load_core(args.core_file))
    report = run_checks(document, checks, ctx)
    print(report.render())
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _format_fraction(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else str(value)


def summarize(
    document: MatrixDocument, factorization: typing.Optional[typing.List[int]] = None
) -> str:
    """
    One line describing a document: order, kind-specific verdicts and, for matrices, the
    multicirculant verdict for the given or derived factorization.
    """
    n = document.n
    parts = [f"order {n}"]
    if document.kind in ("quh", "sign-pair"):
        matrix = document.to_quh(check=False)
        unit = verify_unit_hadamard(matrix).passed
        parts.append(f"QUH({n},{matrix.q_param})" if unit else "not unit Hadamard")
        if unit:
            verdict = verify_butson(matrix)
            if verdict:
                parts.append(verdict.label(n))
            elif verdict.unreal:
                parts.append("unreal")
        parts.append("regular" if regular_rows(matrix) else "not regular")
        value = excess(matrix)
        numerator, denominator = value.magnitude_squared()
        parts.append(
            f"excess u={value.u} v={value.v} "
            f"|S|^2={_format_fraction(Fraction(numerator, denominator))}"
        )
    elif document.kind == "gauss":
        if "M" in document.matrices:
            matrix_m = document.matrix("M")
            assert isinstance(matrix_m, GaussMatrix)
            ok = verify_unit_hadamard(matrix_m).passed
            parts.append(f"quaternary Hadamard, MM*={n}I" if ok else "not unit Hadamard")
        else:
            c, d = document.matrix("C"), document.matrix("D")
            ok = verify_amicable(c, d).passed and verify_pair_identity(c, d, document.q).passed
            parts.append(
                f"quaternary pair, CC*+{document.q}DD*={(document.q + 1) * n}I"
                if ok
                else "not an amicable pair"
            )
    elif document.kind == "core":
        matrix_q = document.matrix("Q")
        assert isinstance(matrix_q, IntMatrix)
        try:
            core = document.to_core()
        except VerificationError:
            parts.append("not a core")
        else:
            parts.append(f"{core.kind.value} core, {core.provenance.value}")
    elif document.kind == "hadamard":
        report = _skew_hadamard_report(document)
        assert report is not None
        parts.append("Hadamard" if report["hadamard"] else "not Hadamard")
        if report["skew-type"]:
            parts.append("skew-type")
    else:
        names = ", ".join(document.names)
        parts.append(f"Bose-Mesner coefficients of {names} over {3 ** (document.m or 0)} classes")
        return ", ".join(parts)
    dims = factorization or default_factorization(document)
    if dims is not None:
        results = check_multicirculant(document, CheckContext(dims))
        parts.append(
            f"multicirculant {dims}" if all(results) else f"not multicirculant {dims}"
        )
    return ", ".join(parts)


def cmd_report(args: argparse.Namespace) -> int:
    document = read_document(args.path)
    factorization = parse_factorization(args.factorization) if args.factorization else None
    print(summarize(document, factorization))
    return EXIT_OK


def cmd_scheme_axioms(args: argparse.Namespace) -> int:
    core = _load_core(args.core_file) or jacobsthal(_require_q(args))
    try:
        scheme = scheme_from_core(core)
    except VerificationError as e:
        print(e.report.render())
        return EXIT_CHECK_FAILED
    print(scheme.report.render())
    print(f"valencies {scheme.valencies()}")
    print(scheme.render_intersection_numbers())
    return EXIT_OK


def cmd_scheme_eigenmatrix(args: argparse.Namespace) -> int:
    q = _require_q(args)
    base = eigenmatrix_base(q)
    matrix = tensor_eigenmatrix(base, args.m)
    for row in matrix.entries():
        print("  ".join(str(value) for value in row))
    core = jacobsthal(q)
    report = verify_eigenmatrix(scheme_from_core(core), base, idempotents_base(core))
    print(report.render())
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_scheme_membership(args: argparse.Namespace) -> int:
    core = _load_core(args.core_file)
    if args.path is not None:
        document = read_document(args.path)
        matrix = document.to_quh()
        if document.m is None:
            raise DocumentError("Membership needs a document with a depth")
        m = document.m
    else:
        core = core or jacobsthal(_require_q(args))
        matrix = GENERATORS["quh"](core=core).generate(args.m)
        m = args.m
    core = core or jacobsthal(matrix.q_param)
    idx = TensorSchemeIndex(q=core.q, m=m)
    results = {
        name: bose_mesner_coeffs(pattern, idx, core)
        for name, pattern in (("A", matrix.A), ("B", matrix.B))
    }
    failed = [name for name, result in results.items() if not result]
    if failed:
        for name in failed:
            print(f"pattern {name}: {results[name].check().render()}")
        return EXIT_CHECK_FAILED
    metadata = {"labeling": LABELING, "ordering": ORDERING}
    document = coeffs_document(
        {name: result.coeffs for name, result in results.items()}, core.q, m, metadata
    )
    certificates = spectrum_via_scheme(matrix, idx, core)
    _output(document, args.out, args.format)
    stream = sys.stdout if args.out is not None else sys.stderr
    for certificate in certificates:
        stream.write(certificate.render() + "\n")
    return EXIT_OK if all(c.passed for c in certificates) else EXIT_CHECK_FAILED


def _require_q(args: argparse.Namespace) -> int:
    if args.q is None:
        raise ParameterError("--q is required")
    return typing.cast(int, args.q)


# Parser


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "txt"), default="json")
    parser.add_argument("--out", help="write the document here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quhm",
        description="Quaternary unit Hadamard matrices from skew and symmetric cores.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    construct = commands.add_parser("construct", help="build and emit an object")
    construct.add_argument("kind", choices=sorted(GENERATORS))
    construct.add_argument("--q", type=int)
    construct.add_argument("--m", type=int, default=1)
    construct.add_argument("--no-verify", action="store_true")
    construct.add_argument("--core-file", help="a core document to use instead of Jacobsthal")
    construct.add_argument("--seed-file", help="a sign-pair document seeding the recursion")
    _add_output(construct)
    construct.set_defaults(handler=cmd_construct)

    verify = commands.add_parser("verify", help="run exact checks on a document")
    verify.add_argument("path", nargs="?")
    verify.add_argument(
        "--check", action="append", choices=sorted(CHECKS) + ["excess-lemma"]
    )
    verify.add_argument("--factorization", help="e.g. 3,3,3")
    verify.add_argument("--core-file")
    verify.add_argument("--q", type=int)
    verify.add_argument("--m-max", type=int, default=4)
    verify.set_defaults(handler=cmd_verify)

    report = commands.add_parser("report", help="summarize a document")
    report.add_argument("path")
    report.add_argument("--factorization")
    report.set_defaults(handler=cmd_report)

    scheme = commands.add_parser("scheme", help="association scheme tools")
    scheme_commands = scheme.add_subparsers(dest="scheme_command", required=True)
    axioms = scheme_commands.add_parser("axioms")
    axioms.add_argument("--q", type=int)
    axioms.add_argument("--core-file")
    axioms.set_defaults(handler=cmd_scheme_axioms)
    eigenmatrix = scheme_commands.add_parser("eigenmatrix")
    eigenmatrix.add_argument("--q", type=int)
    eigenmatrix.add_argument("--m", type=int, default=1)
    eigenmatrix.set_defaults(handler=cmd_scheme_eigenmatrix)
    membership = scheme_commands.add_parser("membership")
    membership.add_argument("path", nargs="?")
    membership.add_argument("--q", type=int)
    membership.add_argument("--m", type=int, default=1)
    membership.add_argument("--core-file")
    _add_output(membership)
    membership.set_defaults(handler=cmd_scheme_membership)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )


def main(argv: typing.Optional[typing.Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        set_settings(Settings.from_env())
        return typing.cast(int, args.handler(args))
    except VerificationError as e:
        sys.stderr.write(f"error: {e}\n")
        if args.command == "construct":
            return EXIT_CONSTRUCTION_FAILED
        return EXIT_CHECK_FAILED
    except (QuhmError, pydantic.ValidationError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
