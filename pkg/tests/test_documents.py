import pathlib
import tempfile
import unittest

import pydantic

from quhm.constructions import (
    assemble_quaternary_hadamard,
    construct_cd,
    construct_ja,
    construct_quh,
    hadamard_from_pair,
)
from quhm.cores import Provenance, jacobsthal, paley_skew_hadamard
from quhm.documents import (
    MatrixDocument,
    coeffs_document,
    core_document,
    emit,
    emit_json,
    emit_text,
    pair_document,
    parse,
    parse_json,
    parse_text,
    quh_document,
    read_document,
    single_document,
    write_document,
)
from quhm.errors import DocumentError
from quhm.exactmat import ones

QUH_TEXT = "quh 3 1 3\n+++\n+++\n+++\n\n+-+\n++-\n-++\n"
QUH_JSON = (
    '{"A":[[1,1,1],[1,1,1],[1,1,1]],"B":[[1,-1,1],[1,1,-1],[-1,1,1]],'
    '"kind":"quh","m":1,"metadata":{},"n":3,"q":3}\n'
)
COEFFS_TEXT = "scheme-coeffs 3 1 3\nA 0 1\nA 1 1\nA 2 1\nB 0 1\nB 1 1\nB 2 -1\n"


class TestSerialization(unittest.TestCase):
    """
    Test the JSON and text formats.
    """

    def test_quh_bytes(self):
        """
        Check the exact output for QUH(3, 3) in both formats.
        """
        document = quh_document(construct_quh(jacobsthal(3), 1))
        self.assertEqual(emit_json(document), QUH_JSON)
        self.assertEqual(emit_text(document), QUH_TEXT)

    def test_reemission(self):
        """
        Check that emitting a parsed document gives back the same text.
        """
        self.assertEqual(emit_json(parse_json(QUH_JSON)), QUH_JSON)
        self.assertEqual(emit_text(parse_text(QUH_TEXT)), QUH_TEXT)
        self.assertEqual(emit_json(parse_text(QUH_TEXT)), QUH_JSON)
        self.assertEqual(emit_text(parse_text(COEFFS_TEXT)), COEFFS_TEXT)

    def test_every_kind_round_trips(self):
        """
        Check that every kind re-emits byte for byte in both formats and keeps its contents.
        """
        j, a = construct_ja(jacobsthal(3), 1)
        documents = [core_document(jacobsthal(q)) for q in (3, 5, 7, 9)]
        documents += [
            pair_document(*construct_ja(jacobsthal(7), 1), 7, 1),
            quh_document(construct_quh(jacobsthal(3), 2), {"generator": "power"}),
            single_document("gauss", assemble_quaternary_hadamard(jacobsthal(5), 1), 5, 1),
            pair_document(*construct_cd(jacobsthal(5), 1), 5, 1),
            single_document("hadamard", paley_skew_hadamard(7), 7, None),
            single_document("hadamard", hadamard_from_pair(j, a, paley_skew_hadamard(3)), 3, 1),
            coeffs_document({"A": {(0, 0): 1, (1, 2): (0, -1)}, "B": {(2, 1): 3}}, 3, 2),
        ]
        for document in documents:
            for fmt in ("json", "txt"):
                text = emit(document, fmt)
                parsed = parse(text)
                self.assertEqual(emit(parsed, fmt), text, (document.kind, fmt))
                self.assertEqual(
                    (parsed.kind, parsed.q, parsed.m, parsed.names),
                    (document.kind, document.q, document.m, document.names),
                )
                self.assertEqual(parsed.matrices, document.matrices, (document.kind, fmt))
                self.assertEqual(parsed.coeffs, document.coeffs, (document.kind, fmt))
            self.assertEqual(parse(emit(document)).metadata, document.metadata)

    def test_gauss_symbols(self):
        """
        Check that i and j stand for i and -i.
        """
        text = "gauss 5 - 2\nij\n+0\n"
        document = parse_text(text)
        self.assertIsNone(document.m)
        self.assertEqual(document.names, ("M",))
        self.assertEqual(
            document.matrix("M").to_pairs(), [[[0, 1], [0, -1]], [[1, 0], [0, 0]]]
        )
        self.assertEqual(emit_text(document), text)
        self.assertEqual(emit_text(parse_json(emit_json(document))), text)

    def test_coefficients(self):
        """
        Check scheme coefficient documents.
        """
        document = coeffs_document(
            {"A": {(0,): 1, (1,): 1, (2,): 1}, "B": {(0,): 1, (1,): 1, (2,): -1}}, 3, 1
        )
        self.assertEqual(emit_text(document), COEFFS_TEXT)
        self.assertIn('"coeffs":{"A":{"0":1,"1":1,"2":1}', emit_json(document))
        self.assertEqual(parse(emit(document)).coeffs, document.coeffs)
        gaussian = coeffs_document({"A": {(): (2, -1)}}, 5, 0)
        self.assertEqual(emit_text(gaussian), "scheme-coeffs 5 0 1\nA - 2,-1\n")
        self.assertEqual(parse_text(emit_text(gaussian)).coeffs, {"A": {(): (2, -1)}})

    def test_core(self):
        """
        Check that a core survives a JSON round trip with its provenance.
        """
        document = parse(emit(core_document(jacobsthal(7))))
        self.assertEqual(document.metadata["core-kind"], "skew-symmetric")
        core = document.to_core()
        self.assertEqual(core.provenance, Provenance.JACOBSTHAL)
        self.assertTrue(core.is_skew)
        self.assertRaises(DocumentError, document.to_quh)


class TestParseErrors(unittest.TestCase):
    """
    Test refusal of malformed documents.
    """

    def test_text(self):
        """
        Check malformed text documents.
        """
        bad = [
            "",
            "quh 3 1\n",
            "circle 3 1 1\n+\n",
            "quh x 1 1\n+\n\n+\n",
            "quh 3 1 3\n+++\n+++\n+++\n",
            "quh 3 1 2\n+x\n++\n\n++\n++\n",
            "quh 3 1 2\n++\n+\n\n++\n++\n",
            "quh 3 1 1\ni\n\n+\n",
            "scheme-coeffs 3 1 3\nA 3 1\n",
            "scheme-coeffs 3 1 3\nA 0\n",
        ]
        for text in bad:
            with self.assertRaises(DocumentError, msg=repr(text)):
                parse_text(text)

    def test_json(self):
        """
        Check malformed JSON documents.
        """
        bad = [
            "{",
            "[1]",
            '{"kind":"circle"}',
            '{"kind":"hadamard","q":1,"m":0,"n":2,"metadata":{},"H":[[1]]}',
            '{"kind":"hadamard","q":1,"m":0,"n":1,"metadata":{},"H":[[1]],"extra":1}',
            '{"kind":"hadamard","q":1,"m":0,"n":1,"metadata":{},"G":[[1]]}',
            '{"kind":"scheme-coeffs","q":3,"m":1,"n":3,"metadata":{},"coeffs":{"A":{"0":true}}}',
        ]
        for text in bad:
            with self.assertRaises(DocumentError, msg=text):
                parse_json(text)

    def test_layout(self):
        """
        Check that matrix names must fit the kind.
        """
        with self.assertRaises(pydantic.ValidationError):
            MatrixDocument(kind="core", q=3, matrices={"A": ones(3)})
        with self.assertRaises(pydantic.ValidationError):
            MatrixDocument(kind="quh", q=3, m=1, matrices={"A": ones(3), "B": ones(2)})


class TestFiles(unittest.TestCase):
    """
    Test reading and writing documents.
    """

    def test_read_write(self):
        """
        Check that both formats are detected when reading.
        """
        document = parse_text(QUH_TEXT)
        with tempfile.TemporaryDirectory() as tmp:
            for fmt in ("json", "txt"):
                path = pathlib.Path(tmp, f"quh.{fmt}")
                write_document(document, path, fmt)
                self.assertEqual(emit_json(read_document(path)), QUH_JSON)
            with self.assertRaises(DocumentError):
                read_document(pathlib.Path(tmp, "missing.json"))
