from fractions import Fraction
from pathlib import Path

import pytest

from compatlie.document import AlgebraDocument, CochainBlock, ParseError, parse, render
from compatlie.linalg import vec

DATA = Path(__file__).parent / "data"


def test_minimal_abelian_document():
    doc = parse("[algebra]\ndim 2\n")
    assert doc.dim == 2
    assert doc.pi1 == () and doc.pi2 == ()
    pair = doc.pair()
    assert pair.bracket1.is_zero() and pair.bracket2.is_zero()


def test_n2_document():
    doc = parse((DATA / "n2.alg").read_text())
    b = doc.bracket1()
    assert b.bracket_basis(0, 1) == vec([0, 1])
    assert doc.bracket2().is_zero()
    assert doc.op_matrix("N").shape() == (2, 2)
    w = doc.cochain("w1")
    assert w.value((0, 1)) == vec([0, 1])


def test_rationals_and_signs():
    doc = parse("[algebra]\ndim 2\n[pi1]\n1 2 1 -3/4\n1 2 2 +2\n")
    b = doc.bracket1()
    assert b.bracket_basis(0, 1) == (Fraction(-3, 4), Fraction(2))


def test_zero_denominator_reports_line():
    text = "[algebra]\ndim 2\n[pi1]\n1 2 1 1/0\n"
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.line == 4
    assert "zero denominator" in str(err.value)


def test_malformed_rational():
    with pytest.raises(ParseError) as err:
        parse("[algebra]\ndim 2\n[pi1]\n1 2 1 x\n")
    assert "malformed rational" in str(err.value)


def test_out_of_range_and_order():
    with pytest.raises(ParseError):
        parse("[algebra]\ndim 2\n[pi1]\n1 3 1 1\n")
    with pytest.raises(ParseError):
        parse("[algebra]\ndim 2\n[pi1]\n2 1 1 1\n")  # needs i < j


def test_duplicate_entry():
    with pytest.raises(ParseError) as err:
        parse("[algebra]\ndim 2\n[pi1]\n1 2 1 1\n1 2 1 2\n")
    assert "duplicate" in str(err.value)


def test_rep_block_parses():
    doc = parse(
        "[algebra]\ndim 2\n[rep]\ndim 2\nrho 1\nrow: 0 1\nrow: 0 0\n"
        "mu 2\nrow: 1 0\nrow: 0 1\n"
    )
    rep = doc.rep_pair()
    assert rep.module_dim == 2
    assert rep.rho[0][0, 1] == 1
    assert rep.rho[1].is_zero()  # omitted matrices default to zero
    assert rep.mu[1][0, 0] == 1


def test_rep_wrong_shape():
    with pytest.raises(ParseError):
        parse("[algebra]\ndim 2\n[rep]\ndim 2\nrho 1\nrow: 0 1\n")


def test_unknown_section_and_stray_content():
    with pytest.raises(ParseError):
        parse("[algebra]\ndim 2\n[nope]\n")
    with pytest.raises(ParseError):
        parse("dim 2\n")


def test_cochain_target_dim():
    doc = parse("[algebra]\ndim 3\n[cochain w]\ntarget 2\n1 2 2 5\n")
    w = doc.cochain("w")
    assert (w.source_dim, w.target_dim) == (3, 2)
    assert w.value((0, 1)) == vec([0, 5])
    with pytest.raises(ParseError):
        parse("[algebra]\ndim 3\n[cochain w]\ntarget 2\n1 2 3 5\n")


def test_roundtrip_fixture_corpus():
    for path in sorted(DATA.glob("*.alg")):
        doc = parse(path.read_text())
        again = parse(render(doc))
        assert again == doc, path.name
        # rendering is a fixed point
        assert render(again) == render(doc)


def test_roundtrip_with_all_blocks():
    doc = parse((DATA / "heisenberg_ext.alg").read_text())
    assert isinstance(doc, AlgebraDocument)
    assert parse(render(doc)) == doc
    block = dict(doc.cochains)["omega1"]
    assert block == CochainBlock(2, 1, ((1, 2, 1, Fraction(1)),))
