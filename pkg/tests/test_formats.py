import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import braces_up_to
from skewbrace.braces import trivial_brace
from skewbrace.catalog import catalog_group
from skewbrace.cohomology import abelian_group, h2_group, validate_cocycle
from skewbrace.errors import BraceAxiomFails, ParseError
from skewbrace.formats import (
    cocycle_from_json,
    cocycle_to_json,
    coefficient_coords,
    dumps,
    parse_brace_document,
    parse_brace_file,
    parse_coefficients,
    parse_group_file,
    write_brace_file,
    write_group_file,
)

TRIVIAL_2 = b"skewbrace v1 order=2\n0 1\n1 0\n\n0 1\n1 0\n"
SMALL = [B for _, B in braces_up_to(8)]


def test_trivial_document():
    A = parse_brace_file(TRIVIAL_2)
    assert A.order == 2
    assert write_brace_file(A) == TRIVIAL_2


def test_identity_not_zero_gives_hint():
    doc = b"skewbrace v1 order=2\n1 0\n0 1\n\n1 0\n0 1\n"
    with pytest.raises(ParseError) as exc:
        parse_brace_file(doc)
    assert exc.value.line == 2
    assert "renumber" in str(exc.value) and "element 1" in str(exc.value)


@pytest.mark.parametrize(
    "doc,line,col",
    [
        (b"skewbrace v2 order=2\n", 1, 1),
        (b"skewbrace v1 order=2\n0 1\n1 x\n\n0 1\n1 0\n", 3, 3),
        (b"skewbrace v1 order=2\n0 1\n1 0\n0 1\n1 0\n", 4, 1),
        (b"skewbrace v1 order=2\n0 1\n1 0\n\n0 1\n", 6, 1),
        (b"skewbrace v1 order=2\n0 1\n1 2\n\n0 1\n1 0\n", 3, 3),
        (b"skewbrace v1 order=2\n0 1\n1 0\n\n0 1\n1 0\nname=x\n", 7, 1),
        (b"skewbrace v1 order=2\n0  1\n1 0\n\n0 1\n1 0\n", 2, 1),
        (b"skewbrace v1 order=2\n0 1 1\n1 0\n\n0 1\n1 0\n", 2, 5),
        (b"skewbrace v1 order=2\n0\n1 0\n\n0 1\n1 0\n", 2, 2),
    ],
)
def test_parse_errors_locate_problem(doc, line, col):
    with pytest.raises(ParseError) as exc:
        parse_brace_file(doc)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_validation_error_propagates():
    s3 = catalog_group("S3").mul
    c6 = catalog_group("C6").mul
    doc = "\n".join(
        ["skewbrace v1 order=6"] + [" ".join(map(str, r)) for r in s3] + [""] + [" ".join(map(str, r)) for r in c6]
    )
    with pytest.raises(BraceAxiomFails):
        parse_brace_file(doc + "\n")


@given(st.sampled_from(SMALL), st.dictionaries(st.sampled_from(["name", "tag", "source"]), st.text("abc xyz=,.", max_size=8)))
def test_round_trip_bytes(A, meta):
    doc = write_brace_file(A, meta)
    B, m = parse_brace_document(doc)
    assert B == A and m == meta
    assert write_brace_file(B, m) == doc


def test_group_file_round_trip():
    G = catalog_group("Q8")
    doc = write_group_file(G, {"name": "Q8"})
    assert parse_group_file(doc) == G
    with pytest.raises(ParseError):
        parse_group_file(TRIVIAL_2)


def test_coefficients():
    assert parse_coefficients("Z/4 x Z/2") == [4, 2]
    assert parse_coefficients("Z/6") == [6]
    assert parse_coefficients("0") == []
    with pytest.raises(ParseError):
        parse_coefficients("Z/a")


@pytest.mark.parametrize("factors", [[2], [4, 2], [2, 3], [3, 3]])
def test_coefficient_coordinates_are_additive(factors):
    G = abelian_group(factors)
    C = coefficient_coords(factors)
    f = np.array(factors)
    for x in range(G.order):
        for y in range(G.order):
            assert ((C[x] + C[y]) % f == C[G.mul[x, y]]).all()


def test_cocycle_json_round_trip():
    K = trivial_brace(catalog_group("C2xC2"))
    for g in h2_group(K, abelian_group([2, 2])).generators:
        d = cocycle_to_json(g, [2, 2])
        p = validate_cocycle(cocycle_from_json(d, K))
        assert np.array_equal(p.alpha, g.alpha) and np.array_equal(p.mu, g.mu)
    with pytest.raises(ParseError):
        cocycle_from_json({"coefficients": [2], "alpha": [[0]], "mu": [[0]]}, K)


def test_dumps_is_deterministic():
    assert dumps({"b": 1, "a": [1, 2]}) == dumps({"a": [1, 2], "b": 1})
