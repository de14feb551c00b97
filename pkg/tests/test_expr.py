import pytest
from hypothesis import given
from hypothesis import strategies as hs

from weakring.errors import InvalidExpr
from weakring.expr import Matrix, Product, Quotient, Skew, Triangular, TrivExt, Zn, parse


def exprs():
    leaf = hs.builds(Zn, hs.integers(1, 40)) | hs.builds(Skew, hs.integers(2, 12))
    return hs.recursive(
        leaf,
        lambda inner: (
            hs.builds(Matrix, inner, hs.integers(1, 3))
            | hs.builds(lambda fs: Product(tuple(fs)), hs.lists(inner, min_size=1, max_size=3))
            | hs.builds(TrivExt, inner)
            | hs.builds(Triangular, inner, hs.integers(2, 3))
            | hs.builds(lambda b, g: Quotient(b, tuple(g)), inner, hs.lists(hs.integers(0, 9), max_size=3))
        ),
        max_leaves=4,
    )


@pytest.mark.parametrize(
    "text, expected",
    [
        ("Zn(12)", Zn(12)),
        ("M(2,Zn(3))", Matrix(Zn(3), 2)),
        ("Prod(Zn(2), Zn(3))", Product((Zn(2), Zn(3)))),
        ("Quot(Zn(12),[4])", Quotient(Zn(12), (4,))),
        ("TrivExt(Zn(4))", TrivExt(Zn(4))),
        ("T(2,Zn(2))", Triangular(Zn(2), 2)),
        ("Skew(6)", Skew(6)),
    ],
)
def test_parse_known(text, expected):
    assert parse(text) == expected


def test_canonical_text():
    assert str(parse(" Prod( Zn(2) ,M(2, Zn(3)) ) ")) == "Prod(Zn(2),M(2,Zn(3)))"
    assert str(parse("Quot(Zn(12),[4, 9])")) == "Quot(Zn(12),[4,9])"


@given(exprs())
def test_roundtrip(e):
    assert parse(str(e)) == e


@pytest.mark.parametrize(
    "text", ["", "Zn(0)", "Zn(-3)", "Zn(", "Zn(3))", "M(0,Zn(2))", "T(1,Zn(2))", "Skew(1)", "Prod()", "Foo(2)",
             "Quot(Zn(4),[-1])"],
)
def test_parse_rejects(text):
    with pytest.raises(InvalidExpr):
        parse(text)
