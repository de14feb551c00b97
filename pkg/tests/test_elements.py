import pytest
from hypothesis import given
from hypothesis import strategies as hs

import oracles as O
from weakring import elements as el
from weakring import matgf
from weakring.rings import Element, build

SMALL = ["Zn(4)", "Zn(12)", "Zn(5)", "Prod(Zn(3),Zn(3))", "T(2,Zn(2))", "T(2,Zn(3))", "TrivExt(Zn(6))",
         "Skew(2)", "M(2,Zn(2))", "M(2,Zn(3))"]


def _keys(decs):
    return {(d.sign, d.nilpotent.index, d.idempotent.index) for d in decs}


@pytest.mark.parametrize("text", SMALL)
def test_decompositions_match_brute_force(text):
    R = build(text)
    for a in range(R.order):
        assert _keys(el.wnc_decompositions(Element(R, a))) == O.naive_wnc_set(R, a), a


def test_decomposition_examples():
    R = build("Zn(3)")
    [d] = el.wnc_decompositions(Element(R, 2))
    assert (d.sign, d.nilpotent.index, d.idempotent.index) == ("-", 0, 1)
    R = build("Zn(4)")
    decs = el.wnc_decompositions(Element(R, 3))
    assert [(d.sign, d.nilpotent.index, d.idempotent.index) for d in decs] == [("+", 2, 1), ("-", 0, 1)]
    assert decs[0].nilpotency_index == 2 and decs[1].nilpotency_index == 1


def test_canonical_order_and_first_mode():
    R = build("Zn(12)")
    decs = el.wnc_decompositions(Element(R, 3))
    es = [d.idempotent.index for d in decs]
    assert es == sorted(es)
    assert el.wnc_decompositions(Element(R, 3), "first") == decs[:1]
    with pytest.raises(ValueError):
        el.wnc_decompositions(Element(R, 3), "some")


def test_matrix_witness_has_no_decomposition():
    R = build("M(2,Zn(3))")
    a = Element(R, matgf.to_index(matgf.witness_matrix(3, 2)))
    assert el.wnc_decompositions(a) == []
    assert not el.is_weakly_nil_clean_element(a) and not el.is_nil_clean_element(a)


def test_structured_ring_decomposition():
    R = build("M(4,Zn(2))")
    assert not R.structured  # 2^16 fits under the table limit
    R = build("M(5,Zn(2))")
    assert R.structured
    a = Element(R, matgf.to_index(matgf.MatrixGF.diag(2, [1, 1, 0, 0, 1])))
    assert el.is_nil_clean_element(a)


@given(hs.sampled_from(SMALL), hs.data())
def test_unit_nilpotent_idempotent(text, data):
    R = build(text)
    a = Element(R, data.draw(hs.integers(0, R.order - 1)))
    ok, inv = el.is_unit(a)
    assert ok == (a.index in O.naive_units(R))
    if ok:
        assert (a * inv).index == R.one == (inv * a).index
    nil, k = el.is_nilpotent(a)
    assert nil == (a.index in O.naive_nilpotents(R))
    if nil:
        assert (a ** k).index == R.zero and (k == 1 or (a ** (k - 1)).index != R.zero)
    assert el.is_idempotent(a) == (a.index in O.naive_idempotents(R))


def test_zero_has_nilpotency_index_one():
    assert el.is_nilpotent(Element(build("Zn(8)"), 0)) == (True, 1)
    assert el.is_nilpotent(Element(build("Zn(8)"), 2)) == (True, 3)
    assert el.is_nilpotent(Element(build("Zn(8)"), 3)) == (False, None)


def test_nil_involution_decomposition():
    R = build("Zn(3)")
    for a in range(3):
        d = el.nil_involution_decomposition(Element(R, a))
        assert d is not None and (d.u + d.v).index == a
        assert el.is_involution(d.v)
    # in Z5, u and v both lie in {1, 4}, so only 0, 2, 3 are reachable
    assert el.nil_involution_decomposition(Element(build("Zn(5)"), 1)) is None
    assert el.nil_involution_decomposition(Element(build("Zn(5)"), 2)) is not None


@pytest.mark.parametrize("text", ["Zn(12)", "T(2,Zn(2))", "Skew(2)", "M(2,Zn(3))"])
def test_strongly_pi_regular_elements(text):
    R = build(text)
    for a in range(R.order):
        ok, n = el.is_strongly_pi_regular_element(Element(R, a))
        assert ok
        an, an1 = R.power(a, n), R.power(a, n + 1)
        assert any(R.mul(r, an1) == an for r in range(R.order))
        assert any(R.mul(an1, r) == an for r in range(R.order))


def test_strongly_pi_regular_index_values():
    R = build("Zn(12)")
    assert el.is_strongly_pi_regular_element(Element(R, 1)) == (True, 1)
    # least n, frozen from a direct scan of r * a^(n+1) = a^n modulo 12
    expected = {0: 1, 1: 1, 2: 2, 3: 1, 4: 1, 5: 1, 6: 2, 7: 1, 8: 1, 9: 1, 10: 2, 11: 1}
    assert {a: el.is_strongly_pi_regular_element(Element(R, a))[1] for a in range(12)} == expected
