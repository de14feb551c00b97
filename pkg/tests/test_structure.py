import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as hs

import oracles as O
from weakring import structure as st
from weakring.errors import NotCentralIdempotent, PreconditionViolated, SixNotNilpotent
from weakring.rings import build

ORACLE_RINGS = ["Zn(12)", "Zn(8)", "Zn(36)", "Prod(Zn(2),Zn(3))", "T(2,Zn(2))", "T(2,Zn(3))", "TrivExt(Zn(4))",
                "Skew(2)", "Skew(3)", "M(2,Zn(2))", "M(2,Zn(3))", "Quot(Zn(12),[4])", "Quot(Zn(12),[9])",
                "T(3,Zn(2))"]

# frozen from oracles.naive_jacobson / naive_center / naive_idempotents / naive_units
FROZEN = {
    "Zn(12)": dict(J=2, idem=4, units=4, center=12),
    "Zn(8)": dict(J=4, idem=2, units=4, center=8),
    "T(2,Zn(2))": dict(J=2, idem=6, units=2, center=2),
    "T(2,Zn(3))": dict(J=3, idem=8, units=12, center=3),
    "TrivExt(Zn(4))": dict(J=8, idem=2, units=8, center=16),
    "Skew(3)": dict(J=27, idem=2, units=54, center=9),
    "M(2,Zn(3))": dict(J=1, idem=14, units=48, center=3),
}


def test_spot_values():
    assert st.jacobson_radical(build("Zn(12)")).indices == (0, 6)
    assert [e.index for e in st.idempotents(build("Zn(6)"))] == [0, 1, 3, 4]
    assert [u.index for u in st.units(build("Zn(12)"))] == [1, 5, 7, 11]
    assert st.ideal_generated(build("Zn(12)"), [9]).indices == (0, 3, 6, 9)


@pytest.mark.parametrize("text", sorted(FROZEN))
def test_frozen_counts(text):
    R = build(text)
    exp = FROZEN[text]
    assert len(st.jacobson_radical(R)) == exp["J"]
    assert int(st.idempotent_mask(R).sum()) == exp["idem"]
    assert int(st.unit_mask(R).sum()) == exp["units"]
    assert len(st.center(R)) == exp["center"]


@pytest.mark.parametrize("text", ORACLE_RINGS)
def test_masks_match_oracle(text):
    R = build(text)
    assert list(st.idempotent_indices(R)) == O.naive_idempotents(R)
    assert list(st.unit_indices(R)) == O.naive_units(R)
    assert set(st.nilpotent_indices(R).tolist()) == O.naive_nilpotents(R)
    assert list(st.jacobson_radical(R).members) == O.naive_jacobson(R)
    assert list(st.center(R).members) == O.naive_center(R)


@pytest.mark.parametrize("text", ["Zn(12)", "Skew(2)", "Skew(3)", "T(2,Zn(3))", "TrivExt(Zn(6))", "M(2,Zn(2))"])
def test_radical_methods_agree(text):
    R = build(text)
    assert st.jacobson_radical(R, "quasi_regular") == st.jacobson_radical(R, "nil_ideal")


def test_radical_of_large_ring_is_nil_and_an_ideal():
    R = build("Skew(12)")
    J = st.jacobson_radical(R)
    assert len(J) == 3456 and st.is_nil_ideal(J) and st.is_ideal(R, J.members)
    assert int(st.unit_mask(R).sum()) == 6912


@given(hs.sampled_from(["Zn(12)", "T(2,Zn(3))", "Skew(2)", "M(2,Zn(2))", "TrivExt(Zn(4))"]), hs.data())
def test_ideal_generated_matches_naive_closure(text, data):
    R = build(text)
    gens = data.draw(hs.lists(hs.integers(0, R.order - 1), min_size=1, max_size=2))
    assert list(st.ideal_generated(R, gens).members) == O.naive_ideal(R, gens)


def test_ideal_operations_in_zn():
    R = build("Zn(12)")
    I2, I3 = st.ideal_generated(R, [2]), st.ideal_generated(R, [3])
    assert len(st.ideal_sum(I2, I3)) == 12
    assert st.ideal_intersection(I2, I3).indices == (0, 6)
    assert st.ideal_product(I2, I3).indices == (0, 6)
    assert st.ideal_power(st.ideal_generated(R, [2]), 2).indices == (0, 4, 8)


def test_quotient_structure():
    Q = st.quotient(build("Zn(12)"), st.ideal_generated(build("Zn(12)"), [4]))
    assert Q.order == 4
    Q = build("Quot(Zn(12),[4])")
    assert [int(r) for r in Q.reps] == [0, 1, 2, 3]


@given(hs.sampled_from(["Zn(36)", "Skew(3)", "T(2,Zn(4))", "TrivExt(Zn(12))"]), hs.data())
def test_projection_is_homomorphism(text, data):
    R = build(text)
    I = st.jacobson_radical(R)
    Q = st.quotient(R, I)
    a = data.draw(hs.integers(0, R.order - 1))
    b = data.draw(hs.integers(0, R.order - 1))
    p = Q.projection
    assert p[R.add(a, b)] == Q.add(p[a], p[b])
    assert p[R.mul(a, b)] == Q.mul(p[a], p[b])


def test_center_contains_scalars_and_is_commutative():
    R = build("Skew(6)")
    Z = st.center(R)
    assert len(Z) < R.order
    assert all(R.scalar(k) in set(Z.members.tolist()) for k in range(6))
    m = Z.members
    assert np.array_equal(R.mul(m[:, None], m[None, :]), R.mul(m[None, :], m[:, None]))


def test_lift_idempotent_mod_radical():
    R = build("Zn(36)")
    J = st.jacobson_radical(R)
    # 4 + J and 9 + J are idempotent modulo J; the lifts are 28 and 9
    f = st.lift_idempotent(R, J, 4)
    assert R.mul(f.index, f.index) == f.index and R.sub(f.index, 4) in J
    assert st.lift_idempotent(R, J, 10).index == 28


def test_lift_preconditions():
    R = build("Zn(6)")
    with pytest.raises(PreconditionViolated):
        st.lift_idempotent(R, st.ideal_generated(R, [3]), 1)
    R = build("Zn(9)")
    with pytest.raises(PreconditionViolated):
        st.lift_idempotent(R, st.jacobson_radical(R), 2)  # 2^2 - 2 = 2 is not in J = {0,3,6}


def test_crt_split_z12():
    s = st.crt_split_2_3(build("Zn(12)"))
    assert (s.r1.order, s.r2.order) == (4, 3) and s.verified


def test_crt_split_requires_six_nilpotent():
    with pytest.raises(SixNotNilpotent):
        st.crt_split_2_3(build("Zn(5)"))


def test_peirce_split():
    R = build("Zn(6)")
    s = st.peirce_split(R, 3)
    assert s.verified and sorted([s.corner.order, s.complement.order]) == [2, 3]
    with pytest.raises(NotCentralIdempotent):
        st.peirce_split(build("M(2,Zn(2))"), 1)  # e11 is not central


def test_isomorphism_rejects_non_homomorphism():
    R = build("Zn(6)")
    P = build("Prod(Zn(2),Zn(3))")
    good = np.asarray([(x % 2) * 3 + x % 3 for x in range(6)])
    assert st.verify_isomorphism(R, P, good)
    assert not st.verify_isomorphism(R, P, good[::-1])


def test_indecomposable():
    assert st.is_indecomposable(build("Zn(9)"))
    assert not st.is_indecomposable(build("Zn(6)"))
    assert not st.is_indecomposable(build("Zn(1)"))
