import pytest

import oracles as O
from weakring import predicates as pr
from weakring.predicates import ClassificationReport, classify, flag_implication_violations
from weakring.rings import build

# spot flags, each derived by hand or by the oracles module
CASES = {
    "Zn(12)": dict(weakly_nil_clean=True, nil_clean=False, uniquely_weakly_nil_clean=True, abelian=True),
    "Zn(5)": dict(weakly_nil_clean=False, clean=True, local=True, reduced=True),
    "Zn(3)": dict(weakly_nil_clean=True, nil_clean=False, nil_involution_property=True, two_unit=True),
    "Zn(8)": dict(nil_clean=True, uniquely_nil_clean=True, local=True, two_in_J=True),
    "M(2,Zn(2))": dict(nil_clean=True, abelian=False, uniquely_weakly_nil_clean=False, commutative=False),
    "M(2,Zn(3))": dict(weakly_nil_clean=False, nil_clean=False, clean=True, involution_property=True),
    "T(2,Zn(3))": dict(weakly_nil_clean=False, abelian=False),
    "T(2,Zn(2))": dict(weakly_nil_clean=True, nil_clean=True, abelian=False),
    "Prod(Zn(3),Zn(3))": dict(weakly_nil_clean=False, boolean=False, reduced=True),
    "Prod(Zn(2),Zn(2))": dict(boolean=True, nil_clean=True, strongly_regular=True),
    "Zn(1)": dict(weakly_nil_clean=True, local=False, boolean=True),
}


@pytest.mark.parametrize("text", sorted(CASES))
def test_spot_flags(text):
    R = build(text)
    for name, value in CASES[text].items():
        assert pr.flag(R, name) is value, name


def test_skew6_flags():
    R = build("Skew(6)")
    assert pr.flag(R, "weakly_nil_clean")
    assert pr.flag(R, "abelian")
    assert not pr.flag(R, "commutative")
    # S/J is Z6 here, so S is not local (only prime-power n gives a local ring)
    assert not pr.flag(R, "local")
    assert pr.flag(build("Skew(2)"), "local") and pr.flag(build("Skew(3)"), "local")


@pytest.mark.parametrize("text", ["Zn(12)", "Zn(10)", "T(2,Zn(2))", "T(2,Zn(3))", "M(2,Zn(2))", "Skew(2)",
                                  "Prod(Zn(3),Zn(3))", "TrivExt(Zn(3))", "Prod(Zn(2),Zn(3))"])
def test_wnc_flag_matches_oracle(text):
    R = build(text)
    assert pr.flag(R, "weakly_nil_clean") == O.naive_ring_wnc(R)


def test_zn_sweep_matches_formula():
    for n in range(1, 201):
        assert pr.is_weakly_nil_clean_ring(build(f"Zn({n})")) == O.zn_wnc_formula(n), n
    assert pr.zn_weakly_nil_clean_formula(108) and not pr.zn_weakly_nil_clean_formula(10)
    with pytest.raises(ValueError):
        pr.zn_weakly_nil_clean_formula(0)


def test_uniqueness_counts_idempotents_not_signs():
    # a = 3 in Z12 has 3 = 6 + 9 and 3 = 0 - 9: one idempotent, two signs
    R = build("Zn(12)")
    plus, either = pr._decomposition_counts(R)
    assert either[3] == 1
    assert pr.is_uniquely_weakly_nil_clean(R)


@pytest.mark.parametrize("text", ["Zn(12)", "Zn(36)", "Zn(5)", "Skew(6)", "Skew(12)", "M(2,Zn(3))", "M(3,Zn(2))",
                                  "T(3,Zn(2))", "TrivExt(Zn(12))", "Prod(Zn(9),Zn(8))", "Quot(Zn(12),[9])"])
def test_implications_hold(text):
    assert flag_implication_violations(classify(build(text)).flags) == []


def test_implication_checker_detects_breakage():
    flags = dict(classify(build("Zn(12)")).flags)
    flags["clean"] = False
    assert "weakly_nil_clean => clean" in flag_implication_violations(flags)


def test_report_json_roundtrip():
    rep = classify(build("T(2,Zn(2))"))
    assert ClassificationReport.from_json(rep.to_json()) == rep
    assert rep.counts == {"idempotents": 6, "units": 2, "nilpotents": 2, "J": 2, "center": 2}
    assert "weakly_nil_clean=true" in rep.render()


def test_radical_quotient_forms():
    assert pr.rj_is_boolean_z3(build("Zn(12)"))
    assert pr.rj_is_boolean_z3(build("Prod(Zn(2),Zn(2))"))
    assert not pr.rj_is_boolean_z3(build("Prod(Zn(3),Zn(3))"))
    assert not pr.rj_is_boolean_z3(build("M(2,Zn(2))"))
    assert pr.rj_is_semilocal_form(build("M(2,Zn(2))"))
    assert pr.rj_is_semilocal_form(build("Prod(M(2,Zn(2)),Zn(3))"))
    assert not pr.rj_is_semilocal_form(build("M(2,Zn(3))"))
    assert pr.is_z3(build("Quot(Zn(12),[4])")) is False and pr.is_z3(build("Quot(Zn(12),[9])"))


def test_structured_fast_paths():
    assert not pr.is_weakly_nil_clean_ring(build("M(4,Zn(3))"))
    assert not pr.is_nil_clean_ring(build("M(4,Zn(3))"))
