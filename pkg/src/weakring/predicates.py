"""Ring-level properties and the classification report."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import matgf
from . import structure as st
from .errors import BudgetExceeded
from .rings import FiniteRing

FLAG_NAMES = (
    "clean",
    "nil_clean",
    "weakly_nil_clean",
    "uniquely_nil_clean",
    "uniquely_weakly_nil_clean",
    "abelian",
    "boolean",
    "reduced",
    "commutative",
    "local",
    "nil_involution_property",
    "involution_property",
    "strongly_pi_regular",
    "strongly_regular",
    "two_in_J",
    "two_unit",
    "six_nilpotent",
)
COUNT_NAMES = ("idempotents", "units", "nilpotents", "J", "center")


def _cached(R, key, fn):
    if key not in R.cache:
        R.cache[key] = fn()
    return R.cache[key]


def _decomposition_counts(R: FiniteRing):
    """Per element: number of idempotents e with a - e nilpotent, and with a ± e nilpotent.

    Uniqueness is uniqueness of the idempotent: when e is fixed, a - e and
    a + e may both be nilpotent (e.g. a = 3, e = 9 in Z12) without giving a
    genuinely different presentation.
    """

    def compute():
        x = R.indices()
        nil = st.nil_mask(R)
        plus = np.zeros(R.order, dtype=np.int64)
        either = np.zeros(R.order, dtype=np.int64)
        for e in st.idempotent_indices(R):
            p = nil[R.sub(x, int(e))]
            plus += p
            either += p | nil[R.add(x, int(e))]
        return plus, either

    return _cached(R, "wnc_counts", compute)


def _matrix_fast_path(R: FiniteRing) -> bool:
    return R.structured and R.base.order in matgf.SUPPORTED_PRIMES


def is_weakly_nil_clean_ring(R: FiniteRing) -> bool:
    if _matrix_fast_path(R):
        return matgf.matrix_ring_weakly_nil_clean(R.base.order, R.k)
    _, either = _decomposition_counts(R)
    return bool((either > 0).all())


def is_nil_clean_ring(R: FiniteRing) -> bool:
    if _matrix_fast_path(R):
        p = R.base.order
        if p == 2:
            return matgf.matrix_ring_weakly_nil_clean(p, R.k)
        # the same witness that blocks weak nil-cleanness blocks nil-cleanness
        if p == 3 and R.k >= 2:
            return matgf.nil_clean_check(matgf.witness_matrix(p, R.k)) is not None
        raise BudgetExceeded(f"{R.label}: no structured fast path for nil-cleanness")
    plus, _ = _decomposition_counts(R)
    return bool((plus > 0).all())


def is_uniquely_weakly_nil_clean(R: FiniteRing) -> bool:
    _, either = _decomposition_counts(R)
    return bool((either == 1).all())


def is_uniquely_nil_clean(R: FiniteRing) -> bool:
    plus, _ = _decomposition_counts(R)
    return bool((plus == 1).all())


def is_clean_ring(R: FiniteRing) -> bool:
    x = R.indices()
    unit = st.unit_mask(R)
    ok = np.zeros(R.order, dtype=bool)
    for e in st.idempotent_indices(R):
        ok |= unit[R.sub(x, int(e))]
    return bool(ok.all())


def is_abelian(R: FiniteRing) -> bool:
    return bool(st.central_mask(R)[st.idempotent_indices(R)].all())


def is_boolean(R: FiniteRing) -> bool:
    return bool(st.idempotent_mask(R).all())


def is_reduced(R: FiniteRing) -> bool:
    return int(st.nil_mask(R).sum()) == 1


def is_commutative(R: FiniteRing) -> bool:
    gens = st.additive_generators(R)
    return all(R.mul(a, b) == R.mul(b, a) for a in gens for b in gens)


def is_local(R: FiniteRing) -> bool:
    """Non-units coincide with J(R); the zero ring is not local."""
    if R.order == 1:
        return False
    nonunits = np.flatnonzero(~st.unit_mask(R))
    return bool(np.array_equal(nonunits, st.jacobson_radical(R).members))


def has_nil_involution_property(R: FiniteRing) -> bool:
    x = R.indices()
    nil = st.nil_mask(R)
    ok = np.zeros(R.order, dtype=bool)
    for v in st.involution_indices(R):
        u = R.sub(x, int(v))
        ok |= nil[R.sub(u, R.one)] | nil[R.add(u, R.one)]
    return bool(ok.all())


def has_involution_property(R: FiniteRing) -> bool:
    x = R.indices()
    unit = st.unit_mask(R)
    ok = np.zeros(R.order, dtype=bool)
    for v in st.involution_indices(R):
        ok |= unit[R.sub(x, int(v))]
    return bool(ok.all())


def strongly_pi_regular_mask(R: FiniteRing, power_cap: int = 64) -> np.ndarray:
    """Per-element strong pi-regularity.

    A repeat a^j = a^(j+p) in the power sequence certifies a^j = a^(j+1)·a^(p-1)
    = a^(p-1)·a^(j+1), so most elements are settled by one vectorized power
    walk; the rest go through the per-element membership test.
    """
    from .elements import is_strongly_pi_regular_element

    def compute():
        x = R.indices()
        powers = [x]
        settled = np.zeros(R.order, dtype=bool)
        for _ in range(power_cap):
            nxt = R.mul(powers[-1], x)
            for prev in powers:
                settled |= prev == nxt
            if settled.all():
                return settled
            powers.append(nxt)
        for i in np.flatnonzero(~settled):
            settled[i] = is_strongly_pi_regular_element(R.element(int(i)))[0]
        return settled

    return _cached(R, "spr_mask", compute)


def is_strongly_pi_regular_ring(R: FiniteRing) -> bool:
    return bool(strongly_pi_regular_mask(R).all())


def weakly_nil_clean_mask(R: FiniteRing) -> np.ndarray:
    """Elements admitting a decomposition b ± e."""
    return _decomposition_counts(R)[1] > 0


def is_strongly_regular(R: FiniteRing) -> bool:
    """Abelian and a ∈ a²R for every a."""
    if not is_abelian(R):
        return False
    from .elements import _right_multiples_contain

    x = R.indices()
    sq = R.mul(x, x)
    if R.materialized:
        M = R.mul_table
        return bool((M[sq] == x[:, None]).any(axis=1).all())
    return all(_right_multiples_contain(R, int(s), int(a)) for a, s in zip(x, sq))


def two_in_J(R: FiniteRing) -> bool:
    return R.scalar(2) in st.jacobson_radical(R)


def two_unit(R: FiniteRing) -> bool:
    return bool(st.unit_mask(R)[R.scalar(2)])


def six_nilpotent(R: FiniteRing) -> bool:
    return bool(st.nil_mask(R)[R.scalar(6)])


def zn_weakly_nil_clean_formula(n: int) -> bool:
    """Zn is weakly nil-clean iff n = 2^l 3^k (n = 1 is the zero ring)."""
    if n < 1:
        raise ValueError("n must be positive")
    for p in (2, 3):
        while n % p == 0:
            n //= p
    return n == 1


def is_z3(R: FiniteRing) -> bool:
    """Isomorphic to Z3: order 3 and k ↦ k·1 is a bijective homomorphism."""
    if R.order != 3:
        return False
    from .rings import ZnRing

    f = np.asarray([R.scalar(k) for k in range(3)])
    g = np.empty(3, dtype=np.int64)
    g[f] = np.arange(3)
    return st.verify_isomorphism(R, ZnRing(3), g)


def _boolean_or_z3_split(Q: FiniteRing, left_ok) -> bool:
    """Q ≅ A × B via a central idempotent e with left_ok(eQ) and (1-e)Q zero or ≅ Z3."""
    for e in st.central_idempotent_indices(Q):
        A = st.corner_ring(Q, int(e))
        B = st.corner_ring(Q, Q.sub(Q.one, int(e)))
        if left_ok(A) and (B.order == 1 or is_z3(B)):
            return True
    return False


def rj_is_boolean_z3(R: FiniteRing) -> bool:
    """R/J(R) is Boolean, Z3, or Boolean × Z3."""
    return _cached(R, "rj_bool_z3", lambda: _boolean_or_z3_split(radical_quotient(R), is_boolean))


def rj_is_semilocal_form(R: FiniteRing) -> bool:
    """R/J(R) is C, Z3 or C × Z3 with C a finite product of matrix rings over Z2.

    R/J is semisimple, so its characteristic-2 factor is a product of
    matrix rings over fields; all fields are Z2 exactly when its center is Boolean.
    """

    def c_form(A):
        return A.scalar(2) == A.zero and is_boolean(st.center(A).ring)

    return _cached(R, "rj_semilocal", lambda: _boolean_or_z3_split(radical_quotient(R), c_form))


def radical_quotient(R: FiniteRing):
    return _cached(R, "R/J", lambda: st.quotient(R, st.jacobson_radical(R), label=f"{R.label}/J"))


@dataclass
class ClassificationReport:
    ring: str
    order: int
    flags: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)

    def to_json(self, **kw) -> str:
        return json.dumps(asdict(self), **kw)

    @classmethod
    def from_json(cls, text: str) -> "ClassificationReport":
        d = json.loads(text)
        return cls(d["ring"], d["order"], d["flags"], d["counts"])

    def render(self) -> str:
        lines = [f"ring: {self.ring}", f"order: {self.order}"]
        lines += [f"{k}={str(v).lower()}" for k, v in self.flags.items()]
        lines += [f"|{k}|={v}" for k, v in self.counts.items()]
        return "\n".join(lines)


_FLAG_FUNCS = {
    "clean": is_clean_ring,
    "nil_clean": is_nil_clean_ring,
    "weakly_nil_clean": is_weakly_nil_clean_ring,
    "uniquely_nil_clean": is_uniquely_nil_clean,
    "uniquely_weakly_nil_clean": is_uniquely_weakly_nil_clean,
    "abelian": is_abelian,
    "boolean": is_boolean,
    "reduced": is_reduced,
    "commutative": is_commutative,
    "local": is_local,
    "nil_involution_property": has_nil_involution_property,
    "involution_property": has_involution_property,
    "strongly_pi_regular": is_strongly_pi_regular_ring,
    "strongly_regular": is_strongly_regular,
    "two_in_J": two_in_J,
    "two_unit": two_unit,
    "six_nilpotent": six_nilpotent,
}


def flag(R: FiniteRing, name: str) -> bool:
    """Cached flag lookup by name."""
    return _cached(R, ("flag", name), lambda: bool(_FLAG_FUNCS[name](R)))


def classify(R: FiniteRing) -> ClassificationReport:
    st.require_scannable(R)
    flags = {name: flag(R, name) for name in FLAG_NAMES}
    counts = {
        "idempotents": int(st.idempotent_mask(R).sum()),
        "units": int(st.unit_mask(R).sum()),
        "nilpotents": int(st.nil_mask(R).sum()),
        "J": len(st.jacobson_radical(R)),
        "center": len(st.center(R)),
    }
    return ClassificationReport(R.label, R.order, flags, counts)


def flag_implication_violations(flags: dict) -> list:
    """Names of the structural implications that fail for a flag set."""
    f = flags
    rules = {
        "nil_clean => weakly_nil_clean": (not f["nil_clean"]) or f["weakly_nil_clean"],
        "weakly_nil_clean => clean": (not f["weakly_nil_clean"]) or f["clean"],
        "boolean => nil_clean": (not f["boolean"]) or f["nil_clean"],
        "boolean => abelian": (not f["boolean"]) or f["abelian"],
        "reduced & weakly_nil_clean => commutative":
            not (f["reduced"] and f["weakly_nil_clean"]) or f["commutative"],
        "uniquely_weakly_nil_clean <=> abelian & weakly_nil_clean":
            f["uniquely_weakly_nil_clean"] == (f["abelian"] and f["weakly_nil_clean"]),
        "nil_clean <=> weakly_nil_clean & two_in_J":
            f["nil_clean"] == (f["weakly_nil_clean"] and f["two_in_J"]),
        "nil_involution_property <=> weakly_nil_clean & two_unit":
            f["nil_involution_property"] == (f["weakly_nil_clean"] and f["two_unit"]),
        "weakly_nil_clean => six_nilpotent": (not f["weakly_nil_clean"]) or f["six_nilpotent"],
        "abelian & weakly_nil_clean => strongly_pi_regular":
            not (f["abelian"] and f["weakly_nil_clean"]) or f["strongly_pi_regular"],
    }
    return [name for name, ok in rules.items() if not ok]
