"""Runnable consistency checks: every structural claim about weakly nil-clean
rings is confronted with exhaustive computation on concrete finite rings.

Each check returns a :class:`TheoremCheckResult`.  A ``violated`` verdict
always means an implementation bug, since every check encodes a proven
statement.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from . import matgf
from . import predicates as pr
from . import structure as st
from .errors import BudgetExceeded, WeakRingError
from .expr import Product, parse
from .rings import FiniteRing, build

CONFIRMED, VIOLATED, SKIPPED = "confirmed", "violated", "skipped"


@dataclass
class TheoremCheckResult:
    check: str
    ring: str
    verdict: str
    witness: Any = None
    reason: Optional[str] = None
    detail: dict = field(default_factory=dict)
    runtime: float = 0.0
    order: int = 0  # sort key only

    @property
    def ok(self) -> bool:
        return self.verdict != VIOLATED

    def to_dict(self, timings: bool = False) -> dict:
        d = {"check": self.check, "ring": self.ring, "verdict": self.verdict, "witness": self.witness}
        if self.reason is not None:
            d["reason"] = self.reason
        if self.detail:
            d["detail"] = self.detail
        if timings:
            d["runtime"] = round(self.runtime, 3)
        return d

    def sort_key(self):
        return (self.check, self.order, self.ring)


def results_to_json(results, timings: bool = False, **kw) -> str:
    return json.dumps([r.to_dict(timings) for r in results], **kw)


def _verdict(ok: bool) -> str:
    return CONFIRMED if ok else VIOLATED


def _flags(R: FiniteRing, *names) -> dict:
    return {n: pr.flag(R, n) for n in names}


def _wnc(R: FiniteRing) -> bool:
    return pr.flag(R, "weakly_nil_clean")


def _nc(R: FiniteRing) -> bool:
    return pr.flag(R, "nil_clean")


def _j_nil(R: FiniteRing) -> bool:
    return st.is_nil_ideal(st.jacobson_radical(R))


def _skip(check, R, reason) -> TheoremCheckResult:
    return TheoremCheckResult(check, R.label, SKIPPED, reason=reason, order=R.order)


def _equivalence(check: str, R: FiniteRing, values: dict, extra: dict | None = None) -> TheoremCheckResult:
    """Confirmed when every listed statement has the same truth value."""
    ok = len(set(values.values())) == 1
    detail = dict(values, **(extra or {}))
    return TheoremCheckResult(check, R.label, _verdict(ok), None if ok else values, detail=detail, order=R.order)


def _implication(check, R, hyp: bool, concl: bool, names) -> TheoremCheckResult:
    ok = (not hyp) or concl
    values = {names[0]: hyp, names[1]: concl}
    return TheoremCheckResult(check, R.label, _verdict(ok), None if ok else values, detail=values, order=R.order)


def _first_violation(mask: np.ndarray):
    bad = np.flatnonzero(~mask)
    return int(bad[0]) if bad.size else None


# -- per-ring checks -------------------------------------------------------

def _epi_ideals(R: FiniteRing) -> list:
    named = [("J", st.jacobson_radical(R)), ("0", st.ideal_generated(R, [R.zero]))]
    for k in (2, 3, 6):
        named.append((f"{k}R", st.ideal_generated(R, [R.scalar(k)])))
    if R.order <= 64:
        named += [(f"<{x}>", st.ideal_generated(R, [x])) for x in range(R.order)]
    seen, out = set(), []
    for name, I in named:
        key = I.members.tobytes()
        if key not in seen:
            seen.add(key)
            out.append((name, I))
    return out


def check_epi(R: FiniteRing, I: st.Ideal | None = None) -> TheoremCheckResult:
    """Quotients of weakly nil-clean rings stay so; nil ideals reflect it back."""
    ideals = [("I", I)] if I is not None else _epi_ideals(R)
    wnc = _wnc(R)
    converse_used = 0
    for name, K in ideals:
        Q = st.quotient(R, K)
        q_wnc = _wnc(Q)
        if wnc and not q_wnc:
            return TheoremCheckResult("epi", R.label, VIOLATED, {"ideal": name, "direction": "forward"}, order=R.order)
        if st.is_nil_ideal(K):
            converse_used += 1
            if q_wnc and not wnc:
                return TheoremCheckResult("epi", R.label, VIOLATED, {"ideal": name, "direction": "converse"},
                                          order=R.order)
            for q in st.idempotent_indices(Q):
                f = st.lift_idempotent(R, K, int(Q.reps[q])).index
                if R.mul(f, f) != f or Q.projection[f] != q:
                    return TheoremCheckResult("epi", R.label, VIOLATED,
                                              {"ideal": name, "lift_of": int(q)}, order=R.order)
    detail = {"ideals": len(ideals), "nil_ideals": converse_used, "weakly_nil_clean": wnc}
    return TheoremCheckResult("epi", R.label, CONFIRMED, detail=detail, order=R.order)


def check_one(R: FiniteRing) -> TheoremCheckResult:
    """wnc  <=>  6 nilpotent and R/6R wnc  <=>  J nil and R/J wnc."""
    six_nil = pr.flag(R, "six_nilpotent")
    R6 = st.quotient(R, st.ideal_generated(R, [R.scalar(6)]))
    values = {
        "weakly_nil_clean": _wnc(R),
        "six_nilpotent_and_R/6R": bool(six_nil and _wnc(R6)),
        "J_nil_and_R/J": bool(_j_nil(R) and _wnc(pr.radical_quotient(R))),
    }
    return _equivalence("one", R, values)


def check_prod(factors) -> TheoremCheckResult:
    """A finite product is wnc iff one factor is wnc and all others are nil-clean."""
    if isinstance(factors, FiniteRing):
        if not isinstance(factors.source, Product):
            return _skip("prod", factors, "not a product expression")
        P, factors = factors, list(factors.factors)
    else:
        from .rings import ProductRing

        factors = list(factors)
        P = ProductRing(factors)
    wnc = [_wnc(F) for F in factors]
    nc = [_nc(F) for F in factors]
    crit = any(wnc[k] and all(nc[j] for j in range(len(factors)) if j != k) for k in range(len(factors)))
    return _equivalence("prod", P, {"weakly_nil_clean": _wnc(P), "factor_criterion": crit},
                        {"factor_wnc": wnc, "factor_nil_clean": nc})


def check_char2(R: FiniteRing) -> TheoremCheckResult:
    f = _flags(R, "weakly_nil_clean", "two_in_J")
    return _equivalence("char2", R, {"nil_clean": _nc(R), "wnc_and_two_in_J": f["weakly_nil_clean"] and f["two_in_J"]})


def _corner_pairs(R: FiniteRing):
    for e in st.central_idempotent_indices(R):
        yield int(e), st.corner_ring(R, int(e)), st.corner_ring(R, R.sub(R.one, int(e)))


def check_description(R: FiniteRing) -> TheoremCheckResult:
    """wnc <=> nil-clean × (0 or indecomposable wnc with 3 ∈ J) <=> nil-clean × nil-involution."""

    def part2(B):
        if B.order == 1:
            return True
        return st.is_indecomposable(B) and _wnc(B) and B.scalar(3) in st.jacobson_radical(B)

    s2 = any(_nc(A) and part2(B) for _, A, B in _corner_pairs(R))
    s3 = any(_nc(A) and pr.flag(B, "nil_involution_property") for _, A, B in _corner_pairs(R))
    values = {"weakly_nil_clean": _wnc(R), "nil_clean_x_local_part": s2, "nil_clean_x_nil_involution": s3}
    extra = {}
    if _wnc(R):
        # the split comes from the Chinese remainder theorem on 2^n R and 3^n R
        split = st.crt_split_2_3(R)
        r1_ok = _nc(split.r1)
        r2_ok = split.r2.order == 1 or pr.flag(split.r2, "nil_involution_property")
        extra = {"crt_orders": [split.r1.order, split.r2.order], "crt_verified": split.verified}
        if not (split.verified and r1_ok and r2_ok):
            return TheoremCheckResult("description", R.label, VIOLATED,
                                      {"crt_verified": split.verified, "r1_nil_clean": r1_ok, "r2_ok": r2_ok},
                                      detail=extra, order=R.order)
    return _equivalence("description", R, values, extra)


def check_invol(R: FiniteRing) -> TheoremCheckResult:
    f = _flags(R, "nil_involution_property", "weakly_nil_clean", "two_unit")
    return _equivalence("invol", R, {"nil_involution_property": f["nil_involution_property"],
                                     "wnc_and_two_unit": f["weakly_nil_clean"] and f["two_unit"]})


def check_clean(R: FiniteRing) -> TheoremCheckResult:
    return _implication("clean", R, _wnc(R), pr.flag(R, "clean"), ("weakly_nil_clean", "clean"))


def check_center(R: FiniteRing) -> TheoremCheckResult:
    """The center inherits weak nil-cleanness and nil-cleanness."""
    Z = st.center(R).ring
    values = {"weakly_nil_clean": _wnc(R), "center_wnc": _wnc(Z), "nil_clean": _nc(R), "center_nil_clean": _nc(Z)}
    ok = (not values["weakly_nil_clean"] or values["center_wnc"]) and (not values["nil_clean"] or values["center_nil_clean"])
    return TheoremCheckResult("center", R.label, _verdict(ok), None if ok else values,
                              detail=dict(values, center_order=Z.order), order=R.order)


def _rj_z3(B: FiniteRing) -> bool:
    return _j_nil(B) and pr.is_z3(pr.radical_quotient(B))


def check_fine(R: FiniteRing) -> TheoremCheckResult:
    """Abelian wnc <=> Boolean/Z3 splitting <=> R/J Boolean, Z3 or both <=> uniquely wnc."""
    abelian = pr.flag(R, "abelian")

    def left(A):
        return pr.flag(A, "abelian") and _j_nil(A) and pr.is_boolean(pr.radical_quotient(A))

    s2 = any(left(A) and (B.order == 1 or _rj_z3(B)) for _, A, B in _corner_pairs(R))
    values = {
        "abelian_wnc": abelian and _wnc(R),
        "split_form": s2,
        "rj_boolean_z3": abelian and _j_nil(R) and pr.rj_is_boolean_z3(R),
        "uniquely_wnc": pr.flag(R, "uniquely_weakly_nil_clean"),
    }
    return _equivalence("fine", R, values, {"commutative": pr.flag(R, "commutative")})


def check_rj_abelian(R: FiniteRing) -> TheoremCheckResult:
    Q = pr.radical_quotient(R)
    if not pr.flag(Q, "abelian"):
        return _skip("rj_abelian", R, "R/J is not abelian")
    return _equivalence("rj_abelian", R, {"weakly_nil_clean": _wnc(R),
                                          "J_nil_and_rj_boolean_z3": _j_nil(R) and pr.rj_is_boolean_z3(R)})


def check_commut(R: FiniteRing) -> TheoremCheckResult:
    if not pr.flag(R, "reduced"):
        return _skip("commut", R, "ring is not reduced")
    if not _wnc(R):
        return _skip("commut", R, "ring is not weakly nil-clean")
    comm = pr.flag(R, "commutative")
    return TheoremCheckResult("commut", R.label, _verdict(comm), None if comm else {"commutative": False},
                              order=R.order)


def check_unc(R: FiniteRing) -> TheoremCheckResult:
    f = _flags(R, "uniquely_nil_clean", "uniquely_weakly_nil_clean", "two_in_J")
    return _equivalence("unc", R, {"uniquely_nil_clean": f["uniquely_nil_clean"],
                                   "uniquely_wnc_and_two_in_J": f["uniquely_weakly_nil_clean"] and f["two_in_J"]})


def check_pireg(R: FiniteRing) -> TheoremCheckResult:
    """In an abelian ring every weakly nil-clean element is strongly pi-regular."""
    if not pr.flag(R, "abelian"):
        return _skip("pireg", R, "ring is not abelian")
    wnc = pr.weakly_nil_clean_mask(R)
    spr = pr.strongly_pi_regular_mask(R)
    bad = _first_violation(spr | ~wnc)
    return TheoremCheckResult("pireg", R.label, _verdict(bad is None),
                              None if bad is None else {"element": bad},
                              detail={"wnc_elements": int(wnc.sum())}, order=R.order)


def check_pireg_cor(R: FiniteRing) -> TheoremCheckResult:
    f = _flags(R, "uniquely_weakly_nil_clean", "abelian", "strongly_pi_regular")
    rhs = f["abelian"] and f["strongly_pi_regular"] and pr.rj_is_boolean_z3(R)
    return _equivalence("pireg_cor", R, {"uniquely_wnc": f["uniquely_weakly_nil_clean"],
                                         "abelian_spr_rj_boolean_z3": rhs})


def check_semilocal(R: FiniteRing) -> TheoremCheckResult:
    """wnc <=> J nil and R/J is C, Z3 or C × Z3 with C a product of matrix rings over Z2."""
    return _equivalence("semilocal", R, {"weakly_nil_clean": _wnc(R),
                                         "J_nil_and_rj_form": _j_nil(R) and pr.rj_is_semilocal_form(R)})


RING_CHECKS: dict[str, Callable] = {
    "epi": check_epi,
    "one": check_one,
    "prod": check_prod,
    "char2": check_char2,
    "description": check_description,
    "invol": check_invol,
    "clean": check_clean,
    "center": check_center,
    "fine": check_fine,
    "rj_abelian": check_rj_abelian,
    "commut": check_commut,
    "unc": check_unc,
    "pireg": check_pireg,
    "pireg_cor": check_pireg_cor,
    "semilocal": check_semilocal,
}


# -- global checks ---------------------------------------------------------

def _global(check, ring, ok, witness=None, detail=None) -> TheoremCheckResult:
    return TheoremCheckResult(check, ring, _verdict(ok), None if ok else witness, detail=detail or {})


def _rad(n: int) -> int:
    r, p = 1, 2
    while n > 1:
        if n % p == 0:
            r *= p
            while n % p == 0:
                n //= p
        p += 1
    return r


def check_examples() -> list:
    """Zn sweep, the skew example, trivial extensions and triangular rings."""
    out = []
    bad = [n for n in range(1, 201) if _wnc(build(f"Zn({n})")) != pr.zn_weakly_nil_clean_formula(n)]
    out.append(_global("examples", "Zn(n), n<=200", not bad, {"n": bad[:1]}, {"mismatches": len(bad)}))

    info, bad = {}, []
    for n in (2, 3, 6):
        S = build(f"Skew({n})")
        f = _flags(S, "weakly_nil_clean", "abelian", "commutative", "local")
        Q = pr.radical_quotient(S)
        J = st.jacobson_radical(S)
        # S/J is Z_rad(n); it is a field (S local) only for prime powers
        qz = build(f"Zn({_rad(n)})")
        iso = Q.order == qz.order and _wnc(Q) and pr.flag(Q, "commutative") and Q.scalar(_rad(n)) == Q.zero
        info[str(n)] = dict(f, rj_order=Q.order, J3_zero=len(st.ideal_power(J, 3)) == 1)
        if not (f["weakly_nil_clean"] and f["abelian"] and not f["commutative"] and iso):
            bad.append(n)
    out.append(_global("examples", "Skew(n), n in {2,3,6}", not bad, {"n": bad[:1]}, info))

    bad = []
    for base in ("Zn(2)", "Zn(3)", "Zn(4)", "Zn(5)", "Zn(6)", "Zn(9)", "Zn(10)", "Zn(12)",
                 "M(2,Zn(2))", "T(2,Zn(3))"):
        R, T = build(base), build(f"TrivExt({base})")
        if _wnc(R) != _wnc(T):
            bad.append(base)
    out.append(_global("examples", "TrivExt(R)", not bad, {"base": bad[:1]}))

    bad = []
    for base, k in (("Zn(2)", 2), ("Zn(2)", 3), ("Zn(3)", 2), ("Zn(3)", 3), ("Zn(4)", 2),
                    ("Zn(5)", 2), ("Zn(6)", 2), ("Zn(9)", 2), ("Prod(Zn(2),Zn(2))", 2)):
        R, T = build(base), build(f"T({k},{base})")
        if _wnc(T) != _nc(R):
            bad.append(f"T({k},{base})")
    out.append(_global("examples", "T(k,R)", not bad, {"ring": bad[:1]}))
    return out


TRACE_RANK_CASES = ((2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (3, 4))


def check_trace_rank() -> list:
    out = []
    for p, n in TRACE_RANK_CASES:
        v = matgf.trace_rank_violations(p, n)
        count = len(matgf.idempotent_indices(p, n))
        witness = {"matrix": [matgf.format_matrix(m) for m in v[:1]]}
        out.append(_global("trace_rank", f"M({n},Zn({p}))", not v, witness, {"idempotents": count}))
    return out


def check_matrix_main() -> list:
    """Matrix-ring classification over Z2, Z3, Z5 and the corollaries on instances."""
    out = []
    for n in (2, 3, 4):
        A = matgf.witness_matrix(3, n)
        Q = matgf.swap_conjugator(3, n)
        swap = matgf.check_similar_to_neg(A, Q)
        nc = matgf.nil_clean_check(A)
        detail = {"similar_to_neg": swap, "idempotents": len(matgf.idempotent_indices(3, n))}
        ok = swap and nc is None
        if n <= 3:
            wnc_A = matgf.weakly_nil_clean_check(A)
            ring_wnc = matgf.matrix_ring_weakly_nil_clean(3, n)
            detail.update(witness_wnc=wnc_A is not None, ring_wnc=ring_wnc)
            ok = ok and wnc_A is None and not ring_wnc
        else:
            pattern = matgf.lemma_nonil_pattern_check()
            detail["nonil_pattern"] = pattern
            ok = ok and pattern
        out.append(_global("matrix_main", f"M({n},Zn(3))", ok, {"matrix": matgf.format_matrix(A)}, detail))

    for n in (1, 2, 3):
        R = build(f"M({n},Zn(2))")
        nc = pr.is_nil_clean_ring(R)
        out.append(_global("matrix_main", f"M({n},Zn(2))", nc, {"nil_clean": nc}, {"order": R.order}))

    small = {p: _wnc(build(f"Zn({p})")) for p in (2, 3, 5)}
    A = matgf.MatrixGF.diag(5, [2, 0])
    m5 = matgf.weakly_nil_clean_check(A)
    ok = small == {2: True, 3: True, 5: False} and m5 is None
    out.append(_global("matrix_main", "Zn(5), M(2,Zn(5))", ok, {"fields": small},
                       {"fields_wnc": {str(k): v for k, v in small.items()}, "diag(2,0)_wnc": m5 is not None}))

    info, bad = {}, []
    for base in ("Zn(2)", "Prod(Zn(2),Zn(2))", "Zn(3)", "Zn(6)"):
        R = build(base)
        if not pr.is_strongly_regular(R):
            bad.append(base)
            continue
        m_wnc = _wnc(build(f"M(2,{base})"))
        info[base] = {"boolean": pr.flag(R, "boolean"), "matrix_wnc": m_wnc}
        if m_wnc != pr.flag(R, "boolean"):
            bad.append(base)
    out.append(_global("matrix_main", "M(2,R), R strongly regular", not bad, {"base": bad[:1]}, info))
    return out


GLOBAL_CHECKS: dict[str, Callable] = {
    "examples": check_examples,
    "trace_rank": check_trace_rank,
    "matrix_main": check_matrix_main,
}
CHECK_IDS = tuple(sorted(set(RING_CHECKS) | set(GLOBAL_CHECKS)))


# -- catalog and driver ----------------------------------------------------

def _default_catalog() -> list:
    exprs = [f"Zn({n})" for n in list(range(1, 37)) + [48, 54, 72, 81, 96, 108]]
    bases = (2, 3, 4, 9, 8)
    exprs += [f"Prod(Zn({a}),Zn({b}))" for i, a in enumerate(bases) for b in bases[i:]]
    exprs += ["Quot(Zn(12),[4])", "Quot(Zn(12),[9])"]
    exprs += [f"TrivExt(Zn({n}))" for n in (2, 3, 4, 6, 9, 12)]
    exprs += ["T(2,Zn(2))", "T(2,Zn(3))", "T(3,Zn(2))"]
    exprs += [f"Skew({n})" for n in (2, 3, 6, 12)]
    exprs += ["M(2,Zn(2))", "M(2,Zn(3))", "M(3,Zn(2))"]
    return [(str(parse(e)), str(parse(e))) for e in exprs]


DEFAULT_CATALOG = _default_catalog()


def _timed(fn, *args):
    t = time.perf_counter()
    try:
        res = fn(*args)
    except BudgetExceeded as exc:
        return exc
    except WeakRingError as exc:  # an implementation fault; reported, never swallowed
        return exc
    dt = time.perf_counter() - t
    for r in (res if isinstance(res, list) else [res]):
        r.runtime = dt
    return res


def _run_ring(label: str, expr: str, checks: tuple) -> list:
    out = []
    try:
        R = build(expr)
    except WeakRingError as exc:
        return [TheoremCheckResult(c, label, SKIPPED, reason=f"build failed: {exc}") for c in checks]
    for c in checks:
        res = _timed(RING_CHECKS[c], R)
        if isinstance(res, BudgetExceeded):
            res = TheoremCheckResult(c, R.label, SKIPPED, reason=f"budget: {res}", order=R.order)
        elif isinstance(res, Exception):
            res = TheoremCheckResult(c, R.label, VIOLATED, {"error": f"{type(res).__name__}: {res}"}, order=R.order)
        if label != res.ring:
            res.detail["label"] = label
        out.append(res)
    return out


def _run_global(check: str) -> list:
    res = _timed(GLOBAL_CHECKS[check])
    if isinstance(res, BudgetExceeded):
        return [TheoremCheckResult(check, "-", SKIPPED, reason=f"budget: {res}")]
    if isinstance(res, Exception):
        return [TheoremCheckResult(check, "-", VIOLATED, {"error": f"{type(res).__name__}: {res}"})]
    return res


def _normalize_catalog(catalog) -> list:
    out = []
    for entry in catalog:
        if isinstance(entry, str):
            entry = (entry, entry)
        elif isinstance(entry, dict):
            entry = (entry["label"], entry["expr"])
        out.append((str(entry[0]), str(entry[1])))
    return out


def run_all(catalog=None, checks=None, workers: int = 1, include_global: bool | None = None) -> list:
    """Run every selected check on every catalog ring, in canonical order.

    ``catalog=None`` means the default catalog, which also turns on the
    ring-independent checks unless ``include_global`` says otherwise.
    Explicitly requested global checks always run.
    """
    if include_global is None:
        include_global = catalog is None
    catalog = _normalize_catalog(DEFAULT_CATALOG if catalog is None else catalog)
    wanted = CHECK_IDS if not checks else tuple(checks)
    unknown = [c for c in wanted if c not in CHECK_IDS]
    if unknown:
        raise ValueError(f"unknown check id(s): {', '.join(unknown)}")
    ring_checks = tuple(c for c in wanted if c in RING_CHECKS)
    global_checks = [c for c in wanted if c in GLOBAL_CHECKS and (include_global or checks)]

    jobs = [(_run_ring, (label, expr, ring_checks)) for label, expr in catalog if ring_checks]
    jobs += [(_run_global, (c,)) for c in global_checks]
    results = []
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(fn, *args) for fn, args in jobs]
            for f in futures:
                results.extend(f.result())
    else:
        for fn, args in jobs:
            results.extend(fn(*args))
    results.sort(key=TheoremCheckResult.sort_key)
    return results


def summarize(results) -> dict:
    counts = {CONFIRMED: 0, VIOLATED: 0, SKIPPED: 0}
    for r in results:
        counts[r.verdict] += 1
    return counts
