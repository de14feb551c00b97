"""Ideals, quotients, radical, center, element sets, lifting and splittings.

Additive closures exploit bilinearity: a set is closed under left and right
multiplication by R as soon as it is closed under multiplication by an
additive generating set of R, so ideal generation and centrality tests only
touch a handful of ring elements per step.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    BudgetExceeded,
    NotCentralIdempotent,
    PreconditionViolated,
    SixNotNilpotent,
    StructuredUnsupported,
    WeakRingError,
)
from .rings import I64, MATERIALIZE_LIMIT, Element, FiniteRing, ProductRing, QuotientRing, SubsetRing

DEFAULT_BUDGET = 10**7
HOM_EXHAUSTIVE_LIMIT = 2048


def scan_budget() -> int:
    """Element-scan budget; the WEAKRING_BUDGET environment variable overrides the default."""
    raw = os.environ.get("WEAKRING_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def require_scannable(R: FiniteRing) -> None:
    if R.structured or R.order > scan_budget():
        raise BudgetExceeded(f"{R.label} (order {R.order}) exceeds the scan budget {scan_budget()}")


def _idx(x) -> int:
    return x.index if isinstance(x, Element) else int(x)


def _cached(R: FiniteRing, key, fn):
    if key not in R.cache:
        R.cache[key] = fn()
    return R.cache[key]


# -- element sets ----------------------------------------------------------

def nilpotency_bound(order: int) -> int:
    """Upper bound on nilpotency indices in a ring of this order.

    For nilpotent x of index k the left ideals R ⊋ Rx ⊋ ... ⊋ Rx^k = 0
    strictly decrease, so 2^k <= |R|.
    """
    return max(1, order.bit_length())


def nil_mask(R: FiniteRing) -> np.ndarray:
    def compute():
        require_scannable(R)
        x = R.indices()
        steps = 1
        while steps < nilpotency_bound(R.order):
            x = R.mul(x, x)
            steps *= 2
        return np.asarray(x) == R.zero

    return _cached(R, "nil_mask", compute)


def idempotent_mask(R: FiniteRing) -> np.ndarray:
    def compute():
        require_scannable(R)
        x = R.indices()
        return R.mul(x, x) == x

    return _cached(R, "idem_mask", compute)


def involution_mask(R: FiniteRing) -> np.ndarray:
    def compute():
        require_scannable(R)
        x = R.indices()
        return R.mul(x, x) == R.one

    return _cached(R, "invol_mask", compute)


def unit_mask(R: FiniteRing) -> np.ndarray:
    """Two-sided invertibility (one-sided inverses are two-sided in a finite ring)."""

    def compute():
        require_scannable(R)
        if R.materialized:
            return (R.mul_table == R.one).any(axis=1)
        # Units lift modulo the radical: x is a unit iff x + J is a unit in R/J.
        J = _nil_ideal_radical(R)
        Q = QuotientRing(R, J, label=f"{R.label}/J")
        if Q.order <= MATERIALIZE_LIMIT:
            return unit_mask(Q)[Q.projection]
        hits = np.zeros(R.order, dtype=bool)
        xs = R.indices()
        for y in range(R.order):
            hits |= R.mul(xs, y) == R.one
        return hits

    return _cached(R, "unit_mask", compute)


def nilpotent_indices(R: FiniteRing) -> np.ndarray:
    return np.flatnonzero(nil_mask(R)).astype(I64)


def idempotent_indices(R: FiniteRing) -> np.ndarray:
    return np.flatnonzero(idempotent_mask(R)).astype(I64)


def unit_indices(R: FiniteRing) -> np.ndarray:
    return np.flatnonzero(unit_mask(R)).astype(I64)


def involution_indices(R: FiniteRing) -> np.ndarray:
    return np.flatnonzero(involution_mask(R)).astype(I64)


def central_mask(R: FiniteRing) -> np.ndarray:
    def compute():
        require_scannable(R)
        x = R.indices()
        mask = np.ones(R.order, dtype=bool)
        for g in additive_generators(R):
            mask &= R.mul(x, g) == R.mul(g, x)
        return mask

    return _cached(R, "central_mask", compute)


def central_idempotent_indices(R: FiniteRing) -> np.ndarray:
    return np.flatnonzero(idempotent_mask(R) & central_mask(R)).astype(I64)


def idempotents(R: FiniteRing) -> list:
    if R.structured:
        from . import matgf

        return [Element(R, matgf.to_index(E)) for E in matgf.enumerate_idempotents(R.base.order, R.k)]
    return [Element(R, i) for i in idempotent_indices(R)]


def central_idempotents(R: FiniteRing) -> list:
    return [Element(R, i) for i in central_idempotent_indices(R)]


def units(R: FiniteRing) -> list:
    return [Element(R, i) for i in unit_indices(R)]


def nilpotents(R: FiniteRing) -> list:
    return [Element(R, i) for i in nilpotent_indices(R)]


# -- additive spans and ideals -------------------------------------------

def _cyclic(R: FiniteRing, z: int) -> np.ndarray:
    out = [R.zero]
    m = z
    while m != R.zero:
        out.append(m)
        m = R.add(m, z)
    return np.asarray(out, dtype=I64)


def _extend_span(R: FiniteRing, members: np.ndarray, z: int) -> np.ndarray:
    return np.unique(np.asarray(R.add(members[:, None], _cyclic(R, z)[None, :])).ravel())


def additive_span(R: FiniteRing, gens) -> np.ndarray:
    """Sorted members of the additive subgroup generated by ``gens``."""
    members = np.asarray([R.zero], dtype=I64)
    for z in gens:
        z = _idx(z)
        if not np.isin(z, members):
            members = _extend_span(R, members, z)
    return members


def additive_generators(R: FiniteRing) -> list:
    """Greedy generating set of (R, +): repeatedly take the least element outside the span."""

    def compute():
        require_scannable(R)
        mask = np.zeros(R.order, dtype=bool)
        mask[R.zero] = True
        members = np.asarray([R.zero], dtype=I64)
        gens = []
        while not mask.all():
            z = int(np.argmin(mask))
            gens.append(z)
            members = _extend_span(R, members, z)
            mask[members] = True
        return gens

    return _cached(R, "add_gens", compute)


@dataclass(frozen=True, eq=False)
class Ideal:
    """Two-sided ideal stored as its sorted member indices."""

    ring: FiniteRing
    members: np.ndarray
    basis: tuple = ()

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        i = _idx(x)
        pos = np.searchsorted(self.members, i)
        return bool(pos < len(self.members) and self.members[pos] == i)

    def __iter__(self):
        return (Element(self.ring, i) for i in self.members)

    def __eq__(self, other):
        return isinstance(other, Ideal) and np.array_equal(self.members, other.members)

    def __hash__(self):
        return hash(self.members.tobytes())

    @property
    def indices(self) -> tuple:
        return tuple(int(i) for i in self.members)

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.ring.order, dtype=bool)
        m[self.members] = True
        return m

    def __repr__(self):
        body = ",".join(str(i) for i in self.members[:16])
        more = ",..." if len(self.members) > 16 else ""
        return f"Ideal({self.ring.label}, {{{body}{more}}})"


def _ideal_closure(R: FiniteRing, gens, allowed: np.ndarray | None = None):
    """Least two-sided ideal containing ``gens``; None if it leaves ``allowed``."""
    G = additive_generators(R)
    members = np.asarray([R.zero], dtype=I64)
    mask = np.zeros(R.order, dtype=bool)
    mask[R.zero] = True
    basis = []
    queue = [_idx(g) for g in gens]
    while queue:
        y = queue.pop()
        if mask[y]:
            continue
        basis.append(y)
        members = _extend_span(R, members, y)
        if allowed is not None and not allowed[members].all():
            return None
        mask[members] = True
        for g in G:
            queue.append(R.mul(g, y))
            queue.append(R.mul(y, g))
    return Ideal(R, members, tuple(basis))


def ideal_generated(R: FiniteRing, gens) -> Ideal:
    """Least two-sided ideal of R containing ``gens``."""
    require_scannable(R)
    return _ideal_closure(R, gens)


def is_ideal(R: FiniteRing, members) -> bool:
    members = np.unique(np.asarray([_idx(m) for m in members], dtype=I64))
    if members.size == 0 or R.zero not in members:
        return False
    mask = np.zeros(R.order, dtype=bool)
    mask[members] = True
    if not mask[R.neg(members)].all():
        return False
    if not np.array_equal(additive_span(R, members), members):
        return False
    for g in additive_generators(R):
        if not (mask[R.mul(g, members)].all() and mask[R.mul(members, g)].all()):
            return False
    return True


def ideal_sum(I: Ideal, K: Ideal) -> Ideal:
    return _ideal_closure(I.ring, list(I.members) + list(K.members))


def ideal_intersection(I: Ideal, K: Ideal) -> Ideal:
    return Ideal(I.ring, np.intersect1d(I.members, K.members))


def ideal_product(I: Ideal, K: Ideal) -> Ideal:
    """IK = additive span of products; bilinearity lets additive generators stand in for members."""
    R = I.ring
    gi = additive_generators_of(R, I.members)
    gk = additive_generators_of(R, K.members)
    prods = [R.mul(a, b) for a in gi for b in gk]
    return Ideal(R, additive_span(R, prods))


def ideal_power(I: Ideal, k: int) -> Ideal:
    out = I
    for _ in range(k - 1):
        out = ideal_product(out, I)
    return out


def additive_generators_of(R: FiniteRing, members) -> list:
    members = np.asarray(members, dtype=I64)
    gens = []
    span = np.asarray([R.zero], dtype=I64)
    for z in members:
        if not np.isin(z, span):
            gens.append(int(z))
            span = _extend_span(R, span, int(z))
            if len(span) == len(members):
                break
    return gens


def is_nil_ideal(I: Ideal) -> bool:
    return bool(nil_mask(I.ring)[I.members].all())


# -- quotient, radical, center --------------------------------------------

def quotient(R: FiniteRing, I: Ideal, label: str | None = None) -> QuotientRing:
    """Coset ring R/I; ``.projection`` maps R-indices to coset indices."""
    require_scannable(R)
    if label is None:
        nz = I.members[I.members != R.zero]
        tag = f"{int(nz[0])}" if nz.size else "0"
        label = f"{R.label}/<{tag}|{len(I)}>"
    return QuotientRing(R, I.members, label=label)


def _quasi_regular_radical(R: FiniteRing) -> np.ndarray:
    M = R.mul_table.astype(np.intp)
    A = R.add_table.astype(np.intp)
    N = R._neg_t.astype(np.intp)
    one_minus = A[R.one][N[M]]  # entry (r, x) = 1 - r x
    return np.flatnonzero(unit_mask(R)[one_minus].all(axis=0)).astype(I64)


def _nil_ideal_radical(R: FiniteRing) -> np.ndarray:
    # In a finite ring J is the largest nil ideal: grow it one nilpotent at a time.
    def compute():
        nil = nil_mask(R)
        current = Ideal(R, np.asarray([R.zero], dtype=I64))
        inside = np.zeros(R.order, dtype=bool)
        inside[R.zero] = True
        for x in np.flatnonzero(nil):
            if inside[x]:
                continue
            cand = _ideal_closure(R, list(current.basis) + [int(x)], allowed=nil)
            if cand is not None:
                current = cand
                inside[cand.members] = True
        return current.members

    return _cached(R, "nil_radical", compute)


def jacobson_radical(R: FiniteRing, method: str = "auto") -> Ideal:
    """J(R).

    ``quasi_regular`` scans {x : 1 - r x is a unit for all r} over the Cayley
    table; ``nil_ideal`` grows the largest nil ideal.  ``auto`` uses the
    scan whenever the ring is materialized.
    """
    require_scannable(R)
    if method == "auto":
        method = "quasi_regular" if R.materialized else "nil_ideal"
    key = ("J", method)
    if key not in R.cache:
        if method == "quasi_regular":
            members = _quasi_regular_radical(R)
        elif method == "nil_ideal":
            members = _nil_ideal_radical(R)
        else:
            raise ValueError(f"unknown method {method!r}")
        if not is_ideal(R, members):
            raise WeakRingError(f"radical of {R.label} failed the ideal check")
        R.cache[key] = Ideal(R, members, tuple(additive_generators_of(R, members)))
    return R.cache[key]


@dataclass(frozen=True, eq=False)
class SubringView:
    parent: FiniteRing
    members: np.ndarray
    ring: FiniteRing

    @property
    def embedding(self) -> np.ndarray:
        return self.members

    def __len__(self):
        return len(self.members)


def center(R: FiniteRing) -> SubringView:
    """Z(R) realized as a ring in its own right (indices follow the parent order)."""
    def compute():
        members = np.flatnonzero(central_mask(R)).astype(I64)
        ring = SubsetRing(R, members, R.one, label=f"Z({R.label})")
        return SubringView(R, members, ring)

    return _cached(R, "center", compute)


# -- idempotent lifting ----------------------------------------------------

def lift_idempotent(R: FiniteRing, I: Ideal, e) -> Element:
    """Idempotent f with f - e in I, for a nil ideal I and e^2 - e in I."""
    e = _idx(e)
    if not is_nil_ideal(I):
        raise PreconditionViolated("ideal is not nil")
    if R.sub(R.mul(e, e), e) not in I:
        raise PreconditionViolated("e^2 - e is not in the ideal")
    f = e
    for _ in range(R.order):
        f2 = R.mul(f, f)
        if f2 == f:
            return Element(R, f)
        f3 = R.mul(f2, f)
        f = R.sub(R.add(R.add(f2, f2), f2), R.add(f3, f3))  # 3f^2 - 2f^3
    coset = np.asarray(R.add(e, I.members))
    hits = np.sort(coset[idempotent_mask(R)[coset]])
    if hits.size == 0:
        raise WeakRingError("no idempotent in e + I")
    return Element(R, int(hits[0]))


# -- isomorphism witnesses -------------------------------------------------

def verify_isomorphism(R: FiniteRing, S: FiniteRing, f, samples: int = 100_000, seed: int = 0) -> bool:
    """Check that the index map ``f`` (array over R) is a bijective unital ring homomorphism.

    Exhaustive over all pairs for small R; otherwise on random pairs plus all
    pairs of additive generators.
    """
    f = np.asarray(f, dtype=I64)
    if R.order != S.order or len(f) != R.order or np.unique(f).size != S.order:
        return False
    if f[R.one] != S.one or f[R.zero] != S.zero:
        return False
    if R.order <= HOM_EXHAUSTIVE_LIMIT:
        x = R.indices()
        a, b = x[:, None], x[None, :]
    else:
        rng = np.random.default_rng(seed)
        g = np.asarray(additive_generators(R), dtype=I64)
        a = np.concatenate([rng.integers(0, R.order, samples), np.repeat(g, len(g))])
        b = np.concatenate([rng.integers(0, R.order, samples), np.tile(g, len(g))])
    ok_add = np.array_equal(f[R.add(a, b)], S.add(f[a], f[b]))
    ok_mul = np.array_equal(f[R.mul(a, b)], S.mul(f[a], f[b]))
    return bool(ok_add and ok_mul)


@dataclass
class CrtSplit:
    """R ≅ R/2^nR × R/3^nR; ``iso`` maps R-indices to indices of ``product``."""

    exponent: int
    ideal2: Ideal
    ideal3: Ideal
    r1: QuotientRing
    r2: QuotientRing
    product: ProductRing
    iso: np.ndarray
    verified: bool


def crt_split_2_3(R: FiniteRing) -> CrtSplit:
    require_scannable(R)
    six = R.scalar(6)
    n, p = 1, six
    while p != R.zero:
        if n > nilpotency_bound(R.order):
            raise SixNotNilpotent(f"6 is not nilpotent in {R.label}")
        p = R.mul(p, six)
        n += 1
    I2 = ideal_generated(R, [R.scalar(2**n)])
    I3 = ideal_generated(R, [R.scalar(3**n)])
    if len(ideal_sum(I2, I3)) != R.order or len(ideal_intersection(I2, I3)) != 1:
        raise WeakRingError(f"2^{n}R and 3^{n}R are not complementary in {R.label}")
    r1 = quotient(R, I2, label=f"{R.label}/{2**n}R")
    r2 = quotient(R, I3, label=f"{R.label}/{3**n}R")
    prod = ProductRing([r1, r2])
    iso = r1.projection * r2.order + r2.projection
    return CrtSplit(n, I2, I3, r1, r2, prod, iso, verify_isomorphism(R, prod, iso))


@dataclass
class PeirceSplit:
    """R ≅ eR × (1-e)R for a central idempotent e."""

    e: int
    corner: SubsetRing
    complement: SubsetRing
    product: ProductRing
    iso: np.ndarray
    verified: bool


def corner_ring(R: FiniteRing, e: int) -> SubsetRing:
    """eR for a central idempotent e, with identity e (unchecked)."""
    key = ("corner", e)
    if key not in R.cache:
        members = np.unique(np.asarray(R.mul(e, R.indices())))
        R.cache[key] = SubsetRing(R, members, e, label=f"{R.label}[e={e}]")
    return R.cache[key]


def peirce_split(R: FiniteRing, e) -> PeirceSplit:
    require_scannable(R)
    e = _idx(e)
    if not (idempotent_mask(R)[e] and central_mask(R)[e]):
        raise NotCentralIdempotent(f"{e} is not a central idempotent of {R.label}")
    f = R.sub(R.one, e)
    c1, c2 = corner_ring(R, e), corner_ring(R, f)
    prod = ProductRing([c1, c2])
    x = R.indices()
    iso = c1._back(R.mul(e, x)) * c2.order + c2._back(R.mul(f, x))
    return PeirceSplit(e, c1, c2, prod, iso, verify_isomorphism(R, prod, iso))


def is_indecomposable(R: FiniteRing) -> bool:
    """Nonzero with no central idempotents besides 0 and 1."""
    return R.order > 1 and len(central_idempotent_indices(R)) == 2
