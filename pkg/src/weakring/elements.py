"""Element classification and decomposition search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from . import matgf
from . import structure as st
from .rings import Element, FiniteRing


@dataclass(frozen=True)
class WncDecomposition:
    """target = nilpotent + idempotent (sign '+') or nilpotent - idempotent (sign '-').

    Fields hold ring Elements, or MatrixGF values when produced by matgf.
    """

    target: Any
    sign: str
    nilpotent: Any
    nilpotency_index: int
    idempotent: Any

    def key(self) -> tuple:
        return (self.sign, int(_as_index(self.nilpotent)), int(_as_index(self.idempotent)))


@dataclass(frozen=True)
class NilInvolutionDecomposition:
    """target = u + v with v^2 = 1 and u - 1 (form 'nilpotent+1') or u + 1 (form 'nilpotent-1') nilpotent."""

    target: Element
    u: Element
    u_form: str
    v: Element


def _as_index(x):
    if isinstance(x, matgf.MatrixGF):
        return matgf.to_index(x)
    return x.index if isinstance(x, Element) else int(x)


def is_unit(a: Element):
    """(True, inverse) or (False, None)."""
    R = a.ring
    if R.materialized:
        row = np.flatnonzero(R.mul_table[a.index] == R.one)
        if row.size:
            return True, Element(R, int(row[0]))
        return False, None
    if not st.unit_mask(R)[a.index]:
        return False, None
    # the inverse is a power of a, since units form a finite group
    p = a.index
    prev = R.one
    while p != R.one:
        prev = p
        p = R.mul(p, a.index)
    return True, Element(R, prev)


def is_nilpotent(a: Element):
    """(True, index) or (False, None), by power iteration with repeat detection."""
    R = a.ring
    p = a.index
    seen = set()
    k = 1
    while p not in seen:
        if p == R.zero:
            return True, k
        seen.add(p)
        p = R.mul(p, a.index)
        k += 1
    return False, None


def is_idempotent(a: Element) -> bool:
    return a.ring.mul(a.index, a.index) == a.index


def is_involution(a: Element) -> bool:
    return a.ring.mul(a.index, a.index) == a.ring.one


def _idempotents_of(R: FiniteRing) -> np.ndarray:
    if R.structured:
        return np.asarray(matgf.idempotent_indices(R.base.order, R.k), dtype=np.int64)
    return st.idempotent_indices(R)


def _nil_test(R: FiniteRing):
    if R.structured:
        p, n = R.base.order, R.k
        return lambda idx: matgf.batch_nilpotent(matgf.indices_to_arrays(p, n, idx), p)
    mask = st.nil_mask(R)
    return lambda idx: mask[idx]


def wnc_decompositions(a: Element, mode: str = "all") -> list:
    """Decompositions a = b ± e, idempotents ascending and sign + before -.

    e = 0 gives a single '+' entry.  ``mode='first'`` stops at the first hit.
    """
    if mode not in ("all", "first"):
        raise ValueError(f"mode must be 'all' or 'first', got {mode!r}")
    R = a.ring
    Es = _idempotents_of(R)
    nil = _nil_test(R)
    plus_b = np.asarray(R.sub(a.index, Es))
    minus_b = np.asarray(R.add(a.index, Es))
    plus_ok = nil(plus_b)
    minus_ok = nil(minus_b) & (Es != R.zero)
    out = []
    for i in np.flatnonzero(plus_ok | minus_ok):
        e = Element(R, Es[i])
        for ok, bs, sign in ((plus_ok, plus_b, "+"), (minus_ok, minus_b, "-")):
            if ok[i]:
                b = Element(R, bs[i])
                out.append(WncDecomposition(a, sign, b, is_nilpotent(b)[1], e))
                if mode == "first":
                    return out
    return out


def is_nil_clean_element(a: Element) -> bool:
    R = a.ring
    Es = _idempotents_of(R)
    return bool(_nil_test(R)(np.asarray(R.sub(a.index, Es))).any())


def is_weakly_nil_clean_element(a: Element) -> bool:
    return bool(wnc_decompositions(a, "first"))


def nil_involution_decomposition(a: Element) -> Optional[NilInvolutionDecomposition]:
    """First a = u + v over involutions v ascending, trying u = b + 1 before u = b - 1."""
    R = a.ring
    nil = st.nil_mask(R)
    for v in st.involution_indices(R):
        u = R.sub(a.index, int(v))
        if nil[R.sub(u, R.one)]:
            return NilInvolutionDecomposition(a, Element(R, u), "nilpotent+1", Element(R, int(v)))
        if nil[R.add(u, R.one)]:
            return NilInvolutionDecomposition(a, Element(R, u), "nilpotent-1", Element(R, int(v)))
    return None


def _left_multiples_contain(R: FiniteRing, y: int, target: int) -> bool:
    """target ∈ R·y."""
    if st.unit_mask(R)[y]:
        return True
    if R.materialized:
        return bool((R.mul_table[:, y] == target).any())
    return bool(np.isin(target, st.additive_span(R, [R.mul(g, y) for g in st.additive_generators(R)])))


def _right_multiples_contain(R: FiniteRing, y: int, target: int) -> bool:
    """target ∈ y·R."""
    if st.unit_mask(R)[y]:
        return True
    if R.materialized:
        return bool((R.mul_table[y] == target).any())
    return bool(np.isin(target, st.additive_span(R, [R.mul(y, g) for g in st.additive_generators(R)])))


def is_strongly_pi_regular_element(a: Element):
    """(True, n) for the least n > 0 with a^n ∈ R a^(n+1) ∩ a^(n+1) R, else (False, None)."""
    R = a.ring
    an = a.index
    for n in range(1, R.order + 1):
        an1 = R.mul(an, a.index)
        if _left_multiples_contain(R, an1, an) and _right_multiples_contain(R, an1, an):
            return True, n
        an = an1
    return False, None
