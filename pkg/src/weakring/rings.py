"""Finite rings realized from expressions, with canonical element indexing.

Every ring stores its elements as integers ``0..order-1``.  Arithmetic is
vectorized: ``add``/``mul``/``neg`` accept Python ints or numpy integer
arrays (broadcast together) and return the same kind.  Rings of order at
most ``MATERIALIZE_LIMIT`` additionally cache their Cayley tables, which
the exhaustive scans in the other modules use for speed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import expr as ex
from .errors import InvalidExpr, OrderOverflow, RingMismatch, StructuredUnsupported

DEFAULT_TABLE_LIMIT = 65536
MATERIALIZE_LIMIT = 2048
EXHAUSTIVE_AXIOM_LIMIT = MATERIALIZE_LIMIT

I64 = np.int64


def _digits(x: np.ndarray, radix: int, width: int) -> np.ndarray:
    """Base-``radix`` digits of ``x``, most significant first, in a new trailing axis."""
    out = np.empty(x.shape + (width,), dtype=I64)
    for pos in range(width - 1, -1, -1):
        x, out[..., pos] = np.divmod(x, radix)
    return out


def _undigits(d: np.ndarray, radix: int) -> np.ndarray:
    acc = np.zeros(d.shape[:-1], dtype=I64)
    for pos in range(d.shape[-1]):
        acc = acc * radix + d[..., pos]
    return acc


def _mixed_digits(x: np.ndarray, radices) -> list:
    parts = [None] * len(radices)
    for i in range(len(radices) - 1, -1, -1):
        x, parts[i] = np.divmod(x, radices[i])
    return parts


def _mixed_undigits(parts, radices) -> np.ndarray:
    acc = np.zeros(np.broadcast(*parts).shape, dtype=I64)
    for part, r in zip(parts, radices):
        acc = acc * r + part
    return acc


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


class FiniteRing:
    """Base class: subclasses supply ``_add``, ``_mul``, ``_neg`` on int64 arrays.

    ``structured`` rings are too large for exhaustive element scans; the
    only structured rings are matrix rings over a prime field.
    """

    structured = False

    def __init__(self, order: int, zero: int, one: int, label: str, source=None):
        self.order = int(order)
        self.zero = int(zero)
        self.one = int(one)
        self.label = label
        self.source = source
        self.cache: dict = {}
        self._add_t = None
        self._mul_t = None
        self._neg_t = None

    # -- arithmetic -----------------------------------------------------
    def _add(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def add(self, a, b):
        if self._add_t is not None:
            out = self._add_t[a, b]
        else:
            out = self._add(np.asarray(a, dtype=I64), np.asarray(b, dtype=I64))
        return int(out) if np.ndim(out) == 0 else out.astype(I64, copy=False)

    def mul(self, a, b):
        if self._mul_t is not None:
            out = self._mul_t[a, b]
        else:
            out = self._mul(np.asarray(a, dtype=I64), np.asarray(b, dtype=I64))
        return int(out) if np.ndim(out) == 0 else out.astype(I64, copy=False)

    def neg(self, a):
        if self._neg_t is not None:
            out = self._neg_t[a]
        else:
            out = self._neg(np.asarray(a, dtype=I64))
        return int(out) if np.ndim(out) == 0 else out.astype(I64, copy=False)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def power(self, a, k: int):
        """a**k by square-and-multiply; vectorized over ``a``; a**0 = 1."""
        result = np.full(np.shape(a), self.one, dtype=I64) if np.ndim(a) else self.one
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def scalar(self, k: int) -> int:
        """Index of k·1 (k may be negative)."""
        if k < 0:
            return self.neg(self.scalar(-k))
        result, base = self.zero, self.one
        while k:
            if k & 1:
                result = self.add(result, base)
            k >>= 1
            if k:
                base = self.add(base, base)
        return result

    # -- tables -----------------------------------------------------------
    @property
    def materialized(self) -> bool:
        return self._mul_t is not None

    def materialize(self) -> None:
        """Cache full Cayley tables (only sensible for small orders)."""
        if self._mul_t is not None or self.structured:
            return
        n = self.order
        dtype = np.int16 if n <= 32767 else np.int32
        a = np.arange(n, dtype=I64)
        self._add_t = self._add(a[:, None], a[None, :]).astype(dtype)
        self._mul_t = self._mul(a[:, None], a[None, :]).astype(dtype)
        self._neg_t = self._neg(a).astype(dtype)

    def _finish(self) -> "FiniteRing":
        if self.order <= MATERIALIZE_LIMIT:
            self.materialize()
        return self

    @property
    def add_table(self) -> np.ndarray:
        self.materialize()
        return self._add_t

    @property
    def mul_table(self) -> np.ndarray:
        self.materialize()
        return self._mul_t

    # -- elements ---------------------------------------------------------
    @property
    def tag(self) -> str:
        return self.label

    def indices(self) -> np.ndarray:
        if self.structured:
            raise StructuredUnsupported(f"{self.label} is too large to enumerate")
        return np.arange(self.order, dtype=I64)

    def element(self, index: int) -> "Element":
        return Element(self, index)

    def elements(self) -> Iterator["Element"]:
        if self.structured:
            raise StructuredUnsupported(f"{self.label} is too large to enumerate")
        for i in range(self.order):
            yield Element(self, i)

    def coords(self, index: int):
        """Decode an index into the ring's natural coordinates."""
        return int(index)

    def from_coords(self, c) -> int:
        return int(c)

    def format(self, index: int) -> str:
        return str(int(index))

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label} order={self.order}>"


class ZnRing(FiniteRing):
    def __init__(self, n: int):
        super().__init__(n, 0, 1 % n, str(ex.Zn(n)), ex.Zn(n))
        self.n = n
        self._finish()

    def _add(self, a, b):
        return (a + b) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n

    def _neg(self, a):
        return (-a) % self.n


class ProductRing(FiniteRing):
    """Direct product; index is mixed radix with the leftmost factor most significant."""

    def __init__(self, factors, source=None):
        self.factors = list(factors)
        self.radices = [f.order for f in self.factors]
        order = int(np.prod(self.radices, dtype=object))
        zero = _mixed_undigits([np.int64(f.zero) for f in self.factors], self.radices)
        one = _mixed_undigits([np.int64(f.one) for f in self.factors], self.radices)
        label = str(source) if source is not None else "Prod(" + ",".join(f.label for f in self.factors) + ")"
        super().__init__(order, int(zero), int(one), label, source)
        self._finish()

    def _lift(self, op, a, b):
        pa = _mixed_digits(a, self.radices)
        pb = _mixed_digits(b, self.radices)
        parts = [np.asarray(op(f, x, y), dtype=I64) for f, x, y in zip(self.factors, pa, pb)]
        return _mixed_undigits(parts, self.radices)

    def _add(self, a, b):
        return self._lift(FiniteRing.add, a, b)

    def _mul(self, a, b):
        return self._lift(FiniteRing.mul, a, b)

    def _neg(self, a):
        parts = [np.asarray(f.neg(x), dtype=I64) for f, x in zip(self.factors, _mixed_digits(a, self.radices))]
        return _mixed_undigits(parts, self.radices)

    def coords(self, index):
        return tuple(int(x) for x in _mixed_digits(np.int64(index), self.radices))

    def from_coords(self, c):
        return int(_mixed_undigits([np.int64(x) for x in c], self.radices))

    def format(self, index):
        return "(" + ",".join(f.format(x) for f, x in zip(self.factors, self.coords(index))) + ")"


class _EntryRing(FiniteRing):
    """Shared machinery for rings whose elements are arrays of base-ring entries."""

    def __init__(self, base: FiniteRing, width: int, order, zero, one, label, source):
        self.base = base
        self.width = width
        self.q = base.order
        super().__init__(order, zero, one, label, source)

    def _dec(self, a):
        return _digits(a, self.q, self.width)

    def _enc(self, d):
        return _undigits(d, self.q)

    def _add(self, a, b):
        a, b = np.broadcast_arrays(a, b)
        return self._enc(np.asarray(self.base.add(self._dec(a), self._dec(b)), dtype=I64))

    def _neg(self, a):
        return self._enc(np.asarray(self.base.neg(self._dec(a)), dtype=I64))


def _matmul_entries(base: FiniteRing, da, db, k: int):
    """Product of matrices given as (..., k, k) arrays of base-ring indices."""
    out = np.empty(np.broadcast(da, db).shape, dtype=I64)
    for i in range(k):
        for j in range(k):
            acc = np.asarray(base.mul(da[..., i, 0], db[..., 0, j]), dtype=I64)
            for l in range(1, k):
                acc = np.asarray(base.add(acc, base.mul(da[..., i, l], db[..., l, j])), dtype=I64)
            out[..., i, j] = acc
    return out


class MatrixRing(_EntryRing):
    """k×k matrices over ``base``; index = base-|base| digits, row-major, (0,0) most significant."""

    def __init__(self, base: FiniteRing, k: int, source=None, structured=False):
        q = base.order
        ident = np.full((k, k), base.zero, dtype=I64)
        np.fill_diagonal(ident, base.one)
        one = int(_undigits(ident.reshape(-1), q)) if k * k else 0
        zero = int(_undigits(np.full(k * k, base.zero, dtype=I64), q))
        label = str(source) if source is not None else f"M({k},{base.label})"
        super().__init__(base, k * k, q ** (k * k), zero, one, label, source)
        self.k = k
        self.structured = structured
        self._finish()

    def _mul(self, a, b):
        a, b = np.broadcast_arrays(a, b)
        k = self.k
        da = self._dec(a).reshape(a.shape + (k, k))
        db = self._dec(b).reshape(b.shape + (k, k))
        return self._enc(_matmul_entries(self.base, da, db, k).reshape(a.shape + (k * k,)))

    def coords(self, index):
        d = _digits(np.int64(index), self.q, self.width).reshape(self.k, self.k)
        return tuple(tuple(int(x) for x in row) for row in d)

    def from_coords(self, c):
        return int(_undigits(np.asarray(c, dtype=I64).reshape(-1), self.q))

    def format(self, index):
        rows = self.coords(index)
        return "[" + ",".join("[" + ",".join(self.base.format(x) for x in r) + "]" for r in rows) + "]"


class TriangularRing(_EntryRing):
    """Upper-triangular k×k matrices; index = digits of the upper entries in row-major order."""

    def __init__(self, base: FiniteRing, k: int, source=None):
        self.k = k
        self.positions = [(i, j) for i in range(k) for j in range(i, k)]
        q = base.order
        width = len(self.positions)
        zero = int(_undigits(np.full(width, base.zero, dtype=I64), q))
        one_d = np.array([base.one if i == j else base.zero for i, j in self.positions], dtype=I64)
        one = int(_undigits(one_d, q))
        label = str(source) if source is not None else f"T({k},{base.label})"
        super().__init__(base, width, q ** width, zero, one, label, source)
        self._finish()

    def _full(self, a):
        d = self._dec(a)
        m = np.full(a.shape + (self.k, self.k), self.base.zero, dtype=I64)
        for pos, (i, j) in enumerate(self.positions):
            m[..., i, j] = d[..., pos]
        return m

    def _mul(self, a, b):
        a, b = np.broadcast_arrays(a, b)
        prod = _matmul_entries(self.base, self._full(a), self._full(b), self.k)
        d = np.stack([prod[..., i, j] for i, j in self.positions], axis=-1)
        return self._enc(d)

    def coords(self, index):
        m = self._full(np.asarray(np.int64(index)))
        return tuple(tuple(int(x) for x in row) for row in m)

    def from_coords(self, c):
        c = np.asarray(c, dtype=I64)
        return int(_undigits(np.array([c[i, j] for i, j in self.positions], dtype=I64), self.q))


class TrivExtRing(FiniteRing):
    """Trivial extension R ⋉ R: pairs (r, m) ~ [[r, m], [0, r]], r most significant."""

    def __init__(self, base: FiniteRing, source=None):
        self.base = base
        q = base.order
        label = str(source) if source is not None else f"TrivExt({base.label})"
        super().__init__(q * q, base.zero * q + base.zero, base.one * q + base.zero, label, source)
        self._finish()

    def _split(self, a):
        return np.divmod(a, self.base.order)

    def _join(self, r, m):
        return np.asarray(r, dtype=I64) * self.base.order + np.asarray(m, dtype=I64)

    def _add(self, a, b):
        r1, m1 = self._split(a)
        r2, m2 = self._split(b)
        return self._join(self.base.add(r1, r2), self.base.add(m1, m2))

    def _mul(self, a, b):
        B = self.base
        r1, m1 = self._split(a)
        r2, m2 = self._split(b)
        return self._join(B.mul(r1, r2), B.add(B.mul(r1, m2), B.mul(m1, r2)))

    def _neg(self, a):
        r, m = self._split(a)
        return self._join(self.base.neg(r), self.base.neg(m))

    def coords(self, index):
        r, m = divmod(int(index), self.base.order)
        return (r, m)

    def from_coords(self, c):
        return int(c[0]) * self.base.order + int(c[1])


class SkewRing(FiniteRing):
    """S = R[x; sigma]/(x^2) with R = Zn[t]/(t^2) and sigma(a + bt) = a.

    An element r + s x is indexed as r_index * n^2 + s_index, where a + bt in R
    has index a * n + b.
    """

    def __init__(self, n: int, source=None):
        self.n = n
        rsize = n * n
        one_r = (1 % n) * n
        super().__init__(rsize * rsize, 0, one_r * rsize, str(ex.Skew(n)), source or ex.Skew(n))
        self._finish()

    def _parts(self, a):
        n = self.n
        r, s = np.divmod(a, n * n)
        ra, rb = np.divmod(r, n)
        sa, sb = np.divmod(s, n)
        return ra, rb, sa, sb

    def _pack(self, ra, rb, sa, sb):
        n = self.n
        return ((ra % n) * n + rb % n) * (n * n) + (sa % n) * n + sb % n

    def _add(self, a, b):
        return self._pack(*(x + y for x, y in zip(self._parts(a), self._parts(b))))

    def _neg(self, a):
        return self._pack(*(-x for x in self._parts(a)))

    def _mul(self, a, b):
        a1, b1, c1, d1 = self._parts(a)  # r1 = a1 + b1 t, s1 = c1 + d1 t
        a2, b2, c2, d2 = self._parts(b)
        # r1 r2
        ra = a1 * a2
        rb = a1 * b2 + b1 * a2
        # r1 s2 + s1 sigma(r2), sigma(r2) = a2
        sa = a1 * c2 + c1 * a2
        sb = a1 * d2 + b1 * c2 + d1 * a2
        return self._pack(ra, rb, sa, sb)

    def coords(self, index):
        ra, rb, sa, sb = (int(x) for x in self._parts(np.int64(index)))
        return ((ra, rb), (sa, sb))

    def from_coords(self, c):
        (ra, rb), (sa, sb) = c
        return int(self._pack(np.int64(ra), np.int64(rb), np.int64(sa), np.int64(sb)))

    def format(self, index):
        (ra, rb), (sa, sb) = self.coords(index)
        return f"({ra}+{rb}t)+({sa}+{sb}t)x"


class QuotientRing(FiniteRing):
    """Coset ring base/I; cosets indexed by increasing minimal representative."""

    def __init__(self, base: FiniteRing, ideal_members, label=None, source=None):
        self.base = base
        members = np.asarray(ideal_members, dtype=I64)
        labels = np.full(base.order, -1, dtype=I64)
        reps = []
        nxt = 0
        while nxt < base.order:
            coset = np.asarray(base.add(nxt, members), dtype=I64)
            labels[coset] = len(reps)
            reps.append(nxt)
            free = np.flatnonzero(labels[nxt:] < 0)
            nxt = nxt + int(free[0]) if free.size else base.order
        self.reps = np.asarray(reps, dtype=I64)
        self.projection = labels
        self.ideal_members = members
        label = label or f"{base.label}/I"
        super().__init__(len(reps), labels[base.zero], labels[base.one], label, source)
        self._finish()

    def _add(self, a, b):
        return self.projection[self.base.add(self.reps[a], self.reps[b])]

    def _mul(self, a, b):
        return self.projection[self.base.mul(self.reps[a], self.reps[b])]

    def _neg(self, a):
        return self.projection[self.base.neg(self.reps[a])]

    def coords(self, index):
        return int(self.reps[index])

    def from_coords(self, c):
        return int(self.projection[int(c)])

    def format(self, index):
        return self.base.format(int(self.reps[index])) + "+I"


class SubsetRing(FiniteRing):
    """Ring carried by a sorted subset of a parent ring, with its own identity.

    Used for the center (identity = parent one) and for corner rings eR
    (identity = e).
    """

    def __init__(self, parent: FiniteRing, members, one_parent: int, label: str):
        self.parent = parent
        self.members = np.asarray(members, dtype=I64)
        pos = np.searchsorted(self.members, [parent.zero, one_parent])
        super().__init__(len(self.members), int(pos[0]), int(pos[1]), label)
        self._finish()

    def _back(self, x):
        return np.searchsorted(self.members, x)

    def _add(self, a, b):
        return self._back(self.parent.add(self.members[a], self.members[b]))

    def _mul(self, a, b):
        return self._back(self.parent.mul(self.members[a], self.members[b]))

    def _neg(self, a):
        return self._back(self.parent.neg(self.members[a]))

    def coords(self, index):
        return int(self.members[index])

    def from_coords(self, c):
        return int(self._back(int(c)))

    def format(self, index):
        return self.parent.format(int(self.members[index]))


class TableRing(FiniteRing):
    """Ring given directly by Cayley tables."""

    def __init__(self, add_table, mul_table, zero: int, one: int, label: str = "table"):
        add_table = np.asarray(add_table)
        n = add_table.shape[0]
        super().__init__(n, zero, one, label)
        self._add_t = add_table.astype(np.int32)
        self._mul_t = np.asarray(mul_table).astype(np.int32)
        neg = np.zeros(n, dtype=np.int32)
        rows, cols = np.nonzero(self._add_t == zero)
        neg[rows] = cols
        self._neg_t = neg


# -- construction --------------------------------------------------------

def expr_order(e) -> int | None:
    """Order of the ring an expression denotes, or None when it needs realization (quotients)."""
    if isinstance(e, ex.Zn):
        return e.n
    if isinstance(e, ex.Skew):
        return e.n ** 4
    if isinstance(e, ex.Quotient):
        return None
    if isinstance(e, ex.Product):
        total = 1
        for f in e.factors:
            o = expr_order(f)
            if o is None:
                return None
            total *= o
        return total
    base = expr_order(e.base)
    if base is None:
        return None
    if isinstance(e, ex.Matrix):
        return base ** (e.k * e.k)
    if isinstance(e, ex.TrivExt):
        return base * base
    if isinstance(e, ex.Triangular):
        return base ** (e.k * (e.k + 1) // 2)
    raise InvalidExpr(f"not a ring expression: {e!r}")


def build(expr, table_limit: int = DEFAULT_TABLE_LIMIT) -> FiniteRing:
    """Realize a ring expression (or expression text) as a FiniteRing.

    Orders above ``table_limit`` are only allowed for matrix rings over a
    prime field, which come back structured.
    """
    if isinstance(expr, str):
        expr = ex.parse(expr)
    ex.validate(expr)
    order = expr_order(expr)
    if order is not None and order > table_limit:
        if isinstance(expr, ex.Matrix) and isinstance(expr.base, ex.Zn) and is_prime(expr.base.n):
            return MatrixRing(ZnRing(expr.base.n), expr.k, source=expr, structured=True)
        raise OrderOverflow(f"{expr} has order {order} > table limit {table_limit}")
    return _build(expr, table_limit)


def _build(e, limit: int) -> FiniteRing:
    if isinstance(e, ex.Zn):
        return ZnRing(e.n)
    if isinstance(e, ex.Skew):
        return SkewRing(e.n, source=e)
    if isinstance(e, ex.Product):
        return ProductRing([build(f, limit) for f in e.factors], source=e)
    if isinstance(e, ex.Quotient):
        from .structure import ideal_generated

        base = build(e.base, limit)
        if base.structured:
            raise StructuredUnsupported("quotients need a tabled base ring")
        for g in e.generators:
            if not 0 <= g < base.order:
                raise InvalidExpr(f"generator {g} out of range for {base.label} (order {base.order})")
        ideal = ideal_generated(base, list(e.generators))
        return QuotientRing(base, ideal.members, label=str(e), source=e)
    base = build(e.base, limit)
    if isinstance(e, ex.Matrix):
        ring = MatrixRing(base, e.k, source=e)
    elif isinstance(e, ex.TrivExt):
        ring = TrivExtRing(base, source=e)
    elif isinstance(e, ex.Triangular):
        ring = TriangularRing(base, e.k, source=e)
    else:
        raise InvalidExpr(f"not a ring expression: {e!r}")
    if ring.order > limit:
        raise OrderOverflow(f"{e} has order {ring.order} > table limit {limit}")
    return ring


# -- elements ------------------------------------------------------------

class Element:
    """An element of a specific ring; arithmetic across rings raises RingMismatch.

    Python ints act as multiples of the identity, so ``a - 1`` and ``2 * a``
    mean what they do in ordinary notation.
    """

    __slots__ = ("ring", "index")

    def __init__(self, ring: FiniteRing, index: int):
        index = int(index)
        if not 0 <= index < ring.order:
            raise ValueError(f"index {index} out of range for {ring.label} (order {ring.order})")
        self.ring = ring
        self.index = index

    def _idx(self, other) -> int:
        if isinstance(other, Element):
            if other.ring is not self.ring and (other.ring.tag != self.ring.tag or other.ring.order != self.ring.order):
                raise RingMismatch(f"{self.ring.label} vs {other.ring.label}")
            return other.index
        if isinstance(other, (int, np.integer)):
            return self.ring.scalar(int(other))
        return NotImplemented

    def _make(self, i) -> "Element":
        return Element(self.ring, i)

    def __add__(self, other):
        o = self._idx(other)
        return NotImplemented if o is NotImplemented else self._make(self.ring.add(self.index, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._idx(other)
        return NotImplemented if o is NotImplemented else self._make(self.ring.sub(self.index, o))

    def __rsub__(self, other):
        o = self._idx(other)
        return NotImplemented if o is NotImplemented else self._make(self.ring.sub(o, self.index))

    def __mul__(self, other):
        o = self._idx(other)
        return NotImplemented if o is NotImplemented else self._make(self.ring.mul(self.index, o))

    def __rmul__(self, other):
        o = self._idx(other)
        return NotImplemented if o is NotImplemented else self._make(self.ring.mul(o, self.index))

    def __neg__(self):
        return self._make(self.ring.neg(self.index))

    def __pow__(self, k: int):
        return self._make(self.ring.power(self.index, int(k)))

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ring.tag == other.ring.tag and self.ring.order == other.ring.order and self.index == other.index
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.tag, self.index))

    def __int__(self):
        return self.index

    def __index__(self):
        return self.index

    def __repr__(self):
        return f"Element({self.ring.label}, {self.index})"

    def __str__(self):
        return self.ring.format(self.index)


def _check_same(a: Element, b: Element) -> None:
    a._idx(b)


def add(a: Element, b: Element) -> Element:
    _check_same(a, b)
    return a + b


def mul(a: Element, b: Element) -> Element:
    _check_same(a, b)
    return a * b


def neg(a: Element) -> Element:
    return -a


def zero(R: FiniteRing) -> Element:
    return Element(R, R.zero)


def one(R: FiniteRing) -> Element:
    return Element(R, R.one)


def elements(R: FiniteRing) -> Iterator[Element]:
    return R.elements()


# -- axioms --------------------------------------------------------------

AXIOMS = (
    "add_assoc",
    "add_comm",
    "add_identity",
    "add_inverse",
    "mul_assoc",
    "mul_identity",
    "left_distrib",
    "right_distrib",
)


@dataclass
class AxiomReport:
    ring: str
    exhaustive: bool
    results: dict = field(default_factory=dict)
    commutative: bool = True

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def failures(self) -> list:
        return [k for k, v in self.results.items() if not v]


def verify_axioms(R: FiniteRing, exhaustive: bool | None = None, samples: int = 100_000, seed: int = 0) -> AxiomReport:
    """Check the ring axioms on every triple (or on random triples for big rings)."""
    if R.structured:
        raise StructuredUnsupported(f"{R.label} is structured; use sample_axioms")
    if exhaustive is None:
        exhaustive = R.order <= EXHAUSTIVE_AXIOM_LIMIT
    if exhaustive:
        return _axioms_exhaustive(R)
    return sample_axioms(R, samples, seed)


def _magma_generators(A: np.ndarray) -> list:
    """Indices whose closure under the table ``A`` is everything (no group law assumed)."""
    n = len(A)
    reach = np.zeros(n, dtype=bool)
    gens = []
    while not reach.all():
        gens.append(int(np.argmin(reach)))
        reach[gens[-1]] = True
        frontier = np.flatnonzero(reach)
        while frontier.size:
            new = np.unique(A[np.ix_(frontier, gens)])
            new = new[~reach[new]]
            reach[new] = True
            frontier = new
    return gens


def _axioms_exhaustive(R: FiniteRing) -> AxiomReport:
    """Complete axiom check, reduced to additive generators S where that is sound.

    * Light's test: + is associative iff (x+s)+y = x+(s+y) for all x, y and s in S.
    * Once (R,+) is an abelian group, x -> ax is additive iff a(b+s) = ab+as
      for all b and s in S, and likewise on the right.
    * With both distributive laws, (ab)c - a(bc) is additive in each slot, so
      associativity of multiplication only needs triples from S.
    Any failure of a premise falls back to the cubic check.
    """
    n = R.order
    A = R.add_table.astype(np.intp)
    M = R.mul_table.astype(np.intp)
    N = R._neg_t.astype(np.intp)
    idx = np.arange(n)
    S = _magma_generators(A)
    res = {}
    res["add_comm"] = bool((A == A.T).all())
    res["add_identity"] = bool((A[R.zero] == idx).all() and (A[:, R.zero] == idx).all())
    res["add_inverse"] = bool((A[idx, N] == R.zero).all())
    res["mul_identity"] = bool((M[R.one] == idx).all() and (M[:, R.one] == idx).all())
    res["add_assoc"] = all((A[A[:, s]] == A[:, A[s]]).all() for s in S)
    group = res["add_comm"] and res["add_identity"] and res["add_inverse"] and res["add_assoc"]
    if group:
        res["left_distrib"] = all((M[:, A[:, s]] == A[M, M[:, s][:, None]]).all() for s in S)
        res["right_distrib"] = all((M[A[:, s], :] == A[M, M[s, :][None, :]]).all() for s in S)
    else:
        res["left_distrib"], res["right_distrib"] = _cubic_distrib(A, M)
    if group and res["left_distrib"] and res["right_distrib"]:
        s = np.asarray(S)
        res["mul_assoc"] = bool((M[M[np.ix_(s, s)][:, :, None], s[None, None, :]]
                                 == M[s[:, None, None], M[np.ix_(s, s)][None, :, :]]).all())
    else:
        res["mul_assoc"] = all((M[M[a]] == M[a][M]).all() for a in range(n))
    res = {k: bool(res[k]) for k in AXIOMS}
    return AxiomReport(R.label, True, res, bool((M == M.T).all()))


def _cubic_distrib(A: np.ndarray, M: np.ndarray):
    left = right = True
    for a in range(len(A)):
        Ma, Mca = M[a], M[:, a]
        left = left and bool((Ma[A] == A[Ma][:, Ma]).all())
        right = right and bool((Mca[A] == A[Mca][:, Mca]).all())
    return left, right


def axioms_cubic(R: FiniteRing) -> dict:
    """Reference check over every triple; slow, kept for cross-validation."""
    n = R.order
    A = R.add_table.astype(np.intp)
    M = R.mul_table.astype(np.intp)
    left, right = _cubic_distrib(A, M)
    return {
        "add_assoc": all((A[A[a]] == A[a][A]).all() for a in range(n)),
        "mul_assoc": all((M[M[a]] == M[a][M]).all() for a in range(n)),
        "left_distrib": left,
        "right_distrib": right,
    }


def sample_axioms(R: FiniteRing, samples: int = 100_000, seed: int = 0) -> AxiomReport:
    """Random-triple axiom check; works for structured rings too."""
    rng = np.random.default_rng(seed)
    a, b, c = (rng.integers(0, R.order, size=samples, dtype=I64) for _ in range(3))
    add, mul, neg = R.add, R.mul, R.neg
    eq = lambda x, y: bool(np.array_equal(np.asarray(x), np.asarray(y)))  # noqa: E731
    res = {
        "add_assoc": eq(add(add(a, b), c), add(a, add(b, c))),
        "add_comm": eq(add(a, b), add(b, a)),
        "add_identity": eq(add(a, R.zero), a),
        "add_inverse": bool((np.asarray(add(a, neg(a))) == R.zero).all()),
        "mul_assoc": eq(mul(mul(a, b), c), mul(a, mul(b, c))),
        "mul_identity": eq(mul(R.one, a), a) and eq(mul(a, R.one), a),
        "left_distrib": eq(mul(a, add(b, c)), add(mul(a, b), mul(a, c))),
        "right_distrib": eq(mul(add(b, c), a), add(mul(b, a), mul(c, a))),
    }
    return AxiomReport(R.label, False, res, eq(mul(a, b), mul(b, a)))
