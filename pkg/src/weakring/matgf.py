"""Square matrices over GF(p) and the exhaustive matrix decomposition searches.

Matrices are indexed exactly like ``MatrixRing`` elements: base-p digits in
row-major order with entry (0,0) most significant, so index order is the
row-major lexicographic order of entries.

The idempotent scan walks the p^(n^2) index space in chunks: the low digits
come from a precomputed digit table, the high digits are fixed per chunk,
and E^2 = E is tested row by row so that most candidates are dropped after
the first row.
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded, Singular

SUPPORTED_PRIMES = (2, 3, 5)
DEFAULT_MATRIX_BUDGET = 3**16
_LOW_CHUNK = 60_000


@dataclass(frozen=True)
class MatrixGF:
    p: int
    n: int
    entries: tuple  # row-major, reduced mod p

    @classmethod
    def from_rows(cls, p: int, rows) -> "MatrixGF":
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        return cls(p, n, tuple(int(x) % p for r in rows for x in r))

    @classmethod
    def from_array(cls, p: int, a) -> "MatrixGF":
        a = np.asarray(a) % p
        return cls(p, a.shape[0], tuple(int(x) for x in a.reshape(-1)))

    @classmethod
    def identity(cls, p: int, n: int) -> "MatrixGF":
        return cls.from_array(p, np.eye(n, dtype=np.int64))

    @classmethod
    def zero(cls, p: int, n: int) -> "MatrixGF":
        return cls(p, n, (0,) * (n * n))

    @classmethod
    def diag(cls, p: int, values) -> "MatrixGF":
        return cls.from_array(p, np.diag(np.asarray(values, dtype=np.int64) % p))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=np.int64).reshape(self.n, self.n)

    @property
    def rows(self) -> list:
        return self.array.tolist()

    def _check(self, other: "MatrixGF") -> None:
        if (self.p, self.n) != (other.p, other.n):
            raise ValueError(f"shape/field mismatch: M{self.n}(GF{self.p}) vs M{other.n}(GF{other.p})")

    def __add__(self, other):
        self._check(other)
        return MatrixGF.from_array(self.p, self.array + other.array)

    def __sub__(self, other):
        self._check(other)
        return MatrixGF.from_array(self.p, self.array - other.array)

    def __neg__(self):
        return MatrixGF.from_array(self.p, -self.array)

    def __matmul__(self, other):
        self._check(other)
        return MatrixGF.from_array(self.p, self.array @ other.array)

    __mul__ = __matmul__

    def __pow__(self, k: int):
        result = MatrixGF.identity(self.p, self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __str__(self) -> str:
        return format_matrix(self)


def format_matrix(A: MatrixGF, with_field: bool = True) -> str:
    body = "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in A.rows) + "]"
    return f"gf({A.p}) {body}" if with_field else body


_MATRIX_TEXT = re.compile(r"^\s*(?:gf\s*\(\s*(\d+)\s*\)\s*)?(\[.*\])\s*$", re.S)


def parse_matrix(text: str, p: int | None = None) -> MatrixGF:
    """Parse ``gf(3) [[1,0],[0,2]]``; the ``gf(p)`` prefix may be omitted when ``p`` is given."""
    m = _MATRIX_TEXT.match(text)
    if not m:
        raise ValueError(f"not a matrix literal: {text!r}")
    field_p = int(m.group(1)) if m.group(1) else p
    if field_p is None:
        raise ValueError("matrix literal needs gf(p) or an explicit modulus")
    if p is not None and field_p != p:
        raise ValueError(f"literal is over GF({field_p}) but GF({p}) was expected")
    rows = [[int(x) for x in re.findall(r"-?\d+", r)] for r in re.findall(r"\[([^\[\]]*)\]", m.group(2))]
    return MatrixGF.from_rows(field_p, rows)


def to_index(A: MatrixGF) -> int:
    idx = 0
    for x in A.entries:
        idx = idx * A.p + x
    return idx


def from_index(p: int, n: int, index: int) -> MatrixGF:
    digits = []
    for _ in range(n * n):
        index, d = divmod(index, p)
        digits.append(d)
    return MatrixGF(p, n, tuple(reversed(digits)))


# -- linear algebra --------------------------------------------------------

def rref(A: MatrixGF):
    """(R, rank, U) with R the reduced row echelon form and U invertible, U A = R."""
    p, n = A.p, A.n
    M = A.array.copy()
    U = np.eye(n, dtype=np.int64)
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, n) if M[r, col] % p), None)
        if pivot is None:
            continue
        M[[row, pivot]] = M[[pivot, row]]
        U[[row, pivot]] = U[[pivot, row]]
        inv = pow(int(M[row, col]), p - 2, p)
        M[row] = (M[row] * inv) % p
        U[row] = (U[row] * inv) % p
        for r in range(n):
            if r != row and M[r, col]:
                f = M[r, col]
                M[r] = (M[r] - f * M[row]) % p
                U[r] = (U[r] - f * U[row]) % p
        row += 1
        if row == n:
            break
    return MatrixGF.from_array(p, M), row, MatrixGF.from_array(p, U)


def rank(A: MatrixGF) -> int:
    return rref(A)[1]


def inverse(A: MatrixGF) -> MatrixGF:
    R, r, U = rref(A)
    if r < A.n:
        raise Singular(f"matrix of rank {r} < {A.n} has no inverse")
    return U


def trace(A: MatrixGF) -> int:
    return int(np.trace(A.array)) % A.p


def is_nilpotent_matrix(A: MatrixGF) -> bool:
    """Over a field the nilpotency index is at most n."""
    return (A ** A.n).is_zero()


def nilpotency_index(A: MatrixGF) -> int | None:
    P = A
    for k in range(1, A.n + 1):
        if P.is_zero():
            return k
        P = P @ A
    return None


def is_idempotent_matrix(A: MatrixGF) -> bool:
    return A @ A == A


def conjugate(A: MatrixGF, P: MatrixGF) -> MatrixGF:
    """P A P^-1."""
    return P @ A @ inverse(P)


def check_similar_to_neg(A: MatrixGF, P: MatrixGF) -> bool:
    return conjugate(A, P) == -A


def swap_conjugator(p: int, n: int) -> MatrixGF:
    """antidiag(1,1) ⊕ I_{n-2}; conjugates diag(1,-1) ⊕ 0 to its negative."""
    Q = np.eye(n, dtype=np.int64)
    Q[:2, :2] = [[0, 1], [1, 0]]
    return MatrixGF.from_array(p, Q)


def witness_matrix(p: int, n: int) -> MatrixGF:
    """diag(1, -1, 0, ..., 0)."""
    return MatrixGF.diag(p, [1, -1] + [0] * (n - 2))


# -- batched kernels ---------------------------------------------------------

def batch_matmul(X: np.ndarray, Y: np.ndarray, p: int) -> np.ndarray:
    return np.matmul(X, Y) % p


def batch_nilpotent(X: np.ndarray, p: int) -> np.ndarray:
    """Mask of nilpotent matrices in a (m, n, n) batch: X^(2^k) = 0 with 2^k >= n."""
    n = X.shape[-1]
    P = X.astype(np.int64) % p
    k = 1
    while k < n:
        P = batch_matmul(P, P, p)
        k *= 2
    return ~P.reshape(len(P), -1).any(axis=1)


def batch_idempotent(X: np.ndarray, p: int) -> np.ndarray:
    return (batch_matmul(X, X, p) == X).reshape(len(X), -1).all(axis=1)


def _check_budget(p: int, n: int, budget: int | None) -> None:
    budget = DEFAULT_MATRIX_BUDGET if budget is None else budget
    if p ** (n * n) > budget:
        raise BudgetExceeded(f"M{n}(GF{p}) has {p}^{n * n} elements > budget {budget}")


def _split(p: int, n: int):
    total = n * n
    low = 0
    while low < total and p ** (low + 1) <= _LOW_CHUNK:
        low += 1
    return total - low, low


@lru_cache(maxsize=None)
def _digit_table(p: int, width: int) -> np.ndarray:
    x = np.arange(p**width, dtype=np.int64)
    out = np.empty((p**width, width), dtype=np.int16)
    for pos in range(width - 1, -1, -1):
        x, out[:, pos] = np.divmod(x, p)
    return out


def _scan_prefixes(p: int, n: int, start: int, stop: int) -> np.ndarray:
    """Indices of idempotents whose high-digit prefix lies in [start, stop)."""
    high, low = _split(p, n)
    low_digits = _digit_table(p, low)
    high_digits = _digit_table(p, high) if high else np.zeros((1, 0), dtype=np.int16)
    m = len(low_digits)
    found = []
    for h in range(start, stop):
        E = np.empty((m, n * n), dtype=np.int16)
        E[:, :high] = high_digits[h]
        E[:, high:] = low_digits
        E = E.reshape(m, n, n)
        alive = np.arange(m)
        for i in range(n):
            sub = E[alive]
            row = sub[:, i, :]
            sq = np.einsum("mk,mkj->mj", row, sub) % p
            alive = alive[(sq == row).all(axis=1)]
            if alive.size == 0:
                break
        found.append(h * m + alive.astype(np.int64))
    return np.concatenate(found) if found else np.zeros(0, dtype=np.int64)


def idempotent_indices(p: int, n: int, workers: int = 1, budget: int | None = None) -> np.ndarray:
    """Sorted indices of all idempotents of M_n(GF(p)) by full scan."""
    _check_budget(p, n, budget)
    return _idempotent_indices(p, n, max(1, workers))


@lru_cache(maxsize=None)
def _idempotent_indices(p: int, n: int, workers: int) -> np.ndarray:
    high, _ = _split(p, n)
    prefixes = p**high
    if workers == 1 or prefixes < workers:
        out = _scan_prefixes(p, n, 0, prefixes)
    else:
        bounds = np.linspace(0, prefixes, workers + 1).astype(int)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_scan_prefixes, [p] * workers, [n] * workers, bounds[:-1], bounds[1:])
            out = np.concatenate(list(parts))
    out.setflags(write=False)
    return out


def indices_to_arrays(p: int, n: int, idx: np.ndarray) -> np.ndarray:
    x = np.asarray(idx, dtype=np.int64)
    out = np.empty((len(x), n * n), dtype=np.int64)
    for pos in range(n * n - 1, -1, -1):
        x, out[:, pos] = np.divmod(x, p)
    return out.reshape(-1, n, n)


def idempotent_arrays(p: int, n: int, workers: int = 1, budget: int | None = None) -> np.ndarray:
    return indices_to_arrays(p, n, idempotent_indices(p, n, workers, budget))


def enumerate_idempotents(p: int, n: int, workers: int = 1, budget: int | None = None) -> Iterator[MatrixGF]:
    """All E with E^2 = E in row-major lexicographic order."""
    for a in idempotent_arrays(p, n, workers, budget):
        yield MatrixGF.from_array(p, a)


# -- decomposition searches ------------------------------------------------

def nil_clean_check(A: MatrixGF, workers: int = 1, budget: int | None = None):
    """First (N, E) with A = N + E, N nilpotent, E idempotent (E in index order), or None."""
    Es = idempotent_arrays(A.p, A.n, workers, budget)
    ok = batch_nilpotent(A.array[None] - Es, A.p)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    E = MatrixGF.from_array(A.p, Es[hits[0]])
    return A - E, E


def weakly_nil_clean_check(A: MatrixGF, workers: int = 1, budget: int | None = None):
    """First decomposition A = N ± E scanning idempotents ascending, sign + before -."""
    from .elements import WncDecomposition

    Es = idempotent_arrays(A.p, A.n, workers, budget)
    plus = batch_nilpotent(A.array[None] - Es, A.p)
    minus = batch_nilpotent(A.array[None] + Es, A.p)
    hits = np.flatnonzero(plus | minus)
    if hits.size == 0:
        return None
    i = hits[0]
    E = MatrixGF.from_array(A.p, Es[i])
    if plus[i]:
        N, sign = A - E, "+"
    else:
        N, sign = A + E, "-"
    return WncDecomposition(A, sign, N, nilpotency_index(N), E)


def matrix_ring_weakly_nil_clean(p: int, n: int, full_scan: bool = False, workers: int = 1,
                                 budget: int | None = None) -> bool:
    """Is every matrix in M_n(GF(p)) weakly nil-clean?

    For p = 3, n >= 2 the matrix diag(1,-1) ⊕ 0 is tested alone unless
    ``full_scan`` is set; one failing matrix settles the answer.
    """
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"p must be one of {SUPPORTED_PRIMES}")
    if p == 3 and n >= 2 and not full_scan:
        return weakly_nil_clean_check(witness_matrix(p, n), workers, budget) is not None
    _check_budget(p, n, budget)
    Es = idempotent_arrays(p, n, workers, budget)
    total = p ** (n * n)
    for start in range(0, total, _LOW_CHUNK):
        idx = np.arange(start, min(total, start + _LOW_CHUNK), dtype=np.int64)
        A = indices_to_arrays(p, n, idx)
        covered = np.zeros(len(A), dtype=bool)
        for E in Es:
            rest = ~covered
            if not rest.any():
                break
            sub = A[rest]
            good = batch_nilpotent(sub - E, p) | batch_nilpotent(sub + E, p)
            covered[np.flatnonzero(rest)[good]] = True
        if not covered.all():
            return False
    return True


def nonil_pattern_candidates() -> np.ndarray:
    """All 4×4 matrices over GF(3) with rows 3,4 starting (1,0) and (0,1), other 12 entries free."""
    free = [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)]
    digits = _digit_table(3, 12).astype(np.int64)
    N = np.zeros((len(digits), 4, 4), dtype=np.int64)
    for pos, (i, j) in enumerate(free):
        N[:, i, j] = digits[:, pos]
    N[:, 2, 0] = 1
    N[:, 3, 1] = 1
    return N


def nonil_pattern_witnesses() -> np.ndarray:
    """Pattern matrices N that are nilpotent with diag(1,-1,0,0) - N idempotent."""
    N = nonil_pattern_candidates()
    A = witness_matrix(3, 4).array
    ok = batch_idempotent((A[None] - N) % 3, 3)
    ok[ok] = batch_nilpotent(N[ok], 3)
    return N[ok]


def lemma_nonil_pattern_check() -> bool:
    """True iff no matrix of the fixed 4×4 pattern is a nilpotent part of diag(1,-1,0,0)."""
    return len(nonil_pattern_witnesses()) == 0


def trace_rank_violations(p: int, n: int) -> list:
    """Idempotents E with trace(E) != rank(E)·1, over the full enumeration."""
    bad = []
    for E in enumerate_idempotents(p, n):
        if trace(E) != rank(E) % p:
            bad.append(E)
    return bad
