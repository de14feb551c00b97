"""Naive reference implementations used to derive and cross-check expected values.

Everything here works element by element through ``R.add`` / ``R.mul`` on
Python ints, with no masks, spans or caching from the package itself.
"""

from __future__ import annotations

from itertools import product


def mul(R, a, b):
    return int(R.mul(a, b))


def add(R, a, b):
    return int(R.add(a, b))


def sub(R, a, b):
    return int(R.sub(a, b))


def naive_nilpotents(R):
    out = set()
    for a in range(R.order):
        p = a
        for _ in range(R.order + 1):
            if p == R.zero:
                out.add(a)
                break
            p = mul(R, p, a)
    return out


def naive_idempotents(R):
    return sorted(a for a in range(R.order) if mul(R, a, a) == a)


def naive_units(R):
    return sorted(a for a in range(R.order) if any(mul(R, a, b) == R.one == mul(R, b, a) for b in range(R.order)))


def naive_wnc_set(R, a):
    """All (sign, b, e) with e idempotent, b nilpotent and a = b + e or a = b - e; e = 0 only as '+'."""
    nil = naive_nilpotents(R)
    out = set()
    for e in naive_idempotents(R):
        for b in nil:
            if add(R, b, e) == a:
                out.add(("+", b, e))
            if e != R.zero and sub(R, b, e) == a:
                out.add(("-", b, e))
    return out


def naive_ideal(R, gens):
    """Closure under addition and two-sided multiplication by every element."""
    members = {R.zero}
    frontier = set(int(g) for g in gens)
    while frontier:
        members |= frontier
        new = set()
        for x in frontier:
            for r in range(R.order):
                for y in (mul(R, r, x), mul(R, x, r)):
                    if y not in members:
                        new.add(y)
            for m in list(members):
                y = add(R, x, m)
                if y not in members:
                    new.add(y)
        frontier = new
    return sorted(members)


def naive_jacobson(R):
    """x with 1 - r x a unit for all r."""
    units = set(naive_units(R))
    return sorted(x for x in range(R.order) if all(sub(R, R.one, mul(R, r, x)) in units for r in range(R.order)))


def naive_center(R):
    return sorted(a for a in range(R.order) if all(mul(R, a, b) == mul(R, b, a) for b in range(R.order)))


def naive_ring_wnc(R):
    return all(naive_wnc_set(R, a) for a in range(R.order))


def gl_order(q, n):
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def idempotent_count_formula(q, n):
    """Idempotents of M_n(F_q): one GL-orbit per rank k, stabilizer GL_k × GL_{n-k}."""
    return sum(gl_order(q, n) // (gl_order(q, k) * gl_order(q, n - k)) for k in range(n + 1))


def naive_matrix_idempotents(p, n):
    """Brute force over all p^(n*n) matrices with plain Python lists."""
    out = []
    for flat in product(range(p), repeat=n * n):
        A = [flat[i * n:(i + 1) * n] for i in range(n)]
        sq = [[sum(A[i][k] * A[k][j] for k in range(n)) % p for j in range(n)] for i in range(n)]
        if all(sq[i][j] == A[i][j] for i in range(n) for j in range(n)):
            out.append(A)
    return out


def naive_rank(rows, p):
    M = [list(r) for r in rows]
    n, m = len(M), len(M[0])
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if M[i][c] % p), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], p - 2, p)
        M[r] = [x * inv % p for x in M[r]]
        for i in range(n):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(x - f * y) % p for x, y in zip(M[i], M[r])]
        r += 1
    return r


def zn_wnc_formula(n):
    for p in (2, 3):
        while n % p == 0:
            n //= p
    return n == 1
