"""Independent reference computations used to cross-check the production routes.

Each function here reaches its answer by a different algorithm than the
code it checks: Fourier-Motzkin elimination instead of simplex, Frobenius
powers instead of Newton iteration, rank conditions instead of elimination,
brute-force enumeration instead of normal forms.  Slow by design.
"""

from __future__ import annotations

import itertools
from math import gcd, lcm
from typing import Sequence

from .fields import Field, GF
from .matrix import Matrix, solve_linear_system
from .polynomial import MultiPoly, poly_divmod, poly_gcd

__all__ = [
    "fourier_motzkin_feasible",
    "brute_force_cocharacter",
    "frobenius_semisimple_part",
    "leibniz_char_poly",
    "krylov_min_poly",
    "bruhat_rank_oracle",
    "flag_oracle",
    "weighted_monomial_count",
    "enhanced_adjoint_formula",
]


# -- positivity --------------------------------------------------------------


def fourier_motzkin_feasible(weights: Sequence[Sequence[int]]) -> bool:
    """Is there chi with <a, chi> > 0 for every listed a?

    Fourier-Motzkin on the homogeneous strict system.  Rows are primitive
    integer vectors, each carrying the inclusion-minimal sets (bitmasks) of
    input rows it can be derived from.  Chernikov's rule drops derivations
    using more than (eliminated + 1) inputs.  Two opposite rows combine to
    0 > 0, which proves infeasibility.  The last coordinate needs no
    elimination: c x > 0 is solvable iff every remaining c has one sign.
    """
    if not weights:
        return True
    r = len(weights[0])

    def primitive(v):
        g = 0
        for c in v:
            g = gcd(g, c)
        return tuple(c // g for c in v) if g > 1 else tuple(v)

    def record(store, v, hist):
        hs = store.setdefault(v, [])
        for h in hs:
            if h & hist == h:
                return
        hs[:] = [h for h in hs if h & hist != hist] + [hist]

    def has_opposites(store):
        return any(tuple(-c for c in v) in store for v in store)

    rows: dict[tuple, list[int]] = {}
    for i, w in enumerate(weights):
        v = tuple(int(x) for x in w)
        if not any(v):
            return False
        record(rows, primitive(v), 1 << i)
    remaining = set(range(r))
    eliminated = 0
    while len(remaining) > 1:
        if has_opposites(rows):
            return False

        # eliminate the coordinate producing the fewest combinations
        def cost(k):
            p = sum(len(h) for v, h in rows.items() if v[k] > 0)
            n = sum(len(h) for v, h in rows.items() if v[k] < 0)
            return p * n - p - n

        k = min(sorted(remaining), key=cost)
        remaining.discard(k)
        eliminated += 1
        limit = eliminated + 1
        pos = [(v, h) for v, hs in rows.items() if v[k] > 0 for h in hs]
        neg = [(v, h) for v, hs in rows.items() if v[k] < 0 for h in hs]
        new = {v: hs for v, hs in rows.items() if v[k] == 0}
        for vp, hp in pos:
            b = vp[k]
            for vn, hn in neg:
                hist = hp | hn
                if hist.bit_count() > limit:
                    continue
                a = -vn[k]
                record(new, primitive([a * x + b * y for x, y in zip(vp, vn)]), hist)
        rows = new
    if has_opposites(rows):
        return False
    (k,) = remaining
    return len({v[k] > 0 for v in rows}) < 2


def brute_force_cocharacter(weights: Sequence[Sequence[int]], bound: int) -> tuple[int, ...] | None:
    """First integer chi with |chi_i| <= bound and all pairings >= 1, if any."""
    if not weights:
        return ()
    r = len(weights[0])
    for chi in itertools.product(range(-bound, bound + 1), repeat=r):
        if all(sum(a * c for a, c in zip(w, chi)) >= 1 for w in weights):
            return chi
    return None


# -- Jordan decomposition over F_p -------------------------------------------


def frobenius_semisimple_part(M: Matrix) -> Matrix:
    """Semisimple part over F_p as M^(p^e), e a multiple of lcm(1..n) with p^e >= n.

    Every eigenvalue lives in F_(p^d) for some d <= n, so it is fixed by the
    e-th Frobenius power, while the nilpotent part is killed once p^e >= n.
    """
    F = M.field
    if not F.is_finite:
        raise ValueError("Frobenius oracle needs a finite field")
    p, n = F.p, M.rows
    e = lcm(*range(1, n + 1)) if n > 1 else 1
    while p ** e < n:
        e *= 2
    A = [[x.v for x in row] for row in M.data]

    def mul(X, Y):
        cols = list(zip(*Y))
        return [[sum(a * b for a, b in zip(r, c)) % p for c in cols] for r in X]

    def power(X, k):
        R = [[int(i == j) for j in range(n)] for i in range(n)]
        while k:
            if k & 1:
                R = mul(R, X)
            k >>= 1
            if k:
                X = mul(X, X)
        return R

    for _ in range(e):
        A = power(A, p)
    return Matrix(F, A)


# -- characteristic / minimal polynomials ------------------------------------


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def leibniz_char_poly(M: Matrix) -> MultiPoly:
    """det(t I - M) by the permutation expansion."""
    F = M.field
    n = M.rows
    t = MultiPoly.variable(F, 1, 0)
    entries = [[(t if i == j else MultiPoly.zero(F, 1)) - MultiPoly.constant(F, 1, M.data[i][j]) for j in range(n)] for i in range(n)]
    total = MultiPoly.zero(F, 1)
    for perm in itertools.permutations(range(n)):
        term = MultiPoly.constant(F, 1, _perm_sign(perm))
        for i, j in enumerate(perm):
            term = term * entries[i][j]
        total = total + term
    return total


def krylov_min_poly(M: Matrix) -> MultiPoly:
    """lcm over basis vectors e of the least polynomial with p(M) e = 0."""
    F = M.field
    n = M.rows
    result = MultiPoly.one(F, 1)
    for i in range(n):
        vecs = [[F.one if k == i else F.zero for k in range(n)]]
        while True:
            nxt = M.apply(vecs[-1])
            A = Matrix(F, [list(r) for r in zip(*vecs)], _trusted=True)
            sol = solve_linear_system(A, nxt)
            if sol.consistent:
                local = MultiPoly.from_coeffs(F, [-c for c in sol.particular] + [F.one])
                break
            vecs.append(nxt)
        g = poly_gcd(result, local)
        result, _ = poly_divmod(result * local, g)
        result = result.monic()
    return result


# -- Bruhat cells ------------------------------------------------------------


def bruhat_rank_oracle(g: Matrix) -> tuple[int, ...]:
    """Weyl element of g from the ranks of its lower-left submatrices.

    For B+ g B+ the rank of rows >= i, columns <= j is an invariant, equal to
    #{k <= j : w(k) >= i}; differences in j recover w.
    """
    n = g.rows

    def r(i, j):
        if j < 0 or i >= n:
            return 0
        return g.submatrix(range(i, n), range(j + 1)).rank()

    w = []
    for j in range(n):
        w.append(max(i for i in range(n) if r(i, j) - r(i, j - 1) == 1))
    return tuple(w)


# -- flags ---------------------------------------------------------------------


def _span_key(F: Field, cols: list[list]) -> tuple:
    """Canonical (RREF) description of the span of ``cols``."""
    R, piv = Matrix(F, cols, _trusted=True).rref()
    return tuple(tuple(int(x) for x in R.data[k]) for k in range(len(piv)))


def flag_oracle(n: int, q: int, x: Matrix | None = None) -> tuple[int, int]:
    """(#flags stabilised by x, #flags), by canonicalising every invertible matrix."""
    F = GF(q)
    elems = list(F.elements())
    flags = set()
    for entries in itertools.product(elems, repeat=n * n):
        g = Matrix(F, [list(entries[i * n:(i + 1) * n]) for i in range(n)], _trusted=True)
        if g.det() == 0:
            continue
        cols = [g.column(j) for j in range(n)]
        flags.add(tuple(_span_key(F, cols[: i + 1]) for i in range(n - 1)))
    total = len(flags)
    if x is None:
        return total, total
    count = 0
    for flag in flags:
        ok = True
        for sub in flag:
            V = [list(F(c) for c in row) for row in sub]
            XV = [x.apply(v) for v in V]
            if Matrix(F, V + XV, _trusted=True).rank() != len(V):
                ok = False
                break
        count += ok
    return count, total


# -- invariants ----------------------------------------------------------------


def weighted_monomial_count(degrees: Sequence[int], d: int) -> int:
    """Number of monomials prod F_i^k_i of total degree d, deg F_i = degrees[i]."""
    ways = [1] + [0] * d
    for deg in degrees:
        for s in range(deg, d + 1):
            ways[s] += ways[s - deg]
    return ways[d]


# -- adjoint action ------------------------------------------------------------


def enhanced_adjoint_formula(n: int, F: Field, kind: str, payload, X: Sequence) -> list:
    """Ad on enhanced gl(n) by the closed formulas (g x g^-1, g v) and (x, v - x w)."""
    x = Matrix(F, [[X[i * n + j] for j in range(n)] for i in range(n)], _trusted=True)
    v = list(X[n * n:])
    if kind == "reductive-elementary":
        g = payload
        x2, v2 = g @ x @ g.inverse(), g.apply(v)
    elif kind == "torus-element":
        g = Matrix.diagonal(F, payload)
        x2, v2 = g @ x @ g.inverse(), g.apply(v)
    elif kind == "unipotent-translation":
        xw = x.apply([F(c) for c in payload])
        x2, v2 = x, [a - b for a, b in zip(v, xw)]
    else:
        raise ValueError(kind)
    return x2.flatten() + v2
