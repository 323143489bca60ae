"""Steinberg map, nilpotent cone, fibers and Borel counting over finite fields."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import Sequence

from gmpy2 import mpq

from .algebra import AlgebraModel, GroupGenerator, adjoint_action, build_enhanced_gl, random_invertible
from .fields import GF, QQ, Field
from .invariants import invariant_family
from .jordan import jordan_chevalley
from .matrix import Matrix, kernel_basis, solve_linear_system
from .polynomial import MultiPoly, char_poly, poly_divmod

__all__ = [
    "SteinbergValue",
    "steinberg_map",
    "invariant_family",
    "is_nilpotent_element",
    "nilcone_membership",
    "tangent_split_check",
    "steinberg_fiber_sample",
    "ConjugacyResult",
    "semisimple_conjugacy_check",
    "rational_roots",
    "BorelRecord",
    "BorelCensus",
    "borel_census",
    "enumerate_flags",
    "flag_count",
]


@dataclass(frozen=True)
class SteinbergValue:
    values: tuple

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def to_json(self) -> list[str]:
        return [str(v) for v in self.values]


def steinberg_map(model: AlgebraModel, X: Sequence) -> SteinbergValue:
    return SteinbergValue(invariant_family(model).evaluate(list(X)))


def is_nilpotent_element(model: AlgebraModel, X: Sequence) -> bool:
    return model.to_matrix(list(X)).is_nilpotent()


def nilcone_membership(model: AlgebraModel, X: Sequence) -> bool:
    """X lies in the common zero set of F_1, ..., F_n."""
    return steinberg_map(model, X).is_zero()


def tangent_split_check(model: AlgebraModel, X: Sequence) -> bool:
    """At a smooth point X of N: dF has full rank and u lies in its kernel.

    Then T_X(N) = ker dF splits as (tangent space of N0 at pr(X)) + u.
    Only meaningful where N is known to be smooth, e.g. regular nilpotents.
    """
    if not nilcone_membership(model, X):
        raise ValueError("X is not in the nilpotent cone")
    fam = invariant_family(model)
    point = list(X)
    J = Matrix(model.field, [[F.derivative(j).evaluate(point) for j in range(model.dim)] for F in fam.generators],
               _trusted=True)
    if J.rank() != fam.rank:
        return False
    return all(J.data[i][j] == 0 for i in range(J.rows) for j in model.u_indices)


# ---------------------------------------------------------------------------
# fibers
# ---------------------------------------------------------------------------


def _psi_block(F: Field, psis: Sequence) -> Matrix:
    """A k x k matrix x with det(t + x) = t^k + sum psi_i t^i (minus a companion matrix)."""
    k = len(psis)
    C = Matrix.zeros(F, k)
    for i in range(1, k):
        C.data[i][i - 1] = F.one
    for i in range(k):
        C.data[i][k - 1] = -F(psis[i])
    return -C


def steinberg_fiber_sample(model: AlgebraModel, a: SteinbergValue | Sequence, count: int, rng) -> list[list]:
    """``count`` elements X with chi(X) = a: conjugated companion blocks plus a free u-part."""
    values = tuple(a.values if isinstance(a, SteinbergValue) else a)
    if len(values) != model.rank:
        raise ValueError(f"target has {len(values)} values, expected {model.rank}")
    if not model.levi:
        raise ValueError("fiber sampling needs a gl-type reductive part")
    F = model.field
    values = tuple(F(v) for v in values)
    out = []
    for _ in range(count):
        X = model.zero()
        pos = 0
        for block in model.levi:
            k = len(block)
            x = _psi_block(F, values[pos:pos + k])
            pos += k
            g = random_invertible(F, k, rng)
            x = g @ x @ g.inverse()
            for i in range(k):
                for j in range(k):
                    X[block[i][j]] = x.data[i][j]
        for i in model.u_indices:
            X[i] = F.random(rng)
        if steinberg_map(model, X).values != values:
            raise RuntimeError("fiber sample does not hit the requested Steinberg value")
        out.append(X)
    return out


# ---------------------------------------------------------------------------
# semisimple conjugacy in enhanced gl(n) over Q
# ---------------------------------------------------------------------------


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(f: MultiPoly) -> list:
    """Rational roots of a univariate polynomial over Q, with multiplicity, sorted."""
    if f.field != QQ:
        raise ValueError("rational roots need a polynomial over Q")
    coeffs = f.coeffs()
    den = 1
    for c in coeffs:
        d = int(c.denominator)
        den = den * d // gcd(den, d)
    ints = [int(c * den) for c in coeffs]
    roots = []
    while ints and ints[0] == 0 and len(ints) > 1:
        roots.append(mpq(0))
        ints = ints[1:]
    g = f.from_coeffs(QQ, ints)
    while g.degree() > 0:
        a0, an = int(g.coeffs()[0]), int(g.coeffs()[-1])
        found = None
        for p in _divisors(a0):
            for q in _divisors(an):
                for s in (1, -1):
                    r = mpq(s * p, q)
                    if g.evaluate([r]) == 0:
                        found = r
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        lin = MultiPoly.from_coeffs(QQ, [-found, 1])
        g, _ = poly_divmod(g, lin)
        gc = g.coeffs()
        gd = 1
        for c in gc:
            gd = gd * int(c.denominator) // gcd(gd, int(c.denominator))
        g = MultiPoly.from_coeffs(QQ, [c * gd for c in gc])
    return sorted(roots)


@dataclass
class ConjugacyResult:
    conjugate: bool
    witness: list[GroupGenerator] = dc_field(default_factory=list)
    reason: str = ""


def _to_diagonal_chain(model: AlgebraModel, X: Sequence) -> tuple[list[GroupGenerator], list]:
    """Generators taking semisimple X = (x, v) to (diag(sorted eigenvalues), 0)."""
    n = model.params["n"]
    F = model.field
    x = Matrix(F, [[X[i * n + j] for j in range(n)] for i in range(n)], _trusted=True)
    v = [X[n * n + k] for k in range(n)]
    roots = rational_roots(char_poly(x))
    if len(roots) != n:
        raise ValueError("eigenvalues are not all rational; conjugacy witnesses need a rational spectrum")
    cols, eig = [], []
    for lam in sorted(set(roots)):
        ker = kernel_basis(x - Matrix.identity(F, n).scale(lam))
        cols.extend(ker)
        eig.extend([lam] * len(ker))
    P = Matrix.from_columns(F, cols)
    chain = []
    if not P.is_identity():
        chain.append(GroupGenerator("reductive-elementary", P.inverse()))
    vp = P.inverse().apply(v)
    w = []
    for lam, c in zip(eig, vp):
        if lam == 0:
            if c != 0:
                raise ValueError("u-part is not in the image of x; element is not semisimple")
            w.append(F.zero)
        else:
            w.append(c / lam)
    if any(c != 0 for c in w):
        chain.append(GroupGenerator("unipotent-translation", tuple(w)))
    return chain, eig


def _inverse_generator(g: GroupGenerator) -> GroupGenerator:
    if g.kind == "reductive-elementary":
        return GroupGenerator(g.kind, g.payload.inverse())
    if g.kind == "unipotent-translation":
        return GroupGenerator(g.kind, tuple(-c for c in g.payload))
    if g.kind == "torus-element":
        return GroupGenerator(g.kind, tuple(1 / c for c in g.payload))
    raise ValueError(f"no inverse recipe for {g.kind}")


def semisimple_conjugacy_check(model: AlgebraModel, X: Sequence, Y: Sequence) -> ConjugacyResult:
    """Decide whether semisimple X, Y are G-conjugate; on success return a replayed witness."""
    if model.family != "enhanced-gl" or model.field != QQ:
        raise ValueError("conjugacy witnesses are implemented for enhanced-gl over Q")
    X, Y = list(X), list(Y)
    for name, Z in (("X", X), ("Y", Y)):
        if any(c != 0 for c in jordan_chevalley(model, Z).nilpotent_part):
            raise ValueError(f"{name} is not semisimple")
    if steinberg_map(model, X) != steinberg_map(model, Y):
        return ConjugacyResult(False, [], "Steinberg values differ")
    cx, ex = _to_diagonal_chain(model, X)
    cy, ey = _to_diagonal_chain(model, Y)
    if ex != ey:  # cannot happen once chi agrees and spectra are rational
        raise RuntimeError("equal Steinberg values but different spectra")
    witness = cx + [_inverse_generator(g) for g in reversed(cy)]
    Z = X
    for g in witness:
        Z = adjoint_action(model, g, Z)
    if Z != Y:
        raise RuntimeError("conjugacy witness failed on replay")
    return ConjugacyResult(True, witness, "witness replayed")


# ---------------------------------------------------------------------------
# flags and Borel subalgebras over F_q
# ---------------------------------------------------------------------------


def flag_count(n: int, q: int) -> int:
    out = 1
    for k in range(1, n + 1):
        out *= sum(q ** i for i in range(k))
    return out


def enumerate_flags(n: int, q: int) -> list[Matrix]:
    """One canonical basis matrix per complete flag of F_q^n (first i columns span V_i).

    Column j has a 1 in its pivot row w(j), zeros below it and in earlier
    pivot rows, and free entries in the remaining rows above.
    """
    F = GF(q)
    elems = list(F.elements())
    flags = []
    for w in itertools.permutations(range(n)):
        free = []
        for j in range(n):
            earlier = set(w[:j])
            free.extend((i, j) for i in range(w[j]) if i not in earlier)
        for vals in itertools.product(elems, repeat=len(free)):
            M = Matrix.zeros(F, n)
            for j in range(n):
                M.data[w[j]][j] = F.one
            for (i, j), x in zip(free, vals):
                M.data[i][j] = x
            flags.append(M)
    return flags


def stabilizes_flag(g: Matrix, ginv: Matrix, x: Matrix) -> bool:
    return (ginv @ x @ g).is_upper_triangular()


@dataclass(frozen=True)
class BorelRecord:
    flag: Matrix
    contains_element: bool


@dataclass
class BorelCensus:
    n: int
    q: int
    count: int
    total: int
    lifted_count: int
    correspondence_checked: int
    correspondence_failures: int
    records: list[BorelRecord]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "count": self.count,
            "total": self.total,
            "lifted_count": self.lifted_count,
            "correspondence_checked": self.correspondence_checked,
            "correspondence_failures": self.correspondence_failures,
        }


def _lifted_borel_basis(model: AlgebraModel, g: Matrix, ginv: Matrix) -> Matrix:
    """Coordinate columns spanning b0 + V inside enhanced gl(n), with b0 = g b_std g^-1."""
    n = model.params["n"]
    F = model.field
    cols = []
    for i in range(n):
        for j in range(i, n):
            Ad = g @ Matrix.unit(F, n, i, j) @ ginv
            cols.append(Ad.flatten() + [F.zero] * n)
    for k in range(n):
        v = [F.zero] * (n * n + n)
        v[n * n + k] = F.one
        cols.append(v)
    return Matrix.from_columns(F, cols)


def borel_census(n: int, q: int, x: Matrix, rng=None, samples: int = 100) -> BorelCensus:
    """Count complete flags stabilised by nilpotent x, in gl(n) and in the lifted b0 + V picture.

    With ``rng`` given, also checks X in b0 + V iff X_0 in b0 for ``samples``
    random X per Borel subalgebra.
    """
    F = GF(q)
    if x.field != F or x.shape != (n, n):
        raise ValueError(f"x must be an {n}x{n} matrix over F_{q}")
    if not x.is_nilpotent():
        raise ValueError("x is not nilpotent")
    model = build_enhanced_gl(n, F)
    records = []
    count = lifted = checked = failures = 0
    for g in enumerate_flags(n, q):
        ginv = g.inverse()
        inside = stabilizes_flag(g, ginv, x)
        records.append(BorelRecord(g, inside))
        count += inside
        basis = _lifted_borel_basis(model, g, ginv)
        lift = x.flatten() + ([F.random(rng) for _ in range(n)] if rng else [F.zero] * n)
        lifted += solve_linear_system(basis, lift).consistent
        if rng is None:
            continue
        for s in range(samples):
            if s % 2:
                coeffs = [F.random(rng) for _ in range(basis.cols)]
                X = basis.apply(coeffs)
                # leave b0 on the g0-part half the time
                if rng.randrange(2):
                    X[rng.randrange(n * n)] += F.one
            else:
                X = [F.random(rng) for _ in range(n * n + n)]
            X0 = Matrix(F, [X[i * n:(i + 1) * n] for i in range(n)], _trusted=True)
            in_lift = solve_linear_system(basis, X).consistent
            in_b0 = stabilizes_flag(g, ginv, X0)
            checked += 1
            failures += in_lift != in_b0
    return BorelCensus(n, q, count, len(records), lifted, checked, failures, records)
