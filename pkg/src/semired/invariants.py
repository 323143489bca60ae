"""Invariant polynomials: reductive generators, their pullbacks along pr, restriction to the torus.

Polynomials on g are :class:`MultiPoly` objects in ``model.dim`` variables,
variable k being the coordinate of basis vector k.  The reductive generators
are the coefficients psi_i of det(t + x) on each gl-block of the Levi factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .algebra import AlgebraModel
from .fields import Field
from .matrix import Matrix, berkowitz, kernel_basis
from .polynomial import MultiPoly, monomials_of_degree

__all__ = [
    "InvariantFamily",
    "reductive_invariants",
    "pullback_invariants",
    "invariant_family",
    "restrict_to_torus",
    "weyl_invariance_check",
    "jacobian_independence_check",
    "jacobian_rank",
    "InvariantSpace",
    "invariant_space_dimension",
    "elementary_symmetric",
    "RestrictionReport",
    "restriction_check",
    "MODULE_KINDS",
]

MODULE_KINDS = ("functions-on-g", "functions-on-g-dual")
INVARIANT_DIM_CAP = 8
INVARIANT_DEGREE_CAP = 4


@dataclass(frozen=True)
class InvariantFamily:
    generators: tuple[MultiPoly, ...]  # F_i on g
    reductive_generators: tuple[MultiPoly, ...]  # f_i on g0
    rank: int

    def evaluate(self, X: Sequence) -> tuple:
        return tuple(F.evaluate(X) for F in self.generators)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(F.total_degree() for F in self.generators)


def _block_psis(field: Field, nvars: int, block: Sequence[Sequence[int]]) -> list[MultiPoly]:
    k = len(block)
    zero = MultiPoly.zero(field, nvars)
    one = MultiPoly.one(field, nvars)
    negx = [[-MultiPoly.variable(field, nvars, block[i][j]) for j in range(k)] for i in range(k)]
    # det(tI - (-x)) = det(t + x) = sum_j c_j t^(k-j)
    c = berkowitz(negx, zero, one)
    return [c[k - i] for i in range(k)]


def reductive_invariants(model: AlgebraModel) -> list[MultiPoly]:
    """psi_0, ..., psi_{k-1} of each Levi block, as polynomials in the g0 coordinates."""
    if not model.levi:
        raise ValueError(f"no gl-type reductive part recorded for family {model.family!r}")
    if any(i >= model.g0_dim for block in model.levi for row in block for i in row):
        raise ValueError("Levi block indices leave g0")
    out: list[MultiPoly] = []
    for block in model.levi:
        out.extend(_block_psis(model.field, model.g0_dim, block))
    return out


def pullback_invariants(model: AlgebraModel) -> InvariantFamily:
    """F_i = f_i o pr.  Since g0 coordinates come first, pr* is just a change of ambient ring."""
    fs = reductive_invariants(model)
    Fs = tuple(f.extend(model.dim) for f in fs)
    return InvariantFamily(Fs, tuple(fs), len(fs))


@lru_cache(maxsize=64)
def invariant_family(model: AlgebraModel) -> InvariantFamily:
    """Cached :func:`pullback_invariants` (models hash by identity)."""
    return pullback_invariants(model)


def restrict_to_torus(model: AlgebraModel, F: MultiPoly) -> MultiPoly:
    """F with every non-torus coordinate set to 0, in the r torus variables."""
    if F.nvars == model.dim:
        return F.restrict(model.torus_indices)
    if F.nvars == model.g0_dim:
        return F.restrict(model.torus_indices)
    raise ValueError(f"polynomial has {F.nvars} variables; expected {model.dim} or {model.g0_dim}")


def elementary_symmetric(field: Field, nvars: int, k: int, variables: Sequence[int] | None = None) -> MultiPoly:
    variables = list(range(nvars)) if variables is None else list(variables)
    out = MultiPoly.zero(field, nvars)
    for combo in combinations(variables, k):
        e = [0] * nvars
        for v in combo:
            e[v] = 1
        out = out + MultiPoly.monomial(field, e)
    return out


def weyl_invariance_check(p: MultiPoly, weyl: Sequence[Sequence[int]], rank: int | None = None) -> bool:
    """p o s = p for every adjacent transposition s inside each block of ``weyl``."""
    if rank is not None and p.nvars != rank:
        raise ValueError(f"polynomial has {p.nvars} variables, Weyl group acts on {rank}")
    if any(v >= p.nvars for block in weyl for v in block):
        raise ValueError("Weyl group acts on more coordinates than the polynomial has")
    for block in weyl:
        for a, b in zip(block, block[1:]):
            perm = list(range(p.nvars))
            perm[a], perm[b] = b, a
            if p.permute_variables(perm) != p:
                return False
    return True


def jacobian_rank(polys: Sequence[MultiPoly], point: Sequence) -> int:
    if not polys:
        return 0
    F = polys[0].field
    n = polys[0].nvars
    J = Matrix(F, [[p.derivative(j).evaluate(point) for j in range(n)] for p in polys], _trusted=True)
    return J.rank()


def jacobian_independence_check(polys: Sequence[MultiPoly], rng, attempts: int = 5) -> bool:
    """Full-rank Jacobian at one of ``attempts`` random points.

    In characteristic 0 this certifies algebraic independence.  Over F_p a
    full rank still certifies it, but failure may come from inseparability
    (e.g. x^p), so a False there is only a negative result for the test.
    """
    if not polys:
        return True
    n = polys[0].nvars
    if len(polys) > n:
        return False
    F = polys[0].field
    for _ in range(attempts):
        pt = [F.random(rng) for _ in range(n)]
        if jacobian_rank(polys, pt) == len(polys):
            return True
    return False


@dataclass(frozen=True)
class RestrictionReport:
    elementary_symmetric: bool  # restricted F_i = blockwise e_k
    compatible: bool  # restricting F_i or f_i gives the same polynomial
    weyl_invariant: bool
    independent: bool

    @property
    def passed(self) -> bool:
        return self.elementary_symmetric and self.compatible and self.weyl_invariant and self.independent


def restriction_check(model: AlgebraModel, rng, attempts: int = 5) -> RestrictionReport:
    """Evidence that F[g]^G -> F[t]^W is onto: the restricted generators are the
    elementary symmetric polynomials of each block, W-invariant and independent.

    Refused in characteristic 2, where the restriction theorem needs extra
    hypotheses on the roots that none of the families here satisfy.
    """
    if model.field.char == 2:
        raise ValueError("restriction check refused in characteristic 2")
    fam = invariant_family(model)
    restricted = [restrict_to_torus(model, F) for F in fam.generators]
    expected = []
    for block in model.weyl_blocks:
        k = len(block)
        expected.extend(elementary_symmetric(model.field, model.rank, k - i, block) for i in range(k))
    return RestrictionReport(
        elementary_symmetric=restricted == expected,
        compatible=[restrict_to_torus(model, f) for f in fam.reductive_generators] == restricted,
        weyl_invariant=all(weyl_invariance_check(p, model.weyl_blocks, model.rank) for p in restricted),
        independent=jacobian_independence_check(restricted, rng, attempts),
    )


@dataclass(frozen=True)
class InvariantSpace:
    kind: str
    degree: int
    dimension: int
    basis: tuple[MultiPoly, ...]


def _derivation_image(poly_terms: dict, action: list[list[tuple[int, int, object]]], field: Field, nvars: int) -> dict:
    """Apply sum over (src, dst, c) of c * z_dst * d/dz_src to a polynomial given as a term dict."""
    out: dict = {}
    for e, coef in poly_terms.items():
        for src, dst, c in action:
            k = e[src]
            if not k:
                continue
            e2 = list(e)
            e2[src] -= 1
            e2[dst] += 1
            e2 = tuple(e2)
            val = out.get(e2, field.zero) + coef * c * k
            out[e2] = val
    return {e: c for e, c in out.items() if c != 0}


def invariant_space_dimension(model: AlgebraModel, kind: str, degree: int) -> InvariantSpace:
    """Degree-d invariants of g acting on polynomial functions on g, or on S(g).

    ``functions-on-g``: f(y) with sum_{j,k} c_ij^k y_j df/dy_k = 0 for all i.
    ``functions-on-g-dual``: elements of S(g) killed by every ad(e_i),
    ad(e_i) z_j = sum_k c_ij^k z_k extended as a derivation.
    """
    if kind not in MODULE_KINDS:
        raise ValueError(f"module kind must be one of {MODULE_KINDS}")
    if model.field.char != 0:
        raise ValueError("invariant-space computation assumes characteristic 0; positive characteristic is refused")
    if model.dim > INVARIANT_DIM_CAP:
        raise ValueError(f"dim g = {model.dim} exceeds the cap {INVARIANT_DIM_CAP}")
    if degree < 0 or degree > INVARIANT_DEGREE_CAP:
        raise ValueError(f"degree must lie in 0..{INVARIANT_DEGREE_CAP}")
    F = model.field
    n = model.dim
    monos = list(monomials_of_degree(n, degree))
    if degree == 0:
        return InvariantSpace(kind, 0, 1, (MultiPoly.one(F, n),))
    actions = []
    for i in range(n):
        act = []
        for j in range(n):
            for k, c in model.structure.get((i, j), ()):
                # functions: c y_j d/dy_k ; symmetric algebra: c z_k d/dz_j
                act.append((k, j, c) if kind == "functions-on-g" else (j, k, c))
        actions.append(act)

    # successively cut the candidate space down by each operator's kernel
    basis = [{e: F.one} for e in monos]
    for act in actions:
        if not basis or not act:
            continue
        images = [_derivation_image(b, act, F, n) for b in basis]
        rows_keys = sorted({e for img in images for e in img})
        if not rows_keys:
            continue
        M = Matrix(F, [[img.get(e, F.zero) for img in images] for e in rows_keys], _trusted=True)
        ker = kernel_basis(M)
        new = []
        for vec in ker:
            acc: dict = {}
            for coef, b in zip(vec, basis):
                if coef != 0:
                    for e, c in b.items():
                        acc[e] = acc.get(e, F.zero) + coef * c
            new.append({e: c for e, c in acc.items() if c != 0})
        basis = new
    polys = tuple(MultiPoly(F, n, b) for b in basis)
    return InvariantSpace(kind, degree, len(polys), polys)
