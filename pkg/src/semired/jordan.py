"""Jordan-Chevalley decomposition inside g and the cocharacter degeneration X -> X_s."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraModel, borel_indices
from .matrix import Matrix
from .polynomial import min_poly, poly_at_matrix, squarefree_part
from .positivity import Cocharacter, pairing

__all__ = ["JordanPair", "jordan_chevalley", "semisimple_part_matrix", "cocharacter_limit", "is_semisimple_matrix"]


@dataclass(frozen=True)
class JordanPair:
    semisimple_part: list
    nilpotent_part: list


def semisimple_part_matrix(M: Matrix) -> Matrix:
    """Semisimple part of M by Newton iteration on the squarefree part of its minimal polynomial.

    With g squarefree, S <- S - g(S) g'(S)^-1 converges quadratically to the
    unique root of g congruent to M modulo the nilpotent ideal; g(S) = 0
    terminates it.  Valid over Q and over F_p.
    """
    g = squarefree_part(min_poly(M))
    dg = g.derivative()
    S = M
    # multiplicity <= n, and each step doubles the order of vanishing
    for _ in range(M.rows.bit_length() + 2):
        gS = poly_at_matrix(g, S)
        if gS.is_zero():
            return S
        S = S - gS @ poly_at_matrix(dg, S).inverse()
    if not poly_at_matrix(g, S).is_zero():
        raise RuntimeError("Newton iteration for the semisimple part did not converge")
    return S


def is_semisimple_matrix(M: Matrix) -> bool:
    mp = min_poly(M)
    return squarefree_part(mp) == mp.monic()


def jordan_chevalley(model: AlgebraModel, X: Sequence) -> JordanPair:
    """X = X_s + X_n computed in the faithful representation and pulled back to g."""
    M = model.to_matrix(list(X))
    S = semisimple_part_matrix(M)
    try:
        xs = model.from_matrix(S)
    except ValueError:
        raise RuntimeError("semisimple part left the algebra; the representation is not algebraic") from None
    xn = [a - b for a, b in zip(X, xs)]
    return JordanPair(xs, xn)


def cocharacter_limit(model: AlgebraModel, chi: Cocharacter | Sequence[int], X: Sequence) -> list:
    """lim_{a -> 0} Ad(chi(a)) X for X in the standard Borel subalgebra.

    Each weight component is scaled by a^<gamma, chi>; with all those
    pairings positive only the torus component survives.
    """
    coords = chi.coords if isinstance(chi, Cocharacter) else tuple(chi)
    if len(coords) != model.rank:
        raise ValueError(f"cocharacter has length {len(coords)}, expected rank {model.rank}")
    allowed = borel_indices(model)
    tset = set(model.torus_indices)
    out = model.zero()
    for i, a in enumerate(X):
        if a == 0:
            continue
        if i not in allowed:
            raise ValueError(f"X is not in the standard Borel subalgebra (coordinate {model.basis[i]})")
        if i in tset:
            out[i] = a
        elif pairing(model.weights[i], coords) <= 0:
            raise ValueError(f"cocharacter pairs non-positively with the weight of {model.basis[i]}")
    return out
