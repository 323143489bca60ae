"""Positivity of a weight system: find an integer cocharacter chi with <a, chi> >= 1.

The strict system <a, chi> > 0 has a rational solution iff the closed
system A chi >= 1 does (scale), and then an integer one (clear denominators).
If there is none, Gordan's alternative gives y >= 0, y != 0 with y^T A = 0;
the phase-one simplex hands us exactly such a y as its optimal dual.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Sequence, Union

from gmpy2 import mpq

__all__ = [
    "Cocharacter",
    "InfeasibilityCertificate",
    "find_positive_cocharacter",
    "verify_certificate",
    "pairing",
    "dedupe_weights",
]

Weight = Sequence[int]


@dataclass(frozen=True)
class Cocharacter:
    coords: tuple[int, ...]

    def pair(self, alpha: Weight) -> int:
        return pairing(alpha, self.coords)

    def to_json(self) -> dict:
        return {"status": "feasible", "cocharacter": list(self.coords)}


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """Non-negative coefficients c (indexed like the input weights) with sum c_a a = 0."""

    coefficients: tuple[int, ...]

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coefficients) if c]

    def to_json(self) -> dict:
        return {
            "status": "infeasible",
            "certificate": {str(i): str(c) for i, c in enumerate(self.coefficients) if c},
        }


Answer = Union[Cocharacter, InfeasibilityCertificate]


def pairing(alpha: Weight, chi: Sequence[int]) -> int:
    return sum(a * c for a, c in zip(alpha, chi))


def _rank_of(weights: Sequence[Weight], rank: int | None) -> int:
    lengths = {len(w) for w in weights}
    if len(lengths) > 1:
        raise ValueError(f"weights have mixed lengths {sorted(lengths)}")
    if lengths:
        r = lengths.pop()
        if rank is not None and rank != r:
            raise ValueError(f"weights have length {r}, but rank {rank} was given")
        return r
    return rank or 0


def dedupe_weights(weights: Sequence[Weight]) -> tuple[list[tuple[int, ...]], list[int]]:
    """Distinct weights in first-seen order and, for each, its first input index."""
    seen: dict[tuple[int, ...], int] = {}
    for i, w in enumerate(weights):
        seen.setdefault(tuple(int(x) for x in w), i)
    return list(seen), list(seen.values())


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _primitive(values: Sequence) -> list[int]:
    """Scale rationals to coprime integers (same direction)."""
    den = reduce(_lcm, (int(mpq(v).denominator) for v in values), 1)
    ints = [int(mpq(v) * den) for v in values]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    return [x // g for x in ints] if g else ints


def _phase_one(A: list[list[int]]) -> tuple[bool, list]:
    """Minimise the artificial sum for [A, -A, -I, I] z = 1, z >= 0.

    Returns (True, chi) if A chi >= 1 is feasible, else (False, y) with y the
    optimal dual: y >= 0, y != 0, y^T A = 0.
    """
    m, r = len(A), len(A[0])
    ncols = 2 * r + 2 * m
    art0 = 2 * r + m
    zero, one = mpq(0), mpq(1)
    T = []
    for i, a in enumerate(A):
        row = [mpq(x) for x in a] + [mpq(-x) for x in a] + [zero] * (2 * m) + [one]
        row[2 * r + i] = mpq(-1)
        row[art0 + i] = one
        T.append(row)
    basis = [art0 + i for i in range(m)]
    # reduced costs c_j - c_B B^-1 A_j, last entry = -objective
    z = [zero] * (ncols + 1)
    for j in range(art0, ncols):
        z[j] = one
    for row in T:
        z = [zj - x for zj, x in zip(z, row)]

    while True:
        enter = next((j for j in range(ncols) if z[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # cannot happen: phase one is bounded below by 0
            raise RuntimeError("phase-one simplex reported unbounded")
        i = best[1]
        piv = T[i][enter]
        T[i] = [x / piv for x in T[i]]
        prow = T[i]
        for k in range(m):
            if k != i:
                f = T[k][enter]
                if f:
                    T[k] = [x - f * y for x, y in zip(T[k], prow)]
        f = z[enter]
        z = [x - f * y for x, y in zip(z, prow)]
        basis[i] = enter

    if z[-1] == 0:
        vals = [zero] * ncols
        for i, b in enumerate(basis):
            vals[b] = T[i][-1]
        return True, [vals[k] - vals[r + k] for k in range(r)]
    # dual of artificial i: its cost 1 minus its reduced cost
    return False, [one - z[art0 + i] for i in range(m)]


def find_positive_cocharacter(weights: Sequence[Weight], rank: int | None = None) -> Answer:
    """Integer chi with <a, chi> >= 1 for all listed a, or a Gordan certificate."""
    r = _rank_of(weights, rank)
    if not weights:
        return Cocharacter((0,) * r)
    distinct, first = dedupe_weights(weights)
    for w, i in zip(distinct, first):
        if not any(w):
            coeffs = [0] * len(weights)
            coeffs[i] = 1
            return InfeasibilityCertificate(tuple(coeffs))
    feasible, sol = _phase_one([list(w) for w in distinct])
    if feasible:
        return Cocharacter(tuple(_primitive(sol)))
    y = _primitive(sol)
    coeffs = [0] * len(weights)
    for c, i in zip(y, first):
        coeffs[i] = c
    return InfeasibilityCertificate(tuple(coeffs))


def verify_certificate(weights: Sequence[Weight], answer: Answer) -> bool:
    if isinstance(answer, Cocharacter):
        if weights and any(len(w) != len(answer.coords) for w in weights):
            return False
        return all(pairing(w, answer.coords) >= 1 for w in weights)
    if isinstance(answer, InfeasibilityCertificate):
        c = answer.coefficients
        if len(c) != len(weights) or not weights:
            return False
        if any(x < 0 for x in c) or not any(c):
            return False
        r = len(weights[0])
        return all(sum(ci * w[k] for ci, w in zip(c, weights)) == 0 for k in range(r))
    return False
