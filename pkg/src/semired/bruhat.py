"""Bruhat decomposition g = u w b for GL(n) and its semi-reductive extensions.

Conventions: B+ is upper triangular, U+ upper unitriangular, and the Weyl
element w is a permutation of {0..n-1} with w-dot sending e_j to e_w(j).
The U-factor is taken in U_{w^-1} = U+ cap w U- w^-1, which makes the
factorization unique.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import AlgebraModel
from .fields import Field
from .matrix import Matrix

__all__ = [
    "BruhatFactorization",
    "bruhat_factor",
    "bruhat_factor_group_element",
    "bruhat_cell_census",
    "permutation_length",
    "reduced_word",
    "weyl_label",
    "group_order",
    "CENSUS_CAP",
]

CENSUS_CAP = 10 ** 6


def permutation_length(w: Sequence[int]) -> int:
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def reduced_word(w: Sequence[int]) -> list[int]:
    """Indices i (1-based) with w = s_i1 s_i2 ... of minimal length, found greedily by descents."""
    w = list(w)
    word: list[int] = []
    while True:
        i = next((k for k in range(len(w) - 1) if w[k] > w[k + 1]), None)
        if i is None:
            break
        # w = w' s_i with shorter w'
        w[i], w[i + 1] = w[i + 1], w[i]
        word.append(i + 1)
    return list(reversed(word))


def weyl_label(w: Sequence[int]) -> str:
    word = reduced_word(w)
    return "".join(f"s{i}" for i in word) if word else "e"


def word_to_permutation(word: Sequence[int], n: int) -> tuple[int, ...]:
    w = list(range(n))
    for i in word:
        w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


@dataclass(frozen=True)
class BruhatFactorization:
    weyl: tuple[int, ...]
    unipotent_part: Matrix
    weyl_matrix: Matrix
    borel_part: Matrix
    translation: tuple | None = None  # v of an enhanced element, carried by the U-factor

    @property
    def label(self) -> str:
        return weyl_label(self.weyl)

    @property
    def length(self) -> int:
        return permutation_length(self.weyl)

    def recompose(self) -> Matrix:
        return self.unipotent_part @ self.weyl_matrix @ self.borel_part


def bruhat_factor(g: Matrix) -> BruhatFactorization:
    """Factor an invertible matrix as u * w-dot * b."""
    if not g.is_square:
        raise ValueError("Bruhat factorization needs a square matrix")
    F = g.field
    n = g.rows
    A = g.copy_data()
    L = Matrix.identity(F, n).copy_data()  # accumulated row operations, L g = w-dot b
    w = [0] * n
    used = [False] * n
    for j in range(n):
        piv = next((i for i in range(n - 1, -1, -1) if not used[i] and A[i][j] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        used[piv] = True
        w[j] = piv
        inv = F.one / A[piv][j]
        for i in range(piv):
            if not used[i] and A[i][j] != 0:
                f = A[i][j] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[piv])]
                L[i] = [x - f * y for x, y in zip(L[i], L[piv])]
    b = Matrix(F, [A[w[j]] for j in range(n)], _trusted=True)
    u = Matrix(F, L, _trusted=True).inverse()
    return BruhatFactorization(tuple(w), u, Matrix.permutation(F, w), b)


def bruhat_factor_group_element(model: AlgebraModel, G: Matrix) -> BruhatFactorization:
    """Factor a group element given in the model's faithful representation.

    Enhanced elements [[g, v], [0, 1]] factor as (u, v) * w-dot * b, the
    translation riding in the unipotent factor; parabolic elements are plain
    invertible matrices.
    """
    if model.family == "parabolic-gl":
        return bruhat_factor(G)
    if model.family == "enhanced-gl":
        n = model.params["n"]
        F = model.field
        if any(G.data[n][j] != (1 if j == n else 0) for j in range(n + 1)):
            raise ValueError("not an enhanced group element (last row must be (0, ..., 0, 1))")
        g0 = G.submatrix(range(n), range(n))
        v = tuple(G.data[i][n] for i in range(n))
        f = bruhat_factor(g0)
        U = Matrix.identity(F, n + 1)
        for i in range(n):
            for j in range(n):
                U.data[i][j] = f.unipotent_part.data[i][j]
            U.data[i][n] = v[i]
        W = _enhanced(f.weyl_matrix)
        B = _enhanced(f.borel_part)
        return BruhatFactorization(f.weyl, U, W, B, v)
    raise ValueError(f"Bruhat factorization needs a GL-type group, not {model.family!r}")


def _enhanced(M: Matrix) -> Matrix:
    n = M.rows
    F = M.field
    E = Matrix.identity(F, n + 1)
    for i in range(n):
        for j in range(n):
            E.data[i][j] = M.data[i][j]
    return E


def _invertible_matrices(F: Field, n: int) -> Iterator[Matrix]:
    elems = list(F.elements())
    for entries in itertools.product(elems, repeat=n * n):
        M = Matrix(F, [list(entries[i * n:(i + 1) * n]) for i in range(n)], _trusted=True)
        if M.det() != 0:
            yield M


def group_order(model: AlgebraModel) -> int:
    q = model.field.p
    if model.family == "enhanced-gl":
        n = model.params["n"]
        return _gl_order(n, q) * q ** n
    if model.family == "parabolic-gl":
        blocks = model.params["blocks"]
        u = sum(a * b for i, a in enumerate(blocks) for b in blocks[i + 1:])
        out = q ** u
        for b in blocks:
            out *= _gl_order(b, q)
        return out
    raise ValueError(f"no group order for family {model.family!r}")


def _gl_order(n: int, q: int) -> int:
    out = 1
    for k in range(n):
        out *= q ** n - q ** k
    return out


def group_elements(model: AlgebraModel) -> Iterator[Matrix]:
    """Every element of G in the faithful representation (finite field only)."""
    F = model.field
    if model.family == "enhanced-gl":
        n = model.params["n"]
        elems = list(F.elements())
        for g in _invertible_matrices(F, n):
            for v in itertools.product(elems, repeat=n):
                G = _enhanced(g)
                for i in range(n):
                    G.data[i][n] = v[i]
                yield G
        return
    if model.family == "parabolic-gl":
        blocks = model.params["blocks"]
        m = sum(blocks)
        block_of = [b for b, size in enumerate(blocks) for _ in range(size)]
        starts = [sum(blocks[:b]) for b in range(len(blocks))]
        free = [(i, j) for i in range(m) for j in range(m) if block_of[i] < block_of[j]]
        elems = list(F.elements())
        levis = [list(_invertible_matrices(F, size)) for size in blocks]
        for parts in itertools.product(*levis):
            for vals in itertools.product(elems, repeat=len(free)):
                G = Matrix.zeros(F, m)
                for s0, P in zip(starts, parts):
                    for i in range(P.rows):
                        for j in range(P.rows):
                            G.data[s0 + i][s0 + j] = P.data[i][j]
                for (i, j), x in zip(free, vals):
                    G.data[i][j] = x
                yield G
        return
    raise ValueError(f"no enumeration for family {model.family!r}")


def bruhat_cell_census(model: AlgebraModel, cap: int = CENSUS_CAP) -> dict[str, int]:
    """|C(w)| for every Weyl element w, by enumerating G and factoring each element."""
    if not model.field.is_finite:
        raise ValueError("census needs a finite field")
    order = group_order(model)
    if order > cap:
        raise ValueError(f"|G| = {order} exceeds the enumeration cap {cap}")
    counts: Counter = Counter()
    for G in group_elements(model):
        counts[bruhat_factor_group_element(model, G).label] += 1
    return dict(counts)
