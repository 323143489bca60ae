"""Sparse multivariate polynomials with exact coefficients.

Univariate polynomials are ``MultiPoly`` objects with ``nvars == 1``; the
helpers at the bottom (gcd, division, squarefree part, characteristic and
minimal polynomials) work on those.
"""

from __future__ import annotations

import itertools
from math import comb
from typing import Iterator, Mapping, Sequence

from .fields import Field, Scalar
from .matrix import Matrix, berkowitz, solve_linear_system

__all__ = [
    "MultiPoly",
    "monomials_of_degree",
    "char_poly",
    "min_poly",
    "squarefree_part",
    "poly_gcd",
    "poly_divmod",
    "poly_at_matrix",
]

Exponent = tuple[int, ...]


class MultiPoly:
    """Polynomial in ``nvars`` variables over ``field``.

    ``terms`` maps exponent tuples to nonzero coefficients; zero
    coefficients are never stored.
    """

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.field = field
        self.nvars = nvars
        clean: dict[Exponent, Scalar] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has length {len(e)}, expected {nvars}")
                c = field(c)
                if c != 0:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, field: Field, nvars: int, terms: dict) -> "MultiPoly":
        p = cls.__new__(cls)
        p.field, p.nvars, p.terms = field, nvars, terms
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field: Field, nvars: int) -> "MultiPoly":
        return cls._raw(field, nvars, {})

    @classmethod
    def constant(cls, field: Field, nvars: int, c) -> "MultiPoly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, field: Field, nvars: int) -> "MultiPoly":
        return cls.constant(field, nvars, 1)

    @classmethod
    def variable(cls, field: Field, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(field, nvars, {tuple(e): field.one})

    @classmethod
    def monomial(cls, field: Field, exponent: Sequence[int], c=1) -> "MultiPoly":
        return cls(field, len(exponent), {tuple(exponent): c})

    @classmethod
    def from_coeffs(cls, field: Field, coeffs: Sequence) -> "MultiPoly":
        """Univariate polynomial from low-to-high coefficients."""
        return cls(field, 1, {(k,): c for k, c in enumerate(coeffs)})

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def variables_used(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def sorted_terms(self) -> list[tuple[Exponent, Scalar]]:
        """Terms in graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({self.to_str()})"

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = ["t"] if self.nvars == 1 else [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(names[i] + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1 and not self.field.is_finite:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- ring operations ----------------------------------------------------

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.field != self.field or other.nvars != self.nvars:
                raise TypeError("polynomial ring mismatch")
            return other
        return MultiPoly.constant(self.field, self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly._raw(self.field, self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.field, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = self.field(other)
            if c == 0:
                return MultiPoly.zero(self.field, self.nvars)
            return MultiPoly._raw(self.field, self.nvars, {e: c * a for e, a in self.terms.items()})
        other = self._lift(other)
        out: dict[Exponent, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return MultiPoly._raw(self.field, self.nvars, {e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.one(self.field, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def truncate(self, max_exponent: int) -> "MultiPoly":
        """Drop every term with some exponent above ``max_exponent``."""
        return MultiPoly._raw(
            self.field, self.nvars, {e: c for e, c in self.terms.items() if max(e, default=0) <= max_exponent}
        )

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly._raw(self.field, self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- calculus and substitution ------------------------------------------

    def derivative(self, i: int = 0) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                d = c * k
                if d != 0:
                    e2 = list(e)
                    e2[i] = k - 1
                    out[tuple(e2)] = d
        return MultiPoly._raw(self.field, self.nvars, out)

    def __call__(self, *point):
        return self.evaluate(point[0] if len(point) == 1 and isinstance(point[0], (list, tuple)) else point)

    def evaluate(self, point: Sequence) -> Scalar:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        total = self.field.zero
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    if x == 0:
                        term = None
                        break
                    term = term * (x if k == 1 else x ** k)
            if term is not None:
                total = total + term
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose: replace variable i by ``images[i]`` (all in one common ring)."""
        if len(images) != self.nvars:
            raise ValueError("wrong number of images")
        target = images[0] if images else None
        if target is None:
            return self
        out = MultiPoly.zero(target.field, target.nvars)
        cache: dict[tuple[int, int], MultiPoly] = {}
        for e, c in self.terms.items():
            term = MultiPoly.constant(target.field, target.nvars, c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    term = term * cache[key]
            out = out + term
        return out

    def extend(self, nvars: int, positions: Sequence[int] | None = None) -> "MultiPoly":
        """Re-embed into a ring with ``nvars`` variables; variable i goes to ``positions[i]``."""
        positions = list(range(self.nvars)) if positions is None else list(positions)
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * nvars
            for i, k in enumerate(e):
                e2[positions[i]] += k
            out[tuple(e2)] = c
        return MultiPoly._raw(self.field, nvars, out)

    def restrict(self, keep: Sequence[int]) -> "MultiPoly":
        """Set every variable outside ``keep`` to zero; result lives in ``len(keep)`` variables."""
        keep = list(keep)
        keep_set = set(keep)
        out: dict[Exponent, Scalar] = {}
        for e, c in self.terms.items():
            if any(k and i not in keep_set for i, k in enumerate(e)):
                continue
            e2 = tuple(e[i] for i in keep)
            s = out.get(e2)
            out[e2] = c if s is None else s + c
        return MultiPoly._raw(self.field, len(keep), {e: c for e, c in out.items() if c != 0})

    def permute_variables(self, perm: Sequence[int]) -> "MultiPoly":
        """Variable i is renamed to variable ``perm[i]``."""
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * self.nvars
            for i, k in enumerate(e):
                e2[perm[i]] = k
            out[tuple(e2)] = c
        return MultiPoly._raw(self.field, self.nvars, out)

    # -- univariate view ----------------------------------------------------

    def _require_univariate(self):
        if self.nvars != 1:
            raise ValueError("expected a univariate polynomial")

    def degree(self) -> int:
        self._require_univariate()
        return max((e[0] for e in self.terms), default=-1)

    def coeffs(self) -> list:
        """Low-to-high coefficient list (univariate)."""
        self._require_univariate()
        d = self.degree()
        z = self.field.zero
        return [self.terms.get((k,), z) for k in range(d + 1)]

    def leading_coefficient(self) -> Scalar:
        c = self.coeffs()
        return c[-1] if c else self.field.zero

    def is_monic(self) -> bool:
        return self.leading_coefficient() == 1

    def monic(self) -> "MultiPoly":
        lc = self.leading_coefficient()
        if lc == 0:
            raise ZeroDivisionError("zero polynomial has no monic associate")
        return self * (self.field.one / lc)

    # -- serialisation ------------------------------------------------------

    def to_json(self) -> dict[str, str]:
        return {",".join(map(str, e)): str(c) for e, c in self.sorted_terms()}

    @classmethod
    def from_json(cls, field: Field, nvars: int, obj: Mapping[str, str]) -> "MultiPoly":
        terms = {}
        for key, val in obj.items():
            e = tuple(int(k) for k in key.split(",")) if key else ()
            terms[e] = field.parse(val) if isinstance(val, str) else field(val)
        return cls(field, nvars, terms)


def monomials_of_degree(nvars: int, d: int) -> Iterator[Exponent]:
    """All exponent vectors of total degree ``d`` (there are C(d+nvars-1, d))."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)


def count_monomials(nvars: int, d: int) -> int:
    return comb(d + nvars - 1, d) if nvars else int(d == 0)


# -- univariate algorithms ----------------------------------------------------


def poly_divmod(a: MultiPoly, b: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    F = a.field
    r = a.coeffs()
    bc = b.coeffs()
    db = len(bc) - 1
    inv = F.one / bc[-1]
    q = [F.zero] * max(len(r) - db, 1)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv
        if c != 0:
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = r[k - db + j] - c * bc[j]
    return MultiPoly.from_coeffs(F, q), MultiPoly.from_coeffs(F, r[:db] if db > 0 else [])


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a if a.is_zero() else a.monic()


def _exact_quotient(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    q, r = poly_divmod(a, b)
    if not r.is_zero():
        raise ArithmeticError("inexact polynomial division")
    return q


def _pth_root(f: MultiPoly, p: int) -> MultiPoly:
    # over F_p every coefficient is its own p-th root
    return MultiPoly(f.field, 1, {(e[0] // p,): c for e, c in f.terms.items()})


def squarefree_part(f: MultiPoly) -> MultiPoly:
    """Monic product of the distinct irreducible factors of ``f``.

    Over F_p the factors whose multiplicity is divisible by p are recovered
    through a p-th root, so inputs such as ``t^p - 1`` are handled.
    """
    if f.nvars != 1:
        raise ValueError("squarefree_part expects a univariate polynomial")
    if f.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    f = f.monic()
    if f.degree() == 0:
        return f
    df = f.derivative()
    if df.is_zero():
        # f = g(t^p) with p the characteristic
        return squarefree_part(_pth_root(f, f.field.p))
    g = poly_gcd(f, df)
    w = _exact_quotient(f, g)
    if f.field.char == 0:
        return w.monic()
    u = g
    while True:
        h = poly_gcd(u, w)
        if h.degree() == 0:
            break
        u = _exact_quotient(u, h)
    if u.degree() == 0:
        return w.monic()
    return (w * squarefree_part(u)).monic()


def poly_at_matrix(f: MultiPoly, M: Matrix) -> Matrix:
    """Evaluate a univariate polynomial at a square matrix (Horner)."""
    coeffs = f.coeffs()
    n = M.rows
    result = Matrix.zeros(M.field, n)
    I = Matrix.identity(M.field, n)
    for c in reversed(coeffs):
        result = result @ M + I.scale(c)
    return result


def char_poly(M: Matrix) -> MultiPoly:
    """det(t I - M) as a monic univariate polynomial."""
    if not M.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    F = M.field
    c = berkowitz(M.data, F.zero, F.one)
    return MultiPoly.from_coeffs(F, list(reversed(c)))


def min_poly(M: Matrix) -> MultiPoly:
    """Least-degree monic p with p(M) = 0, from the first dependency among I, M, M^2, ..."""
    if not M.is_square:
        raise ValueError("minimal polynomial of a non-square matrix")
    F = M.field
    n = M.rows
    powers = [Matrix.identity(F, n).flatten()]
    P = Matrix.identity(F, n)
    for k in range(1, n + 1):
        P = P @ M
        target = P.flatten()
        A = Matrix(F, [list(r) for r in zip(*powers)], _trusted=True)
        sol = solve_linear_system(A, target)
        if sol.consistent:
            coeffs = [-c for c in sol.particular] + [F.one]
            return MultiPoly.from_coeffs(F, coeffs)
        powers.append(target)
    raise ArithmeticError("no annihilating polynomial up to degree n (Cayley-Hamilton violated)")
