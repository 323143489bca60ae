"""Semi-reductive Lie algebras g = g0 + u: construction, validation, group actions.

Three families are built from explicit bracket formulas:

* ``enhanced-gl``  -- gl(n) + V with [(x, v), (y, w)] = ([x, y], x w - y v)
* ``witt-nonneg``  -- the degree >= 0 part of the Witt algebra W(n) over F_p,
  spanned by x^a d_j acting on the truncated polynomial ring A(n)
* ``parabolic-gl`` -- block upper triangular matrices in gl(m)

Each model carries a faithful matrix representation, which is used for
group actions (conjugation) and for pulling matrices back to coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Mapping, Sequence

from .fields import QQ, Field, GF, Scalar, is_prime
from .matrix import Matrix
from .polynomial import MultiPoly

__all__ = [
    "AlgebraModel",
    "WeightData",
    "GroupGenerator",
    "CheckResult",
    "ValidationReport",
    "build_enhanced_gl",
    "build_witt_nonneg",
    "build_parabolic_gl",
    "build_model",
    "validate_model",
    "weight_data",
    "adjoint_action",
    "adjoint_operator",
    "group_matrices",
    "random_element",
    "random_generator",
    "model_to_json",
    "model_from_json",
    "perturb_structure_constant",
    "WITT_CAP",
]

FAMILIES = ("enhanced-gl", "witt-nonneg", "parabolic-gl", "custom")
GENERATOR_KINDS = ("reductive-elementary", "torus-element", "unipotent-translation", "substitution-automorphism")
WITT_CAP = 2500

Element = list  # coordinates in the model basis


@dataclass(frozen=True, eq=False)
class AlgebraModel:
    family: str
    field: Field
    basis: tuple[str, ...]
    g0_dim: int
    # (i, j) -> ((k, c), ...) meaning [e_i, e_j] = sum c e_k; both orders stored
    structure: Mapping[tuple[int, int], tuple[tuple[int, Scalar], ...]]
    torus_indices: tuple[int, ...]
    # weight of every basis vector in epsilon coordinates (zero on the torus)
    weights: tuple[tuple[int, ...], ...]
    rep: tuple[Matrix, ...]
    # Levi blocks: levi[b][i][j] is the basis index playing E_ij of block b
    levi: tuple[tuple[tuple[int, ...], ...], ...] = ()
    params: Mapping = dc_field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def rank(self) -> int:
        return len(self.torus_indices)

    @property
    def rep_dim(self) -> int:
        return self.rep[0].rows if self.rep else 0

    @property
    def u_indices(self) -> range:
        return range(self.g0_dim, self.dim)

    @property
    def u_dim(self) -> int:
        return self.dim - self.g0_dim

    @cached_property
    def weyl_blocks(self) -> list[list[int]]:
        """Torus coordinates permuted by the Weyl group, one list per S_k factor."""
        pos = {b: k for k, b in enumerate(self.torus_indices)}
        return [[pos[block[i][i]] for i in range(len(block))] for block in self.levi]

    # -- elements -----------------------------------------------------------

    def zero(self) -> Element:
        return [self.field.zero] * self.dim

    def basis_element(self, i: int) -> Element:
        X = self.zero()
        X[i] = self.field.one
        return X

    def element(self, coords: Sequence) -> Element:
        if len(coords) != self.dim:
            raise ValueError(f"element has {len(coords)} coordinates, expected {self.dim}")
        return [self.field(c) for c in coords]

    def pr(self, X: Element) -> Element:
        """Projection onto g0 along u (as an element of g)."""
        return list(X[: self.g0_dim]) + [self.field.zero] * self.u_dim

    def u_part(self, X: Element) -> Element:
        return [self.field.zero] * self.g0_dim + list(X[self.g0_dim:])

    def bracket(self, X: Element, Y: Element) -> Element:
        out = self.zero()
        sx = [(i, a) for i, a in enumerate(X) if a != 0]
        sy = [(j, b) for j, b in enumerate(Y) if b != 0]
        for i, a in sx:
            for j, b in sy:
                terms = self.structure.get((i, j))
                if terms:
                    ab = a * b
                    for k, c in terms:
                        out[k] = out[k] + ab * c
        return out

    # -- representation -----------------------------------------------------

    @cached_property
    def _rep_sparse(self) -> list[list[tuple[int, int, Scalar]]]:
        return [[(r, c, x) for r, row in enumerate(M.data) for c, x in enumerate(row) if x != 0] for M in self.rep]

    def to_matrix(self, X: Element) -> Matrix:
        n = self.rep_dim
        F = self.field
        data = [[F.zero] * n for _ in range(n)]
        for i, a in enumerate(X):
            if a != 0:
                for r, c, x in self._rep_sparse[i]:
                    data[r][c] = data[r][c] + a * x
        return Matrix(F, data, _trusted=True)

    @cached_property
    def _pullback(self):
        n = self.rep_dim
        F = self.field
        R = Matrix(F, [M.flatten() for M in self.rep], _trusted=True)
        # pivot columns of R are matrix cells that determine the coordinates
        _, positions = R.rref()
        if len(positions) != self.dim:
            raise ValueError("representation is not injective")
        sub = R.submatrix(range(self.dim), positions)
        inv = sub.inverse()
        sparse_inv = [[(j, x) for j, x in enumerate(row) if x != 0] for row in inv.data]
        cells = [(pos // n, pos % n) for pos in positions]
        return cells, sparse_inv

    def from_matrix(self, M: Matrix, check: bool = True) -> Element:
        """Coordinates of a matrix lying in rep(g); ValueError if it does not."""
        cells, sparse_inv = self._pullback
        F = self.field
        coords = [F.zero] * self.dim
        for (r, c), row in zip(cells, sparse_inv):
            m = M.data[r][c]
            if m != 0:
                for j, x in row:
                    coords[j] = coords[j] + m * x
        if check and self.to_matrix(coords) != M:
            raise ValueError("matrix does not lie in the image of the representation")
        return coords

    @property
    def is_standard_family(self) -> bool:
        return self.family in ("enhanced-gl", "witt-nonneg", "parabolic-gl")


@dataclass(frozen=True)
class WeightData:
    rank: int
    positive_roots: tuple[tuple[int, ...], ...]
    u_weights: tuple[tuple[int, ...], ...]

    def all_weights(self) -> list[tuple[int, ...]]:
        return list(self.positive_roots) + list(self.u_weights)


@dataclass(frozen=True)
class GroupGenerator:
    """One generator of G, acting on g by Ad.

    Payloads: a Matrix for ``reductive-elementary``; a tuple of nonzero
    scalars for ``torus-element``; a vector (enhanced-gl) or a Matrix
    supported in u (parabolic-gl) for ``unipotent-translation``; a tuple of
    n polynomial images of x_1..x_n for ``substitution-automorphism``.
    """

    kind: str
    payload: object

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def _gl_bracket(i: int, j: int, k: int, l: int) -> list[tuple[tuple[int, int], int]]:
    """[E_ij, E_kl] = delta_jk E_il - delta_li E_kj."""
    out = []
    if j == k:
        out.append(((i, l), 1))
    if l == i:
        out.append(((k, j), -1))
    if len(out) == 2 and out[0][0] == out[1][0]:
        return []
    return out


def _finish_structure(raw: dict[tuple[int, int], dict[int, object]], F: Field) -> dict:
    out = {}
    for key, terms in raw.items():
        clean = tuple((k, F(c)) for k, c in sorted(terms.items()) if F(c) != 0)
        if clean:
            out[key] = clean
    return out


def _eps(n: int, *pairs: tuple[int, int]) -> tuple[int, ...]:
    w = [0] * n
    for i, c in pairs:
        w[i] += c
    return tuple(w)


def build_enhanced_gl(n: int, field: Field = QQ) -> AlgebraModel:
    """gl(n) + V with V the natural module; dim n^2 + n, rep by (n+1)x(n+1) affine blocks."""
    if n < 1:
        raise ValueError("enhanced-gl needs n >= 1")
    F = field
    E = lambda i, j: i * n + j  # noqa: E731
    V = lambda k: n * n + k  # noqa: E731
    basis = tuple([f"E{i+1}{j+1}" if n < 10 else f"E{i+1},{j+1}" for i in range(n) for j in range(n)] + [f"v{k+1}" for k in range(n)])
    raw: dict = {}
    for i, j, k, l in itertools.product(range(n), repeat=4):
        for (a, b), c in _gl_bracket(i, j, k, l):
            raw.setdefault((E(i, j), E(k, l)), {}).setdefault(E(a, b), 0)
            raw[(E(i, j), E(k, l))][E(a, b)] += c
    for i, j in itertools.product(range(n), repeat=2):
        # [E_ij, v_j] = v_i
        raw.setdefault((E(i, j), V(j)), {})[V(i)] = 1
        raw.setdefault((V(j), E(i, j)), {})[V(i)] = -1
    structure = _finish_structure(raw, F)
    weights = [_eps(n, (i, 1), (j, -1)) for i in range(n) for j in range(n)] + [_eps(n, (k, 1)) for k in range(n)]
    rep = [Matrix.unit(F, n + 1, i, j) for i in range(n) for j in range(n)] + [Matrix.unit(F, n + 1, k, n) for k in range(n)]
    levi = (tuple(tuple(E(i, j) for j in range(n)) for i in range(n)),)
    return AlgebraModel(
        family="enhanced-gl",
        field=F,
        basis=basis,
        g0_dim=n * n,
        structure=structure,
        torus_indices=tuple(E(i, i) for i in range(n)),
        weights=tuple(weights),
        rep=tuple(rep),
        levi=levi,
        params={"n": n},
    )


def _witt_label(a: Sequence[int], j: int) -> str:
    mono = "".join(f"x{i+1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(a) if k)
    return f"{mono}*d{j+1}"


def witt_basis(n: int, p: int) -> list[tuple[tuple[int, ...], int]]:
    """Pairs (a, j) for x^a d_j with 1 <= |a|, a_i <= p-1; degree-0 part first (x_i d_j row-major)."""
    g0 = [(tuple(1 if k == i else 0 for k in range(n)), j) for i in range(n) for j in range(n)]
    rest = []
    for a in itertools.product(range(p), repeat=n):
        if sum(a) >= 2:
            for j in range(n):
                rest.append((a, j))
    rest.sort(key=lambda t: (sum(t[0]), tuple(-x for x in t[0]), t[1]))
    return g0 + rest


def build_witt_nonneg(n: int, p: int) -> AlgebraModel:
    """W(n)_0 over F_p: derivations x^a d_j with |a| >= 1, acting on A(n) (dim p^n)."""
    if n < 1:
        raise ValueError("witt-nonneg needs n >= 1")
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if p < 3:
        raise ValueError("witt-nonneg needs p >= 3")
    if n == 1 and p < 5:
        raise ValueError("witt-nonneg with n = 1 needs p >= 5 (Aut(W(1)) is connected only then)")
    if n * p ** n > WITT_CAP:
        raise ValueError(f"n * p^n = {n * p ** n} exceeds the cap {WITT_CAP}")
    F = GF(p)
    blist = witt_basis(n, p)
    index = {b: k for k, b in enumerate(blist)}
    raw: dict = {}

    def add(key, target, c):
        if c % p == 0:
            return
        if any(x < 0 or x > p - 1 for x in target[0]):
            return
        d = raw.setdefault(key, {})
        k = index[target]
        d[k] = d.get(k, 0) + c

    for s, (a, i) in enumerate(blist):
        for t, (b, j) in enumerate(blist):
            if s == t:
                continue
            # x^a d_i (x^b) d_j - x^b d_j (x^a) d_i
            if b[i]:
                e = tuple(x + y - (1 if k == i else 0) for k, (x, y) in enumerate(zip(a, b)))
                add((s, t), (e, j), b[i])
            if a[j]:
                e = tuple(x + y - (1 if k == j else 0) for k, (x, y) in enumerate(zip(a, b)))
                add((s, t), (e, i), -a[j])
    structure = _finish_structure(raw, F)
    weights = tuple(tuple(a[k] - (1 if k == j else 0) for k in range(n)) for a, j in blist)
    monos = list(itertools.product(range(p), repeat=n))
    mindex = {c: k for k, c in enumerate(monos)}
    N = len(monos)
    rep = []
    for a, j in blist:
        M = Matrix.zeros(F, N)
        for c in monos:
            if c[j] == 0:
                continue
            target = tuple(x + y - (1 if k == j else 0) for k, (x, y) in enumerate(zip(a, c)))
            if max(target) > p - 1:
                continue
            M.data[mindex[target]][mindex[c]] = F(c[j])
        rep.append(M)
    levi = (tuple(tuple(index[(tuple(1 if k == i else 0 for k in range(n)), j)] for j in range(n)) for i in range(n)),)
    return AlgebraModel(
        family="witt-nonneg",
        field=F,
        basis=tuple(_witt_label(a, j) for a, j in blist),
        g0_dim=n * n,
        structure=structure,
        torus_indices=tuple(levi[0][i][i] for i in range(n)),
        weights=weights,
        rep=tuple(rep),
        levi=levi,
        params={"n": n, "p": p},
    )


def build_parabolic_gl(m: int, block_sizes: Sequence[int], field: Field = QQ) -> AlgebraModel:
    """Block upper triangular matrices of gl(m); Levi = block diagonal, u = blocks above it."""
    block_sizes = list(block_sizes)
    if m < 1 or not block_sizes or any(b < 1 for b in block_sizes) or sum(block_sizes) != m:
        raise ValueError(f"block sizes {block_sizes} do not partition m = {m}")
    F = field
    block_of = [b for b, size in enumerate(block_sizes) for _ in range(size)]
    levi_pairs = [(i, j) for i in range(m) for j in range(m) if block_of[i] == block_of[j]]
    u_pairs = [(i, j) for i in range(m) for j in range(m) if block_of[i] < block_of[j]]
    pairs = levi_pairs + u_pairs
    index = {ij: k for k, ij in enumerate(pairs)}
    raw: dict = {}
    for s, (i, j) in enumerate(pairs):
        for t, (k, l) in enumerate(pairs):
            for ab, c in _gl_bracket(i, j, k, l):
                d = raw.setdefault((s, t), {})
                d[index[ab]] = d.get(index[ab], 0) + c
    structure = _finish_structure(raw, F)
    starts = [sum(block_sizes[:b]) for b in range(len(block_sizes))]
    levi = tuple(
        tuple(tuple(index[(s0 + i, s0 + j)] for j in range(size)) for i in range(size))
        for s0, size in zip(starts, block_sizes)
    )
    return AlgebraModel(
        family="parabolic-gl",
        field=F,
        basis=tuple(f"E{i+1}{j+1}" if m < 10 else f"E{i+1},{j+1}" for i, j in pairs),
        g0_dim=len(levi_pairs),
        structure=structure,
        torus_indices=tuple(index[(i, i)] for i in range(m)),
        weights=tuple(_eps(m, (i, 1), (j, -1)) for i, j in pairs),
        rep=tuple(Matrix.unit(F, m, i, j) for i, j in pairs),
        levi=levi,
        params={"m": m, "blocks": tuple(block_sizes)},
    )


def build_model(family: str, *, n: int | None = None, p: int | None = None, m: int | None = None,
                blocks: Sequence[int] | None = None, field: Field = QQ) -> AlgebraModel:
    if family == "enhanced-gl":
        return build_enhanced_gl(n if n is not None else 0, field)
    if family == "witt-nonneg":
        if p is None:
            if not field.is_finite:
                raise ValueError("witt-nonneg needs a prime p")
            p = field.p
        return build_witt_nonneg(n if n is not None else 0, p)
    if family == "parabolic-gl":
        if m is None:
            m = sum(blocks) if blocks else (n or 0)
        return build_parabolic_gl(m, blocks if blocks else [m], field)
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# validation and weight data
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: str = ""


@dataclass
class ValidationReport:
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "status": "pass" if self.passed else "fail",
            "checks": [{"name": c.name, "status": "pass" if c.passed else "fail", "details": c.details} for c in self.checks],
        }


def _sc(model: AlgebraModel, i: int, j: int) -> dict[int, Scalar]:
    return dict(model.structure.get((i, j), ()))


def validate_model(model: AlgebraModel) -> ValidationReport:
    """Check every structural invariant exactly; failures are report entries."""
    F = model.field
    d = model.dim
    checks = []

    bad = None
    for i in range(d):
        if _sc(model, i, i):
            bad = (i, i)
            break
        for j in range(i + 1, d):
            a, b = _sc(model, i, j), _sc(model, j, i)
            if set(a) != set(b) or any(a[k] + b[k] != 0 for k in a):
                bad = (i, j)
                break
        if bad:
            break
    checks.append(CheckResult("antisymmetry", bad is None, "" if bad is None else f"violated at pair {bad}"))

    bad = None
    basis = [model.basis_element(i) for i in range(d)]
    ad_cache = {}

    def br(i, vec):
        return model.bracket(basis[i], vec)

    for i in range(d):
        for j in range(i + 1, d):
            bij = model.bracket(basis[i], basis[j])
            for k in range(j + 1, d):
                bjk = ad_cache.get((j, k))
                if bjk is None:
                    bjk = ad_cache[(j, k)] = model.bracket(basis[j], basis[k])
                bki = ad_cache.get((k, i))
                if bki is None:
                    bki = ad_cache[(k, i)] = model.bracket(basis[k], basis[i])
                s = [x + y + z for x, y, z in zip(br(i, bjk), br(j, bki), br(k, bij))]
                if any(x != 0 for x in s):
                    bad = (i, j, k)
                    break
            if bad:
                break
        if bad:
            break
    checks.append(CheckResult(
        "jacobi", bad is None,
        "" if bad is None else f"violated by triple {bad} = ({', '.join(model.basis[t] for t in bad)})",
    ))

    g0 = set(range(model.g0_dim))
    bad = None
    for (i, j), terms in model.structure.items():
        ks = {k for k, _ in terms}
        if i in g0 and j in g0 and not ks <= g0:
            bad = ("[g0,g0] not in g0", i, j)
        elif (i in g0) != (j in g0) and ks & g0:
            bad = ("[g0,u] not in u", i, j)
        elif i not in g0 and j not in g0 and ks & g0:
            bad = ("[u,u] not in u", i, j)
        if bad:
            break
    checks.append(CheckResult("semidirect", bad is None, "" if bad is None else f"{bad[0]} at pair {bad[1:]}"))

    bad = None
    for i in range(d):
        for j in range(i + 1, d):
            lhs = model.to_matrix(model.bracket(basis[i], basis[j]))
            if lhs != model.rep[i].commutator(model.rep[j]):
                bad = (i, j)
                break
        if bad:
            break
    checks.append(CheckResult("rep_homomorphism", bad is None, "" if bad is None else f"fails on pair {bad}"))

    R = Matrix(F, [M.flatten() for M in model.rep], _trusted=True)
    r = R.rank()
    checks.append(CheckResult("rep_injective", r == d, f"rank {r} of {d}"))

    bad = None
    tset = set(model.torus_indices)
    for k, t in enumerate(model.torus_indices):
        for a in range(d):
            want = [F.zero] * d
            if a not in tset:
                want[a] = F(model.weights[a][k])
            if model.bracket(basis[t], basis[a]) != want:
                bad = (t, a)
                break
        if bad:
            break
    for t in model.torus_indices:
        if any(w != 0 for w in model.weights[t]):
            bad = bad or (t, t)
    checks.append(CheckResult("weights", bad is None, "" if bad is None else f"[t, e] mismatch at {bad}"))

    return ValidationReport(checks)


def _is_positive(w: Sequence[int]) -> bool:
    for x in w:
        if x:
            return x > 0
    return False


def weight_data(model: AlgebraModel) -> WeightData:
    """Positive roots of g0 for the upper triangular Borel, and the u-weights with multiplicity."""
    if not model.torus_indices:
        raise ValueError("model has no torus data")
    tset = set(model.torus_indices)
    roots = sorted({model.weights[i] for i in range(model.g0_dim) if i not in tset and _is_positive(model.weights[i])}, reverse=True)
    u = [model.weights[i] for i in model.u_indices]
    return WeightData(model.rank, tuple(roots), tuple(u))


def borel_indices(model: AlgebraModel) -> set[int]:
    """Basis indices spanning the standard Borel subalgebra b+ = t + n0+ + u."""
    tset = set(model.torus_indices)
    return {i for i in range(model.dim) if i in tset or i >= model.g0_dim or _is_positive(model.weights[i])}


# ---------------------------------------------------------------------------
# group generators
# ---------------------------------------------------------------------------


def _witt_monomials(n: int, p: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(p), repeat=n))


def substitution_matrix(n: int, p: int, images: Sequence[MultiPoly]) -> Matrix:
    """Matrix of the algebra endomorphism x_i -> images[i] of A(n) on the monomial basis."""
    F = GF(p)
    if len(images) != n:
        raise ValueError(f"substitution needs {n} images")
    for y in images:
        if y.field != F or y.nvars != n:
            raise TypeError("substitution images must be polynomials over F_p in n variables")
        if y.constant_term() != 0:
            raise ValueError("substitution has a constant term; not an automorphism of A(n)")
    lin = Matrix(F, [[images[i].terms.get(tuple(1 if k == r else 0 for k in range(n)), F.zero) for i in range(n)] for r in range(n)])
    if not lin.is_invertible():
        raise ValueError("linear part of the substitution is singular; not an automorphism")
    monos = _witt_monomials(n, p)
    mindex = {c: k for k, c in enumerate(monos)}
    imgs = [y.truncate(p - 1) for y in images]
    M = Matrix.zeros(F, len(monos))
    powers: dict[tuple[int, int], MultiPoly] = {}
    for c in monos:
        val = MultiPoly.one(F, n)
        for i, k in enumerate(c):
            if k:
                if (i, k) not in powers:
                    acc = MultiPoly.one(F, n)
                    for _ in range(k):
                        acc = (acc * imgs[i]).truncate(p - 1)
                    powers[(i, k)] = acc
                val = (val * powers[(i, k)]).truncate(p - 1)
        for e, coef in val.terms.items():
            M.data[mindex[e]][mindex[c]] = coef
    return M


def group_matrices(model: AlgebraModel, gen: GroupGenerator) -> tuple[Matrix, Matrix]:
    """(rho(g), rho(g)^-1) in the model's faithful representation."""
    F = model.field
    fam = model.family
    kind, pl = gen.kind, gen.payload
    N = model.rep_dim

    def invert(G: Matrix) -> tuple[Matrix, Matrix]:
        try:
            return G, G.inverse()
        except ValueError:
            raise ValueError(f"{kind} payload is not invertible") from None

    if fam == "enhanced-gl":
        n = model.params["n"]
        G = Matrix.identity(F, N)
        if kind == "reductive-elementary":
            if not isinstance(pl, Matrix) or pl.shape != (n, n) or pl.field != F:
                raise ValueError(f"reductive payload must be an {n}x{n} matrix over {F!r}")
            for i in range(n):
                for j in range(n):
                    G.data[i][j] = pl.data[i][j]
        elif kind == "torus-element":
            if len(pl) != n:
                raise ValueError("torus payload has wrong length")
            for i, t in enumerate(pl):
                G.data[i][i] = F(t)
        elif kind == "unipotent-translation":
            if len(pl) != n:
                raise ValueError("translation payload has wrong length")
            for i, w in enumerate(pl):
                G.data[i][n] = F(w)
        else:
            raise ValueError(f"{kind} is not a generator of the enhanced group")
        return invert(G)

    if fam == "parabolic-gl":
        blocks = model.params["blocks"]
        block_of = [b for b, size in enumerate(blocks) for _ in range(size)]
        if kind == "reductive-elementary":
            if not isinstance(pl, Matrix) or pl.shape != (N, N) or pl.field != F:
                raise ValueError(f"reductive payload must be an {N}x{N} matrix over {F!r}")
            if any(pl.data[i][j] != 0 for i in range(N) for j in range(N) if block_of[i] != block_of[j]):
                raise ValueError("reductive payload is not block diagonal (not in the Levi factor)")
            return invert(pl)
        if kind == "torus-element":
            if len(pl) != N:
                raise ValueError("torus payload has wrong length")
            return invert(Matrix.diagonal(F, pl))
        if kind == "unipotent-translation":
            if not isinstance(pl, Matrix) or pl.shape != (N, N):
                raise ValueError("unipotent payload must be a matrix")
            if any(pl.data[i][j] != 0 for i in range(N) for j in range(N) if block_of[i] >= block_of[j]):
                raise ValueError("unipotent payload is not supported in u")
            return invert(Matrix.identity(F, N) + pl)
        raise ValueError(f"{kind} is not a generator of a parabolic group")

    if fam == "witt-nonneg":
        n, p = model.params["n"], model.params["p"]
        if kind == "reductive-elementary":
            if not isinstance(pl, Matrix) or pl.shape != (n, n) or pl.field != F:
                raise ValueError(f"reductive payload must be an {n}x{n} matrix over {F!r}")
            images = [sum((MultiPoly.variable(F, n, k) * pl.data[k][i] for k in range(n)), MultiPoly.zero(F, n)) for i in range(n)]
        elif kind == "torus-element":
            if len(pl) != n:
                raise ValueError("torus payload has wrong length")
            images = [MultiPoly.variable(F, n, i) * F(t) for i, t in enumerate(pl)]
        elif kind == "substitution-automorphism":
            images = list(pl)
        else:
            raise ValueError(f"{kind} is not a generator of Aut(W(n))")
        return invert(substitution_matrix(n, p, images))

    raise ValueError(f"group actions are not defined for family {fam!r}")


def adjoint_operator(model: AlgebraModel, gen: GroupGenerator) -> Callable[[Element], Element]:
    """Prepared Ad(g): conjugation in the faithful rep, pulled back to coordinates."""
    G, Gi = group_matrices(model, gen)

    def act(X: Element) -> Element:
        M = G @ model.to_matrix(X) @ Gi
        try:
            return model.from_matrix(M)
        except ValueError:
            raise RuntimeError("Ad(g)X escaped the algebra; internal error") from None

    return act


def adjoint_action(model: AlgebraModel, gen: GroupGenerator, X: Element) -> Element:
    return adjoint_operator(model, gen)(X)


# ---------------------------------------------------------------------------
# random sampling
# ---------------------------------------------------------------------------


def random_element(model: AlgebraModel, rng, indices: Sequence[int] | None = None) -> Element:
    X = model.zero()
    for i in (range(model.dim) if indices is None else indices):
        X[i] = model.field.random(rng)
    return X


def random_invertible(F: Field, n: int, rng) -> Matrix:
    while True:
        M = Matrix(F, [[F.random(rng, -3, 3) for _ in range(n)] for _ in range(n)], _trusted=True)
        if M.det() != 0:
            return M


def _elementary(F: Field, n: int, i: int, j: int, c) -> Matrix:
    M = Matrix.identity(F, n)
    M.data[i][j] = M.data[i][j] + c
    return M


def random_generator(model: AlgebraModel, rng) -> GroupGenerator:
    """A random generator of one of the kinds valid for the model's family."""
    F = model.field
    fam = model.family
    if fam == "enhanced-gl":
        n = model.params["n"]
        kind = rng.choice(["elementary", "dense", "torus", "translation", "translation"])
        if kind == "translation":
            return GroupGenerator("unipotent-translation", tuple(F.random(rng) for _ in range(n)))
        if kind == "torus":
            return GroupGenerator("torus-element", tuple(F.random_nonzero(rng) for _ in range(n)))
        if kind == "dense" or n == 1:
            return GroupGenerator("reductive-elementary", random_invertible(F, n, rng))
        i, j = rng.randrange(n), rng.randrange(n - 1)
        j = j + (j >= i)
        return GroupGenerator("reductive-elementary", _elementary(F, n, i, j, F.random_nonzero(rng)))
    if fam == "parabolic-gl":
        blocks = model.params["blocks"]
        m = sum(blocks)
        block_of = [b for b, size in enumerate(blocks) for _ in range(size)]
        kinds = ["levi", "torus"] + (["unipotent", "unipotent"] if len(blocks) > 1 else [])
        kind = rng.choice(kinds)
        if kind == "torus":
            return GroupGenerator("torus-element", tuple(F.random_nonzero(rng) for _ in range(m)))
        if kind == "unipotent":
            pairs = [(i, j) for i in range(m) for j in range(m) if block_of[i] < block_of[j]]
            N = Matrix.zeros(F, m)
            for i, j in pairs:
                if rng.randrange(2):
                    N.data[i][j] = F.random(rng)
            return GroupGenerator("unipotent-translation", N)
        G = Matrix.zeros(F, m)
        start = 0
        for size in blocks:
            B = random_invertible(F, size, rng)
            for i in range(size):
                for j in range(size):
                    G.data[start + i][start + j] = B.data[i][j]
            start += size
        return GroupGenerator("reductive-elementary", G)
    if fam == "witt-nonneg":
        n, p = model.params["n"], model.params["p"]
        kind = rng.choice(["linear", "torus", "substitution", "substitution"])
        if kind == "linear":
            return GroupGenerator("reductive-elementary", random_invertible(F, n, rng))
        if kind == "torus":
            return GroupGenerator("torus-element", tuple(F.random_nonzero(rng) for _ in range(n)))
        higher = [a for a in itertools.product(range(p), repeat=n) if sum(a) >= 2]
        images = []
        for i in range(n):
            y = MultiPoly.variable(F, n, i)
            for _ in range(rng.randint(1, 3)):
                y = y + MultiPoly.monomial(F, rng.choice(higher), F.random(rng))
            images.append(y)
        return GroupGenerator("substitution-automorphism", tuple(images))
    raise ValueError(f"no generator sampler for family {fam!r}")


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def model_to_json(model: AlgebraModel) -> dict:
    sc = []
    for (i, j), terms in sorted(model.structure.items()):
        for k, c in terms:
            sc.append([i, j, k, str(c)])
    params = {k: (list(v) if isinstance(v, tuple) else v) for k, v in model.params.items()}
    return {
        "family": model.family,
        "field": model.field.to_json(),
        "basis": list(model.basis),
        "g0_dim": model.g0_dim,
        "torus_indices": list(model.torus_indices),
        "sc": sc,
        "weights": [list(w) for w in model.weights],
        "rep": {"dim": model.rep_dim, "mats": [M.to_json() for M in model.rep]},
        "levi": [[list(r) for r in block] for block in model.levi],
        "params": params,
    }


def model_from_json(obj: Mapping) -> AlgebraModel:
    try:
        F = Field.from_json(obj["field"])
        family = obj.get("family", "custom")
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        basis = tuple(obj["basis"])
        raw: dict = {}
        for i, j, k, c in obj["sc"]:
            raw.setdefault((int(i), int(j)), {})[int(k)] = F.parse(c) if isinstance(c, str) else F(c)
        structure = _finish_structure(raw, F)
        weights = tuple(tuple(int(x) for x in w) for w in obj["weights"])
        rep_obj = obj["rep"]
        mats = tuple(Matrix.from_json(F, M) for M in rep_obj["mats"])
        if len(mats) != len(basis) or any(M.shape != (rep_obj["dim"], rep_obj["dim"]) for M in mats):
            raise ValueError("rep matrices do not match the basis / rep dimension")
        if len(weights) != len(basis):
            raise ValueError("one weight per basis vector is required")
        params = {k: (tuple(v) if isinstance(v, list) else v) for k, v in obj.get("params", {}).items()}
        levi = tuple(tuple(tuple(int(x) for x in r) for r in block) for block in obj.get("levi", []))
        return AlgebraModel(
            family=family,
            field=F,
            basis=basis,
            g0_dim=int(obj["g0_dim"]),
            structure=structure,
            torus_indices=tuple(int(t) for t in obj["torus_indices"]),
            weights=weights,
            rep=mats,
            levi=levi,
            params=params,
        )
    except KeyError as exc:
        raise ValueError(f"model JSON is missing key {exc}") from None


def perturb_structure_constant(model: AlgebraModel, i: int, j: int, k: int, delta=1) -> AlgebraModel:
    """Copy of ``model`` with c_ij^k += delta and c_ji^k -= delta (antisymmetry kept)."""
    F = model.field
    raw = {key: dict(terms) for key, terms in model.structure.items()}
    for (a, b), s in (((i, j), 1), ((j, i), -1)):
        d = raw.setdefault((a, b), {})
        d[k] = d.get(k, F.zero) + F(delta) * s
    return AlgebraModel(
        family="custom", field=F, basis=model.basis, g0_dim=model.g0_dim,
        structure=_finish_structure(raw, F), torus_indices=model.torus_indices,
        weights=model.weights, rep=model.rep, levi=model.levi, params=dict(model.params),
    )
