import pytest

from semired import GF, QQ, Matrix
from semired.algebra import (
    GroupGenerator,
    adjoint_action,
    adjoint_operator,
    build_enhanced_gl,
    build_parabolic_gl,
    build_witt_nonneg,
    random_element,
    random_generator,
)
from semired.jordan import is_semisimple_matrix, jordan_chevalley
from semired.matrix import solve_linear_system
from semired.nilcone import (
    borel_census,
    enumerate_flags,
    flag_count,
    is_nilpotent_element,
    nilcone_membership,
    rational_roots,
    semisimple_conjugacy_check,
    steinberg_fiber_sample,
    steinberg_map,
    tangent_split_check,
)
from semired.oracles import flag_oracle
from semired.polynomial import MultiPoly
from semired.rng import SplitMix64
from semired.sampling import conjugate_randomly, jordan_test_element, nilcone_test_element, resample_u

FAMILIES = [
    build_enhanced_gl(2),
    build_enhanced_gl(3),
    build_witt_nonneg(1, 5),
    build_parabolic_gl(3, [2, 1]),
    build_enhanced_gl(2, GF(3)),
]
IDS = [f"{m.family}-{m.dim}-{m.field!r}" for m in FAMILIES]


def coords(m, **named):
    X = m.zero()
    for name, c in named.items():
        X[m.basis.index(name)] = m.field(c)
    return X


def nil(n, q):
    F = GF(q)
    return Matrix(F, [[1 if j == i + 1 else 0 for j in range(n)] for i in range(n)])


# -- examples ------------------------------------------------------------------


def test_steinberg_examples():
    m = build_enhanced_gl(2)
    assert steinberg_map(m, coords(m, E11=1, E22=2, v1=3, v2=-1)).values == (2, 3)
    assert steinberg_map(m, m.zero()).is_zero()
    assert steinberg_map(m, coords(m, E12=1, v1=4)).is_zero()


def test_nilpotent_examples():
    m = build_enhanced_gl(2)
    assert is_nilpotent_element(m, coords(m, E12=1, v2=1))
    assert not is_nilpotent_element(m, coords(m, E11=1))
    assert is_nilpotent_element(m, m.zero())


def test_membership_examples(rng):
    m = build_enhanced_gl(2)
    assert nilcone_membership(m, resample_u(m, coords(m, E12=1), rng))
    assert not nilcone_membership(m, coords(m, E11=1, E22=2))
    assert nilcone_membership(m, m.zero())


def test_fiber_examples(rng):
    m = build_enhanced_gl(2)
    assert steinberg_fiber_sample(m, (0, 0), 0, rng) == []
    for X in steinberg_fiber_sample(m, (0, 0), 10, rng):
        assert is_nilpotent_element(m, X)
    samples = steinberg_fiber_sample(m, (QQ(2), QQ(3)), 10, rng)
    for X in samples:
        x = Matrix(QQ, [[X[0], X[1]], [X[2], X[3]]])
        assert x.trace() == 3 and x.det() == 2
    assert any(s[4:] != samples[0][4:] for s in samples)  # u-part varies


def test_conjugacy_examples():
    m = build_enhanced_gl(2)
    r = semisimple_conjugacy_check(m, coords(m, E11=1, E22=2), coords(m, E11=2, E22=1))
    assert r.conjugate and r.witness
    X = coords(m, E11=1, E22=2, v1=1)
    r = semisimple_conjugacy_check(m, X, coords(m, E11=1, E22=2))
    assert r.conjugate
    assert any(g.kind == "unipotent-translation" for g in r.witness)
    Y = X
    for g in r.witness:
        Y = adjoint_action(m, g, Y)
    assert Y == coords(m, E11=1, E22=2)
    r = semisimple_conjugacy_check(m, coords(m, E11=1, E22=2), coords(m, E11=1, E22=3))
    assert not r.conjugate and not r.witness


def test_conjugacy_refusals():
    m = build_enhanced_gl(2)
    with pytest.raises(ValueError):
        semisimple_conjugacy_check(m, coords(m, E12=1), coords(m, E12=1))  # not semisimple
    with pytest.raises(ValueError):
        # eigenvalues +-sqrt(2)
        semisimple_conjugacy_check(m, coords(m, E12=1, E21=2), coords(m, E12=2, E21=1))
    with pytest.raises(ValueError):
        semisimple_conjugacy_check(build_parabolic_gl(2, [2]), [QQ(0)] * 4, [QQ(0)] * 4)


def test_rational_roots():
    f = MultiPoly.from_coeffs(QQ, [QQ(x) for x in (-6, 11, -6, 1)])  # (t-1)(t-2)(t-3)
    assert sorted(rational_roots(f)) == [1, 2, 3]
    g = MultiPoly.from_coeffs(QQ, [QQ(-1), QQ(0), QQ(2)])  # 2t^2 - 1
    assert rational_roots(g) == []


def test_borel_census_examples():
    assert (lambda r: (r.count, r.total))(borel_census(2, 2, nil(2, 2))) == (1, 3)
    zero2 = Matrix.zeros(GF(2), 2)
    assert (lambda r: (r.count, r.total))(borel_census(2, 2, zero2)) == (3, 3)
    zero3 = Matrix.zeros(GF(2), 3)
    assert (lambda r: (r.count, r.total))(borel_census(3, 2, zero3)) == (21, 21)


def test_borel_census_rejects_non_nilpotent():
    with pytest.raises(ValueError):
        borel_census(2, 2, Matrix.identity(GF(2), 2))


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_flag_counts(n, q):
    assert len(enumerate_flags(n, q)) == flag_count(n, q)


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2)])
def test_borel_census_against_flag_oracle(n, q):
    F = GF(q)
    E = Matrix(F, [[1 if (i, j) == (0, n - 1) else 0 for j in range(n)] for i in range(n)])
    for x in (nil(n, q), E, Matrix.zeros(F, n)):
        res = borel_census(n, q, x, SplitMix64(1), samples=20)
        assert (res.count, res.total) == flag_oracle(n, q, x)
        assert res.lifted_count == res.count
        assert res.correspondence_failures == 0


@pytest.mark.parametrize("n", [2, 3])
def test_tangent_split_at_regular_nilpotent(n, rng):
    m = build_enhanced_gl(n)
    X = m.zero()
    for i in range(n - 1):
        X[i * n + i + 1] = QQ(1)
    X = conjugate_randomly(m, resample_u(m, X, rng), rng)
    assert tangent_split_check(m, X)
    assert not tangent_split_check(m, m.zero())


# -- properties ----------------------------------------------------------------


@pytest.mark.parametrize("m", FAMILIES, ids=IDS)
def test_membership_equals_nilpotency(m, rng):
    for _ in range(60):
        X = nilcone_test_element(m, rng)
        verdict = nilcone_membership(m, X)
        assert verdict == is_nilpotent_element(m, X)
        assert verdict == nilcone_membership(m, m.pr(X))
        assert nilcone_membership(m, resample_u(m, X, rng)) == verdict


@pytest.mark.parametrize("m", FAMILIES, ids=IDS)
def test_steinberg_invariance(m, rng):
    for _ in range(20):
        X = jordan_test_element(m, rng)
        chi = steinberg_map(m, X)
        assert steinberg_map(m, adjoint_operator(m, random_generator(m, rng))(X)) == chi
        assert steinberg_map(m, jordan_chevalley(m, X).semisimple_part) == chi


@pytest.mark.parametrize("m", FAMILIES, ids=IDS)
def test_fiber_samples_hit_target(m, rng):
    a = tuple(m.field.random(rng) for _ in range(m.rank))
    for X in steinberg_fiber_sample(m, a, 15, rng):
        assert steinberg_map(m, X).values == a


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enhanced_semisimplicity_criterion(n, rng):
    # (x, v) is semisimple iff x is semisimple and v lies in the image of x
    m = build_enhanced_gl(n)
    for _ in range(40):
        X = jordan_test_element(m, rng)
        if rng.randrange(2):
            X = m.pr(X)
            x = Matrix(QQ, [[X[i * n + j] for j in range(n)] for i in range(n)])
            w = [QQ(rng.randint(-3, 3)) for _ in range(n)]
            X[n * n:] = x.apply(w)
        x = Matrix(QQ, [[X[i * n + j] for j in range(n)] for i in range(n)])
        v = X[n * n:]
        criterion = is_semisimple_matrix(x) and solve_linear_system(x, v).consistent
        assert criterion == all(c == 0 for c in jordan_chevalley(m, X).nilpotent_part)


def test_conjugacy_on_random_pairs(rng):
    m = build_enhanced_gl(3)
    for _ in range(10):
        d = [QQ(rng.randint(-2, 2)) for _ in range(3)]
        X = conjugate_randomly(m, coords(m, E11=d[0], E22=d[1], E33=d[2]), rng, 3)
        Y = conjugate_randomly(m, coords(m, E11=d[2], E22=d[0], E33=d[1]), rng, 3)
        assert semisimple_conjugacy_check(m, X, Y).conjugate
        Z = conjugate_randomly(m, coords(m, E11=d[0] + 1, E22=d[1], E33=d[2]), rng, 3)
        assert not semisimple_conjugacy_check(m, X, Z).conjugate


def test_translation_generator_fixes_chi(rng):
    m = build_enhanced_gl(2)
    X = random_element(m, rng)
    g = GroupGenerator("unipotent-translation", (QQ(3), QQ(-1)))
    assert steinberg_map(m, adjoint_action(m, g, X)) == steinberg_map(m, X)
