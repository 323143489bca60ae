import pytest
from hypothesis import given, settings, strategies as st

from semired import GF, QQ, Matrix
from semired.algebra import (
    adjoint_operator,
    build_enhanced_gl,
    build_parabolic_gl,
    build_witt_nonneg,
    random_generator,
)
from semired.bruhat import (
    bruhat_cell_census,
    bruhat_factor,
    bruhat_factor_group_element,
    group_elements,
    group_order,
    permutation_length,
    reduced_word,
    weyl_label,
    word_to_permutation,
)
from semired.jordan import cocharacter_limit, is_semisimple_matrix, jordan_chevalley, semisimple_part_matrix
from semired.nilcone import steinberg_map
from semired.oracles import bruhat_rank_oracle, frobenius_semisimple_part
from semired.positivity import Cocharacter
from semired.rng import SplitMix64
from semired.sampling import borel_element, jordan_test_element

FAMILIES = [
    build_enhanced_gl(2),
    build_enhanced_gl(3),
    build_parabolic_gl(3, [2, 1]),
    build_enhanced_gl(2, GF(5)),
    build_parabolic_gl(3, [1, 2], GF(5)),
    build_witt_nonneg(1, 5),
]
IDS = [f"{m.family}-{m.dim}-{m.field!r}" for m in FAMILIES]


def coords(m, **named):
    X = m.zero()
    for name, c in named.items():
        X[m.basis.index(name)] = m.field(c)
    return X


# -- Jordan-Chevalley ----------------------------------------------------------


def test_semisimple_input_is_fixed():
    m = build_enhanced_gl(2)
    X = coords(m, E11=1, E22=2)
    jp = jordan_chevalley(m, X)
    assert jp.semisimple_part == X
    assert jp.nilpotent_part == m.zero()


def test_nilpotent_input():
    m = build_enhanced_gl(2)
    X = coords(m, E12=1, v1=1)
    jp = jordan_chevalley(m, X)
    assert jp.semisimple_part == m.zero()
    assert jp.nilpotent_part == X


def test_unipotent_block_in_borel():
    m = build_parabolic_gl(2, [1, 1])
    X = coords(m, E11=1, E22=1, E12=1)
    jp = jordan_chevalley(m, X)
    assert jp.semisimple_part == coords(m, E11=1, E22=1)
    assert jp.nilpotent_part == coords(m, E12=1)


def test_semisimple_enhanced_with_translation():
    # (x, v) with v in the image of x is semisimple: conjugate to (x, 0)
    m = build_enhanced_gl(2)
    X = coords(m, E11=1, E22=2, v1=5, v2=-3)
    assert jordan_chevalley(m, X).nilpotent_part == m.zero()
    # v outside image(x) leaves a nilpotent part
    Y = coords(m, E11=1, v2=1)
    assert jordan_chevalley(m, Y).nilpotent_part != m.zero()


@pytest.mark.parametrize("m", FAMILIES, ids=IDS)
def test_decomposition_invariants(m, rng):
    for _ in range(25):
        X = jordan_test_element(m, rng)
        jp = jordan_chevalley(m, X)
        xs, xn = jp.semisimple_part, jp.nilpotent_part
        assert [a + b for a, b in zip(xs, xn)] == X
        assert m.bracket(xs, xn) == m.zero()
        assert is_semisimple_matrix(m.to_matrix(xs))
        assert m.to_matrix(xn).is_nilpotent()
        # idempotence
        assert jordan_chevalley(m, xs).semisimple_part == xs
        assert jordan_chevalley(m, xn).nilpotent_part == xn


@pytest.mark.parametrize("m", FAMILIES, ids=IDS)
def test_equivariance(m, rng):
    for _ in range(10):
        A = adjoint_operator(m, random_generator(m, rng))
        X = jordan_test_element(m, rng)
        assert jordan_chevalley(m, A(X)).semisimple_part == A(jordan_chevalley(m, X).semisimple_part)


@settings(max_examples=40)
@given(st.integers(1, 5), st.sampled_from([2, 3, 5, 7]), st.integers(0, 2**32))
def test_newton_matches_frobenius(n, p, seed):
    rng = SplitMix64(seed)
    F = GF(p)
    # repeated eigenvalues come from a conjugated triangular matrix
    T = Matrix(F, [[F(rng.randrange(2)) if j >= i else F.zero for j in range(n)] for i in range(n)])
    from semired.algebra import random_invertible

    g = random_invertible(F, n, rng)
    A = g @ T @ g.inverse()
    assert semisimple_part_matrix(A) == frobenius_semisimple_part(A)


# -- cocharacter limits ----------------------------------------------------------


def test_limit_example():
    m = build_enhanced_gl(2)
    X = coords(m, E11=1, E22=2, E12=1, v1=1)
    assert cocharacter_limit(m, Cocharacter((2, 1)), X) == coords(m, E11=1, E22=2)


def test_limit_fixes_torus():
    m = build_enhanced_gl(3)
    X = coords(m, E11=4, E22=-1, E33=2)
    assert cocharacter_limit(m, (3, 2, 1), X) == X


def test_limit_of_nilpotent_is_zero():
    m = build_enhanced_gl(3)
    X = coords(m, E12=1, E23=2, v3=5, v1=1)
    assert cocharacter_limit(m, (3, 2, 1), X) == m.zero()


def test_limit_rejects_outside_borel():
    m = build_enhanced_gl(2)
    with pytest.raises(ValueError):
        cocharacter_limit(m, (2, 1), coords(m, E21=1))
    with pytest.raises(ValueError):
        cocharacter_limit(m, (1, 1), coords(m, E12=1))  # pairing with the root is 0


@pytest.mark.parametrize("m", [FAMILIES[0], FAMILIES[1], FAMILIES[2], FAMILIES[5]], ids=IDS[:3] + IDS[5:])
def test_limit_is_semisimple_and_keeps_chi(m, rng):
    from semired.algebra import weight_data
    from semired.positivity import find_positive_cocharacter

    chi = find_positive_cocharacter(weight_data(m).all_weights())
    torus = set(m.torus_indices)
    for _ in range(20):
        X = borel_element(m, rng)
        lim = cocharacter_limit(m, chi, X)
        assert all(v == 0 for i, v in enumerate(lim) if i not in torus)
        assert is_semisimple_matrix(m.to_matrix(lim))
        assert steinberg_map(m, X) == steinberg_map(m, lim)


# -- Bruhat ------------------------------------------------------------------------


def test_bruhat_identity():
    f = bruhat_factor(Matrix.identity(QQ, 3))
    assert f.label == "e"
    assert f.unipotent_part.is_identity() and f.borel_part.is_identity()


def test_bruhat_swap():
    f = bruhat_factor(Matrix(QQ, [[0, 1], [1, 0]]))
    assert f.label == "s1"


def test_bruhat_lower_unipotent():
    g = Matrix(QQ, [[1, 0], [1, 1]])
    f = bruhat_factor(g)
    assert f.label == "s1"
    assert f.recompose() == g
    assert bruhat_rank_oracle(g) == f.weyl


def test_reduced_words():
    assert reduced_word((0, 1, 2)) == []
    assert weyl_label((2, 1, 0)) == "s1s2s1"
    for w in [(1, 0, 2), (2, 0, 1), (1, 2, 0), (2, 1, 0), (3, 1, 0, 2)]:
        word = reduced_word(w)
        assert len(word) == permutation_length(w)
        assert word_to_permutation(word, len(w)) == w


def test_singular_rejected():
    with pytest.raises(ValueError):
        bruhat_factor(Matrix(QQ, [[1, 2], [2, 4]]))


@settings(max_examples=60)
@given(st.integers(1, 5), st.integers(0, 2**32))
def test_bruhat_factor_properties(n, seed):
    rng = SplitMix64(seed)
    g = Matrix(QQ, [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
    if g.det() == 0:
        return
    f = bruhat_factor(g)
    assert f.recompose() == g
    assert f.unipotent_part.is_upper_triangular() and all(f.unipotent_part.data[i][i] == 1 for i in range(n))
    assert f.borel_part.is_upper_triangular()
    assert f.weyl == bruhat_rank_oracle(g)


def test_enhanced_factorization_carries_translation():
    m = build_enhanced_gl(2)
    G = Matrix(QQ, [[1, 2, 5], [3, 4, 6], [0, 0, 1]])
    f = bruhat_factor_group_element(m, G)
    assert f.recompose() == G
    assert f.translation == (5, 6)


def _borel_order(m):
    q = m.field.p
    if m.family == "enhanced-gl":
        n = m.params["n"]
        return (q - 1) ** n * q ** (n * (n - 1) // 2) * q ** n
    k = sum(m.params["blocks"])
    return (q - 1) ** k * q ** (k * (k - 1) // 2)


CENSUS_MODELS = [
    build_enhanced_gl(1, GF(3)),
    build_enhanced_gl(2, GF(2)),
    build_enhanced_gl(2, GF(3)),
    build_parabolic_gl(2, [2], GF(3)),
    build_parabolic_gl(2, [1, 1], GF(3)),
    build_parabolic_gl(3, [2, 1], GF(2)),
    build_parabolic_gl(3, [3], GF(2)),
]


def test_census_enhanced_f2():
    assert bruhat_cell_census(build_enhanced_gl(2, GF(2))) == {"e": 8, "s1": 16}


def test_census_gl2_f3():
    assert bruhat_cell_census(build_parabolic_gl(2, [2], GF(3))) == {"e": 12, "s1": 36}


@pytest.mark.parametrize("m", CENSUS_MODELS, ids=lambda m: f"{m.family}-{m.params}-{m.field!r}")
def test_census_identities(m):
    census = bruhat_cell_census(m)
    B = _borel_order(m)
    q = m.field.p
    assert census["e"] == B
    assert sum(census.values()) == group_order(m) == sum(1 for _ in group_elements(m))
    for label, size in census.items():
        length = 0 if label == "e" else len(label) // 2
        assert size == q ** length * B


def test_census_cap():
    with pytest.raises(ValueError):
        bruhat_cell_census(build_enhanced_gl(3, GF(3)), cap=1000)
    with pytest.raises(ValueError):
        bruhat_cell_census(build_enhanced_gl(2))
