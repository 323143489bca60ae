import pytest
from hypothesis import assume, given, settings, strategies as st

from semired.algebra import build_enhanced_gl, build_parabolic_gl, build_witt_nonneg, weight_data
from semired.oracles import brute_force_cocharacter, fourier_motzkin_feasible
from semired.positivity import (
    Cocharacter,
    InfeasibilityCertificate,
    dedupe_weights,
    find_positive_cocharacter,
    pairing,
    verify_certificate,
)


def weights_of(m):
    return weight_data(m).all_weights()


def test_enhanced_gl2_cocharacter():
    ans = find_positive_cocharacter([(1, -1), (1, 0), (0, 1)])
    assert ans == Cocharacter((2, 1))


def test_pm3_pair_infeasible():
    ans = find_positive_cocharacter([(3, 0), (-3, 0)])
    assert isinstance(ans, InfeasibilityCertificate)
    assert ans.coefficients == (1, 1)


def test_pm3_inside_larger_set():
    W = [(3, 0, 0), (1, -1, 0), (-3, 0, 0), (0, 0, 1)]
    ans = find_positive_cocharacter(W)
    assert isinstance(ans, InfeasibilityCertificate)
    assert verify_certificate(W, ans)


def test_empty_is_feasible():
    assert find_positive_cocharacter([], rank=3) == Cocharacter((0, 0, 0))


def test_zero_weight_is_infeasible():
    ans = find_positive_cocharacter([(1, 2), (0, 0)])
    assert isinstance(ans, InfeasibilityCertificate)
    assert ans.support() == [1]


def test_mixed_lengths_rejected():
    with pytest.raises(ValueError):
        find_positive_cocharacter([(1, 0), (1,)])


@pytest.mark.parametrize("n", range(1, 7))
def test_explicit_enhanced_cocharacter(n):
    chi = Cocharacter(tuple(n - i + 1 for i in range(1, n + 1)))
    assert verify_certificate(weights_of(build_enhanced_gl(n)), chi)


@pytest.mark.parametrize("n,p", [(1, 5), (2, 3), (2, 5)])
def test_explicit_witt_cocharacter(n, p):
    chi = Cocharacter(tuple(2 * n - i for i in range(1, n + 1)))
    assert verify_certificate(weights_of(build_witt_nonneg(n, p)), chi)


def test_opposite_vectors_certificate():
    assert verify_certificate([(1, 0), (-1, 0)], InfeasibilityCertificate((1, 1)))
    assert not verify_certificate([(1, 0), (-1, 1)], InfeasibilityCertificate((1, 1)))
    assert not verify_certificate([(1, 0)], Cocharacter((-1, 0)))


def _compositions(m):
    if m == 0:
        yield []
        return
    for first in range(1, m + 1):
        for rest in _compositions(m - first):
            yield [first] + rest


def test_family_facts():
    models = [build_enhanced_gl(n) for n in range(1, 7)]
    models += [build_witt_nonneg(n, p) for n, p in [(1, 5), (2, 3), (2, 5)]]
    models += [build_parabolic_gl(m, b) for m in range(1, 6) for b in _compositions(m)]
    for m in models:
        W = weights_of(m)
        ans = find_positive_cocharacter(W, rank=m.rank)
        assert isinstance(ans, Cocharacter), m.params
        assert verify_certificate(W, ans)


def test_dedupe_keeps_first_occurrence():
    uniq, index = dedupe_weights([(1, 0), (0, 1), (1, 0)])
    assert uniq == [(1, 0), (0, 1)]
    assert index == [0, 1]


def test_certificate_indexes_original_list():
    W = [(2, 0), (2, 0), (-1, 0)]
    ans = find_positive_cocharacter(W)
    assert len(ans.coefficients) == 3
    assert verify_certificate(W, ans)


# -- properties ----------------------------------------------------------------


@st.composite
def weight_sets(draw, max_rank=8, max_size=60):
    r = draw(st.integers(1, max_rank))
    k = draw(st.integers(1, max_size))
    return [tuple(draw(st.integers(-6, 6)) for _ in range(r)) for _ in range(k)]


@given(weight_sets())
def test_soundness(W):
    assert verify_certificate(W, find_positive_cocharacter(W))


@settings(max_examples=40)
@given(weight_sets(max_rank=3, max_size=12))
def test_completeness_against_oracles(W):
    ans = find_positive_cocharacter(W)
    if isinstance(ans, Cocharacter):
        bound = max(abs(c) for c in ans.coords)
        # the box search is exponential in the rank; keep it desk sized
        assume((2 * bound + 1) ** len(W[0]) <= 200_000)
        found = brute_force_cocharacter(W, bound)
        assert found is not None
        assert all(pairing(w, found) >= 1 for w in W)
    else:
        assert not fourier_motzkin_feasible(W)


@settings(max_examples=40)
@given(weight_sets(max_rank=5, max_size=20))
def test_agrees_with_fourier_motzkin(W):
    assert isinstance(find_positive_cocharacter(W), Cocharacter) == fourier_motzkin_feasible(W)


@given(weight_sets(max_rank=5, max_size=20), st.integers(1, 7))
def test_scaling_invariance(W, k):
    a = find_positive_cocharacter(W)
    b = find_positive_cocharacter([tuple(k * x for x in w) for w in W])
    assert type(a) is type(b)


@given(weight_sets(max_rank=4, max_size=15))
def test_cocharacter_is_primitive(W):
    from math import gcd

    ans = find_positive_cocharacter(W)
    g = 0
    for c in (ans.coords if isinstance(ans, Cocharacter) else ans.coefficients):
        g = gcd(g, c)
    assert g == 1
