import pytest
from hypothesis import given, strategies as st

from semired import GF, QQ, Matrix, MultiPoly
from semired.algebra import (
    GroupGenerator,
    adjoint_action,
    adjoint_operator,
    build_enhanced_gl,
    build_model,
    build_parabolic_gl,
    build_witt_nonneg,
    model_from_json,
    model_to_json,
    perturb_structure_constant,
    random_element,
    random_generator,
    validate_model,
    weight_data,
)
from semired.oracles import enhanced_adjoint_formula
from semired.rng import SplitMix64

FAMILIES = [
    build_enhanced_gl(1),
    build_enhanced_gl(2),
    build_enhanced_gl(3),
    build_enhanced_gl(2, GF(5)),
    build_witt_nonneg(1, 5),
    build_witt_nonneg(2, 3),
    build_parabolic_gl(3, [2, 1]),
    build_parabolic_gl(2, [1, 1]),
    build_parabolic_gl(4, [1, 2, 1], GF(3)),
]
IDS = [f"{m.family}-{m.dim}-{m.field!r}" for m in FAMILIES]


def coords(m, **named):
    X = m.zero()
    for name, c in named.items():
        X[m.basis.index(name)] = m.field(c)
    return X


# -- construction examples -------------------------------------------------------


def test_enhanced_gl1():
    m = build_enhanced_gl(1)
    assert m.dim == 2
    assert m.bracket(coords(m, E11=1), coords(m, v1=1)) == coords(m, v1=1)


def test_enhanced_gl2_weights():
    wd = weight_data(build_enhanced_gl(2))
    assert set(wd.positive_roots) == {(1, -1)}
    assert set(wd.u_weights) == {(1, 0), (0, 1)}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_u_part_squares_to_zero(n):
    m = build_enhanced_gl(n)
    rng = SplitMix64(n)
    X = m.u_part(random_element(m, rng))
    R = m.to_matrix(X)
    assert (R @ R).is_zero()


def test_witt_1_5():
    m = build_witt_nonneg(1, 5)
    assert m.dim == 4
    assert set(weight_data(m).u_weights) == {(1,), (2,), (3,)}
    assert weight_data(m).positive_roots == ()


def test_witt_2_3_dim():
    assert build_witt_nonneg(2, 3).dim == 16


@pytest.mark.parametrize("n,p", [(1, 5), (2, 3), (2, 5)])
def test_witt_g0_is_gl(n, p):
    m = build_witt_nonneg(n, p)
    gl = build_parabolic_gl(n, [n], GF(p))
    # x_i d_j <-> E_ij; both bases list the g0 part row-major
    for a in range(n * n):
        for b in range(n * n):
            assert m.bracket(m.basis_element(a), m.basis_element(b))[: n * n] == gl.bracket(gl.basis_element(a), gl.basis_element(b))


def test_parabolic_dims():
    m = build_parabolic_gl(3, [2, 1])
    assert (m.dim, m.g0_dim, m.u_dim) == (7, 5, 2)
    assert build_parabolic_gl(2, [1, 1]).dim == 3
    g = build_parabolic_gl(3, [3])
    assert g.dim == 9 and g.u_dim == 0


def test_weight_data_borel():
    wd = weight_data(build_parabolic_gl(2, [1, 1]))
    assert wd.positive_roots == ()
    assert wd.u_weights == ((1, -1),)


@pytest.mark.parametrize("m", FAMILIES, ids=IDS)
def test_dimension_formulas(m):
    fam, prm = m.family, m.params
    if fam == "enhanced-gl":
        assert m.dim == prm["n"] ** 2 + prm["n"]
    elif fam == "witt-nonneg":
        assert m.dim == prm["n"] * (prm["p"] ** prm["n"] - 1)
    else:
        b = prm["blocks"]
        assert m.dim == prm["m"] ** 2 - sum(b[i] * b[j] for i in range(len(b)) for j in range(i + 1, len(b)))


@pytest.mark.parametrize("m", FAMILIES, ids=IDS)
def test_validate_passes(m):
    report = validate_model(m)
    assert report.passed, report.to_json()


def test_perturbed_model_fails_jacobi():
    m = build_enhanced_gl(2)
    bad = perturb_structure_constant(m, 0, 1, 1, 1)
    report = validate_model(bad)
    assert not report["jacobi"].passed
    assert "(" in report["jacobi"].details  # the violating triple is named
    assert report["antisymmetry"].passed


def test_build_errors():
    with pytest.raises(ValueError):
        build_enhanced_gl(0)
    with pytest.raises(ValueError):
        build_witt_nonneg(1, 3)  # n = 1 needs p >= 5
    with pytest.raises(ValueError):
        build_witt_nonneg(2, 4)
    with pytest.raises(ValueError):
        build_witt_nonneg(2, 37)  # over the size cap
    with pytest.raises(ValueError):
        build_parabolic_gl(3, [1, 1])
    with pytest.raises(ValueError):
        build_model("heisenberg", n=2)


@pytest.mark.parametrize("m", FAMILIES, ids=IDS)
def test_json_round_trip(m):
    m2 = model_from_json(model_to_json(m))
    assert m2.basis == m.basis and m2.weights == m.weights
    assert dict(m2.structure) == dict(m.structure)
    assert validate_model(m2).passed


def test_json_missing_key():
    obj = model_to_json(build_enhanced_gl(1))
    del obj["sc"]
    with pytest.raises(ValueError, match="sc"):
        model_from_json(obj)


# -- adjoint action ------------------------------------------------------------


def test_translation_examples():
    m = build_enhanced_gl(2)
    E12 = coords(m, E12=1)
    w1 = GroupGenerator("unipotent-translation", (QQ(1), QQ(0)))
    w2 = GroupGenerator("unipotent-translation", (QQ(0), QQ(1)))
    assert adjoint_action(m, w1, E12) == E12
    assert adjoint_action(m, w2, E12) == coords(m, E12=1, v1=-1)


@pytest.mark.parametrize("m", FAMILIES, ids=IDS)
def test_identity_generator(m):
    if m.family == "parabolic-gl":
        gen = GroupGenerator("torus-element", tuple(m.field.one for _ in range(m.rep_dim)))
    else:
        gen = GroupGenerator("torus-element", tuple(m.field.one for _ in range(m.params["n"])))
    X = random_element(m, SplitMix64(3))
    assert adjoint_action(m, gen, X) == X


@pytest.mark.parametrize("m", FAMILIES, ids=IDS)
def test_ad_preserves_brackets(m, rng):
    for _ in range(15):
        A = adjoint_operator(m, random_generator(m, rng))
        X, Y = random_element(m, rng), random_element(m, rng)
        assert A(m.bracket(X, Y)) == m.bracket(A(X), A(Y))


@pytest.mark.parametrize("m", FAMILIES, ids=IDS)
def test_generators_respect_the_split(m, rng):
    for _ in range(15):
        gen = random_generator(m, rng)
        A = adjoint_operator(m, gen)
        X = random_element(m, rng)
        if gen.kind in ("unipotent-translation", "substitution-automorphism"):
            assert m.pr(A(X)) == m.pr(X)
        else:
            # reductive generators keep g0 in g0 and u in u
            assert m.u_part(A(m.pr(X))) == m.zero()
            assert m.pr(A(m.u_part(X))) == m.zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_adjoint_matches_closed_formula(n, rng):
    m = build_enhanced_gl(n)
    for _ in range(20):
        gen = random_generator(m, rng)
        X = random_element(m, rng)
        assert adjoint_action(m, gen, X) == enhanced_adjoint_formula(n, m.field, gen.kind, gen.payload, X)


def test_witt_u_rep_nilpotent(rng):
    for n, p in [(1, 5), (2, 3)]:
        m = build_witt_nonneg(n, p)
        for _ in range(10):
            assert m.to_matrix(m.u_part(random_element(m, rng))).is_nilpotent()


def test_bad_generator_kind():
    with pytest.raises(ValueError):
        GroupGenerator("rotation", None)
    m = build_parabolic_gl(3, [2, 1])
    with pytest.raises(ValueError):
        adjoint_action(m, GroupGenerator("unipotent-translation", Matrix.unit(QQ, 3, 2, 0)), m.zero())


def test_substitution_inverse_round_trip(rng):
    m = build_witt_nonneg(2, 3)
    F = m.field
    x0 = MultiPoly.variable(F, 2, 0)
    x1 = MultiPoly.variable(F, 2, 1)
    gen = GroupGenerator("substitution-automorphism", (x0 + x1 * x1, x1 + x0 * x0 * x1))
    from semired.algebra import group_matrices

    G, Gi = group_matrices(m, gen)
    assert (G @ Gi).is_identity()


@given(st.integers(0, 2**32))
def test_from_matrix_inverts_to_matrix(seed):
    rng = SplitMix64(seed)
    for m in (FAMILIES[2], FAMILIES[4], FAMILIES[6]):
        X = random_element(m, rng)
        assert m.from_matrix(m.to_matrix(X)) == X
