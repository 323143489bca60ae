"""Structured random elements: the uniform distribution almost never hits
nilpotent or non-semisimple elements, so the property suites mix these in."""

from __future__ import annotations

from .algebra import AlgebraModel, adjoint_operator, random_element, random_generator, random_invertible
from .matrix import Matrix


def conjugate_randomly(model: AlgebraModel, X: list, rng, steps: int = 2) -> list:
    for _ in range(steps):
        X = adjoint_operator(model, random_generator(model, rng))(X)
    return X


def borel_element(model: AlgebraModel, rng, diag_pool: int = 2, u_part: bool = True) -> list:
    """Element of b+ whose torus part repeats values from a small pool (so X_n is often nonzero)."""
    F = model.field
    pool = [F.random(rng, -3, 3) for _ in range(diag_pool)]
    X = model.zero()
    tset = set(model.torus_indices)
    for i in range(model.dim):
        w = model.weights[i]
        if i in tset:
            X[i] = rng.choice(pool)
        elif i >= model.g0_dim:
            if u_part:
                X[i] = F.random(rng)
        elif next((x for x in w if x), 0) > 0:
            X[i] = F.random(rng)
    return X


def jordan_test_element(model: AlgebraModel, rng) -> list:
    """Uniform random half of the time, otherwise a conjugated Borel element with repeated eigenvalues."""
    if rng.randrange(2):
        return random_element(model, rng)
    return conjugate_randomly(model, borel_element(model, rng), rng)


def nilpotent_g0_part(model: AlgebraModel, rng) -> list:
    """Random nilpotent element of g0: a conjugated strictly upper triangular matrix in each Levi block."""
    F = model.field
    X = model.zero()
    for block in model.levi:
        k = len(block)
        N = Matrix.zeros(F, k)
        for i in range(k):
            for j in range(i + 1, k):
                N.data[i][j] = F.random(rng)
        g = random_invertible(F, k, rng)
        N = g @ N @ g.inverse()
        for i in range(k):
            for j in range(k):
                X[block[i][j]] = N.data[i][j]
    return X


def resample_u(model: AlgebraModel, X: list, rng) -> list:
    Y = list(X)
    for i in model.u_indices:
        Y[i] = model.field.random(rng)
    return Y


def nilcone_test_element(model: AlgebraModel, rng) -> list:
    """Half nilpotent g0-part plus random u, half uniform."""
    if rng.randrange(2):
        return resample_u(model, nilpotent_g0_part(model, rng), rng)
    return random_element(model, rng)
