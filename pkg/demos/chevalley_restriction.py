"""The invariants of enhanced gl(3): print F_i, their torus restrictions, and
spot-check invariance under a few random group generators."""

from semired.algebra import adjoint_operator, build_enhanced_gl, random_element, random_generator
from semired.invariants import invariant_family, restrict_to_torus
from semired.rng import SplitMix64

m = build_enhanced_gl(3)
fam = invariant_family(m)
h = [f"h{i + 1}" for i in range(m.rank)]
for i, F in enumerate(fam.generators):
    print(f"F{i} = {F.to_str(m.basis)}")
    print(f"     restricted: {restrict_to_torus(m, F).to_str(h)}")

rng = SplitMix64(2024)
X = random_element(m, rng)
print("\nX values:", [str(v) for v in fam.evaluate(X)])
for _ in range(5):
    g = random_generator(m, rng)
    Y = adjoint_operator(m, g)(X)
    print(f"after {g.kind:22s}", [str(v) for v in fam.evaluate(Y)])
