"""Count Borel subalgebras through nilpotent elements of gl(n, F_q), and the
Bruhat cells of the enhanced group over F_2."""

from semired import GF, Matrix
from semired.algebra import build_enhanced_gl
from semired.bruhat import bruhat_cell_census
from semired.nilcone import borel_census
from semired.rng import SplitMix64

for n, q in [(2, 2), (2, 3), (3, 2)]:
    F = GF(q)
    regular = Matrix(F, [[1 if j == i + 1 else 0 for j in range(n)] for i in range(n)])
    for name, x in (("regular", regular), ("zero", Matrix.zeros(F, n))):
        r = borel_census(n, q, x, SplitMix64(1), samples=20)
        print(f"gl({n}, F_{q}) {name:8s} count {r.count:3d} of {r.total:3d}   lifted {r.lifted_count:3d}")

print("\nBruhat cells of the enhanced GL(2) over F_2:", bruhat_cell_census(build_enhanced_gl(2, GF(2))))
