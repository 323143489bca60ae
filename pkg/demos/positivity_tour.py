"""Which weight sets admit a cocharacter pairing positively with all of them?

Runs the solver on the enhanced, Witt and parabolic families and on the
+-3 pattern, printing the cocharacter or the certificate.
"""

import json
import pathlib

from semired.algebra import build_enhanced_gl, build_parabolic_gl, build_witt_nonneg, weight_data
from semired.positivity import find_positive_cocharacter, verify_certificate

HERE = pathlib.Path(__file__).parent


def show(label, weights, rank=None):
    ans = find_positive_cocharacter(weights, rank=rank)
    ok = "verified" if verify_certificate(weights, ans) else "NOT VERIFIED"
    print(f"{label:28s} {json.dumps(ans.to_json())}  ({ok})")


for n in range(1, 5):
    show(f"enhanced-gl({n})", weight_data(build_enhanced_gl(n)).all_weights())
for n, p in [(1, 5), (2, 3), (2, 5)]:
    show(f"witt-nonneg({n},{p})", weight_data(build_witt_nonneg(n, p)).all_weights())
show("parabolic-gl(4,(1,2,1))", weight_data(build_parabolic_gl(4, [1, 2, 1])).all_weights())

hk = json.loads((HERE / "data" / "hk-counterexample.json").read_text())
show("+-3 pattern", [tuple(w) for w in hk["weights"]], hk["rank"])
