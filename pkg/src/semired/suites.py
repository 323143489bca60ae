"""Seeded verification suites, one function per acceptance criterion.

Every criterion returns a list of :class:`Record`.  A criterion passes when
all its records pass and it finishes inside its time budget.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable

from .algebra import (
    AlgebraModel,
    adjoint_operator,
    build_enhanced_gl,
    build_parabolic_gl,
    build_witt_nonneg,
    random_element,
    random_generator,
    weight_data,
)
from .bruhat import bruhat_cell_census, bruhat_factor, group_order
from .fields import GF, QQ
from .invariants import invariant_space_dimension, restriction_check
from .jordan import cocharacter_limit, is_semisimple_matrix, jordan_chevalley
from .matrix import Matrix
from .nilcone import (
    borel_census,
    flag_count,
    invariant_family,
    is_nilpotent_element,
    nilcone_membership,
    semisimple_conjugacy_check,
    steinberg_fiber_sample,
    steinberg_map,
)
from .oracles import (
    bruhat_rank_oracle,
    flag_oracle,
    fourier_motzkin_feasible,
    frobenius_semisimple_part,
    weighted_monomial_count,
)
from .positivity import Cocharacter, InfeasibilityCertificate, find_positive_cocharacter, verify_certificate
from .rng import SplitMix64
from .sampling import conjugate_randomly, jordan_test_element, nilcone_test_element, resample_u

__all__ = ["Record", "CRITERIA", "SUITES", "BUDGETS", "run_criterion", "run_suite"]


@dataclass
class Record:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    details: str = ""
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "details": self.details, "elapsed": round(self.elapsed, 4)}


class _Checks:
    def __init__(self):
        self.records: list[Record] = []
        self._t = time.perf_counter()

    def add(self, name: str, ok: bool, details: str = ""):
        now = time.perf_counter()
        self.records.append(Record(name, "pass" if ok else "fail", details, now - self._t))
        self._t = now


def _chevalley_families() -> list[tuple[str, AlgebraModel]]:
    return [
        ("enhanced-gl(2)", build_enhanced_gl(2)),
        ("enhanced-gl(3)", build_enhanced_gl(3)),
        ("witt-nonneg(1,5)", build_witt_nonneg(1, 5)),
        ("parabolic-gl(3,(2,1))", build_parabolic_gl(3, [2, 1])),
    ]


# ---------------------------------------------------------------------------


def criterion_1(seed: int) -> list[Record]:
    """F_i(Ad(g) X) = F_i(X): 200 elements x 50 generators per family."""
    c = _Checks()
    for label, m in _chevalley_families():
        rng = SplitMix64(seed).spawn("c1:" + label)
        fam = invariant_family(m)
        ops = [adjoint_operator(m, random_generator(m, rng)) for _ in range(50)]
        bad = 0
        for _ in range(200):
            X = random_element(m, rng)
            v = fam.evaluate(X)
            for A in ops:
                bad += fam.evaluate(A(X)) != v
        c.add(f"c01.invariance.{label}", bad == 0, f"{bad} of 10000 pairs changed an invariant")
    return c.records


def criterion_2(seed: int) -> list[Record]:
    """Restricted generators are elementary symmetric, Weyl invariant and independent."""
    c = _Checks()
    for label, m in _chevalley_families():
        rng = SplitMix64(seed).spawn("c2:" + label)
        rep = restriction_check(m, rng, attempts=5)
        c.add(f"c02.elementary-symmetric.{label}", rep.elementary_symmetric)
        c.add(f"c02.restriction-compatible.{label}", rep.compatible)
        c.add(f"c02.weyl-invariance.{label}", rep.weyl_invariant)
        c.add(f"c02.jacobian-independence.{label}", rep.independent)
    return c.records


def _all_compositions(m: int):
    for cuts in itertools.product([0, 1], repeat=m - 1):
        sizes, cur = [], 1
        for cut in cuts:
            if cut:
                sizes.append(cur)
                cur = 1
            else:
                cur += 1
        sizes.append(cur)
        yield sizes


def criterion_3(seed: int) -> list[Record]:
    """Positivity: family certificates, explicit cocharacters, the +-3 counterexample, FM agreement."""
    c = _Checks()
    models = [(f"enhanced-gl({n})", build_enhanced_gl(n)) for n in range(1, 6)]
    models += [(f"witt-nonneg({n},{p})", build_witt_nonneg(n, p)) for n, p in ((1, 5), (2, 3), (2, 5))]
    for m_ in range(1, 6):
        for blocks in _all_compositions(m_):
            models.append((f"parabolic-gl({m_},{tuple(blocks)})", build_parabolic_gl(m_, blocks)))
    bad = []
    for label, m in models:
        w = weight_data(m).all_weights()
        ans = find_positive_cocharacter(w, rank=m.rank)
        if not (isinstance(ans, Cocharacter) and verify_certificate(w, ans)):
            bad.append(label)
    c.add("c03.families-feasible", not bad, f"{len(models)} models; failures: {bad}")

    ok = True
    for n in range(1, 6):
        w = weight_data(build_enhanced_gl(n)).all_weights()
        ok &= verify_certificate(w, Cocharacter(tuple(n - i + 1 for i in range(1, n + 1))))
    for n, p in ((1, 5), (2, 3), (2, 5)):
        w = weight_data(build_witt_nonneg(n, p)).all_weights()
        ok &= verify_certificate(w, Cocharacter(tuple(2 * n - i for i in range(1, n + 1))))
    c.add("c03.explicit-cocharacters", ok)

    hk = [(3, 0), (-3, 0), (1, -1), (0, 1)]
    ans = find_positive_cocharacter(hk)
    c.add("c03.pm3-infeasible", isinstance(ans, InfeasibilityCertificate) and verify_certificate(hk, ans), str(ans))

    rng = SplitMix64(seed).spawn("c3:random")
    disagree = unsound = 0
    for _ in range(100):
        r = rng.randint(1, 6)
        k = rng.randint(1, 40)
        W = [tuple(rng.randint(-6, 6) for _ in range(r)) for _ in range(k)]
        ans = find_positive_cocharacter(W)
        unsound += not verify_certificate(W, ans)
        disagree += isinstance(ans, Cocharacter) != fourier_motzkin_feasible(W)
    c.add("c03.fourier-motzkin-agreement", disagree == 0 and unsound == 0, f"{disagree} disagreements, {unsound} unverified")
    return c.records


def _jordan_families():
    return [
        ("enhanced-gl(2)/Q", build_enhanced_gl(2)),
        ("enhanced-gl(3)/Q", build_enhanced_gl(3)),
        ("parabolic-gl(3,(2,1))/Q", build_parabolic_gl(3, [2, 1])),
        ("enhanced-gl(2)/F5", build_enhanced_gl(2, GF(5))),
        ("enhanced-gl(3)/F5", build_enhanced_gl(3, GF(5))),
        ("parabolic-gl(3,(2,1))/F5", build_parabolic_gl(3, [2, 1], GF(5))),
        ("witt-nonneg(1,5)/F5", build_witt_nonneg(1, 5)),
    ]


def criterion_4(seed: int) -> list[Record]:
    """Jordan-Chevalley invariants on 200 elements per family; Newton = Frobenius over F_5."""
    c = _Checks()
    for label, m in _jordan_families():
        rng = SplitMix64(seed).spawn("c4:" + label)
        fails = {"sum": 0, "commute": 0, "squarefree": 0, "nilpotent": 0, "closure": 0, "frobenius": 0}
        nontrivial = 0
        for _ in range(200):
            X = jordan_test_element(m, rng)
            jp = jordan_chevalley(m, X)
            xs, xn = jp.semisimple_part, jp.nilpotent_part
            S, N = m.to_matrix(xs), m.to_matrix(xn)
            fails["sum"] += [a + b for a, b in zip(xs, xn)] != X
            fails["commute"] += any(v != 0 for v in m.bracket(xs, xn))
            fails["squarefree"] += not is_semisimple_matrix(S)
            fails["nilpotent"] += not N.is_nilpotent()
            fails["closure"] += m.to_matrix(X) != S + N
            if m.field.is_finite:
                fails["frobenius"] += frobenius_semisimple_part(m.to_matrix(X)) != S
            nontrivial += any(v != 0 for v in xn)
        c.add(f"c04.jordan.{label}", not any(fails.values()), f"failures {fails}; {nontrivial} with X_n != 0")
    return c.records


def criterion_5(seed: int) -> list[Record]:
    """cocharacter_limit = semisimple part in b+, 0 for nilpotents, Steinberg value preserved."""
    c = _Checks()
    m = build_enhanced_gl(3)
    n = 3
    F = m.field
    rng = SplitMix64(seed).spawn("c5")
    chi = find_positive_cocharacter(weight_data(m).all_weights())
    bad_ss = bad_nil = bad_chi = 0
    for trial in range(200):
        nilpotent = trial >= 100
        d = [F.zero] * n if nilpotent else [F(rng.choice([0, 0, 1, 2, -1])) for _ in range(n)]
        X = m.zero()
        for i in range(n):
            X[i * n + i] = d[i]
            for j in range(i + 1, n):
                if d[i] == d[j]:
                    X[i * n + j] = F.random(rng)
            if d[i] == 0:
                X[n * n + i] = F.random(rng)
        lim = cocharacter_limit(m, chi, X)
        if nilpotent:
            bad_nil += any(v != 0 for v in lim)
        else:
            bad_ss += lim != jordan_chevalley(m, X).semisimple_part
        bad_chi += steinberg_map(m, X) != steinberg_map(m, lim)
    c.add("c05.limit-is-semisimple-part", bad_ss == 0, f"{bad_ss} of 100 differ")
    c.add("c05.nilpotent-limit-zero", bad_nil == 0, f"{bad_nil} of 100 nonzero")
    c.add("c05.steinberg-preserved", bad_chi == 0, f"{bad_chi} of 200 differ")
    return c.records


def criterion_6(seed: int) -> list[Record]:
    """Nilcone membership = nilpotency, and it depends on pr(X) only."""
    c = _Checks()
    for label, m in _chevalley_families():
        rng = SplitMix64(seed).spawn("c6:" + label)
        mismatch = u_dependence = members = 0
        for _ in range(500):
            X = nilcone_test_element(m, rng)
            verdict = nilcone_membership(m, X)
            members += verdict
            mismatch += verdict != is_nilpotent_element(m, X)
            for _ in range(10):
                u_dependence += nilcone_membership(m, resample_u(m, X, rng)) != verdict
        c.add(f"c06.membership-equals-nilpotency.{label}", mismatch == 0, f"{mismatch} mismatches; {members} of 500 in the cone")
        c.add(f"c06.u-independence.{label}", u_dependence == 0, f"{u_dependence} verdict changes")
    return c.records


def criterion_7(seed: int) -> list[Record]:
    """Steinberg fibers hit their targets; semisimple conjugacy decided with replayed witnesses."""
    c = _Checks()
    rng = SplitMix64(seed).spawn("c7")
    bad = 0
    total = 0
    for label, m in _chevalley_families():
        targets = [tuple(m.field.zero for _ in range(m.rank))] + [tuple(m.field.random(rng) for _ in range(m.rank)) for _ in range(2)]
        for a in targets:
            for X in steinberg_fiber_sample(m, a, 100, rng):
                total += 1
                bad += steinberg_map(m, X).values != a
                if all(v == 0 for v in a):
                    bad += not is_nilpotent_element(m, X)
    c.add("c07.fiber-samples", bad == 0, f"{bad} of {total} samples off target")

    agree = reject_fail = 0
    for k in range(50):
        n = 2 + k % 2
        m = build_enhanced_gl(n)
        F = m.field
        d = [F(rng.randint(-3, 3)) for _ in range(n)]
        perm = list(d)
        rng.shuffle(perm)
        X = conjugate_randomly(m, _diag_element(m, d), rng, 3)
        Y = conjugate_randomly(m, _diag_element(m, perm), rng, 3)
        res = semisimple_conjugacy_check(m, X, Y)
        agree += res.conjugate
        d2 = list(d)
        d2[rng.randrange(n)] += F.one
        Z = conjugate_randomly(m, _diag_element(m, d2), rng, 3)
        reject_fail += semisimple_conjugacy_check(m, X, Z).conjugate
    c.add("c07.equal-chi-conjugate", agree == 50, f"{agree} of 50 pairs conjugated with replayed witness")
    c.add("c07.unequal-chi-rejected", reject_fail == 0, f"{reject_fail} of 50 wrongly accepted")
    return c.records


def _diag_element(m: AlgebraModel, d) -> list:
    n = m.params["n"]
    X = m.zero()
    for i, x in enumerate(d):
        X[i * n + i] = x
    return X


def criterion_8(seed: int) -> list[Record]:
    """Bruhat cell census for enhanced gl(2) over F_2 and GL(2, F_3)."""
    c = _Checks()
    m = build_enhanced_gl(2, GF(2))
    census = bruhat_cell_census(m)
    c.add("c08.enhanced-gl2-F2", census == {"e": 8, "s1": 16}, str(census))
    c.add("c08.enhanced-gl2-F2-total", sum(census.values()) == group_order(m) == 24)
    longest = max(census, key=lambda k: len(k))
    c.add("c08.open-cell-unique-largest", max(census.values()) == census[longest] and list(census.values()).count(census[longest]) == 1)
    g = build_parabolic_gl(2, [2], GF(3))
    census3 = bruhat_cell_census(g)
    B = 12
    c.add("c08.gl2-F3", census3 == {"e": B, "s1": 3 * B}, str(census3))
    # rank-condition oracle agrees with the elimination on random invertible matrices
    rng = SplitMix64(seed).spawn("c8")
    bad = 0
    for _ in range(100):
        M = Matrix(QQ, [[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)])
        if M.det() == 0:
            continue
        f = bruhat_factor(M)
        bad += f.weyl != bruhat_rank_oracle(M) or f.recompose() != M
    c.add("c08.rank-oracle", bad == 0, f"{bad} disagreements")
    return c.records


def criterion_9(seed: int) -> list[Record]:
    """Borel counts: regular nilpotents lie in one Borel; flag totals; lifted correspondence."""
    c = _Checks()
    rng = SplitMix64(seed).spawn("c9")
    for n, q in ((2, 2), (2, 3), (3, 2)):
        F = GF(q)
        x = Matrix(F, [[1 if j == i + 1 else 0 for j in range(n)] for i in range(n)])
        res = borel_census(n, q, x, rng, samples=100)
        oracle_count, oracle_total = flag_oracle(n, q, x)
        ok = res.count == 1 == oracle_count and res.total == flag_count(n, q) == oracle_total
        c.add(f"c09.regular-nilpotent.gl{n}-F{q}", ok, str(res.to_json()))
        c.add(f"c09.lifted.gl{n}-F{q}", res.lifted_count == res.count and res.correspondence_failures == 0,
              f"{res.correspondence_checked} membership checks")
    for n, q in ((2, 2), (2, 3), (3, 2)):
        zero = Matrix.zeros(GF(q), n)
        res = borel_census(n, q, zero)
        expected = (1 + q) if n == 2 else (1 + q) * (1 + q + q * q)
        c.add(f"c09.flag-total.gl{n}-F{q}", res.count == res.total == expected, f"{res.total} flags")
    return c.records


def criterion_10(seed: int) -> list[Record]:
    """Degree-truncated invariants: S(g)^g trivial, functions on g match monomials in the F_i."""
    c = _Checks()
    for n in (1, 2):
        m = build_enhanced_gl(n)
        degrees = invariant_family(m).degrees
        expected = [weighted_monomial_count(degrees, d) for d in (1, 2, 3)]
        got = [invariant_space_dimension(m, "functions-on-g", d).dimension for d in (1, 2, 3)]
        dual = [invariant_space_dimension(m, "functions-on-g-dual", d).dimension for d in (1, 2, 3)]
        c.add(f"c10.functions-on-g.enhanced-gl({n})", got == expected, f"dims {got}, monomial count {expected}")
        c.add(f"c10.symmetric-algebra-trivial.enhanced-gl({n})", dual == [0, 0, 0], f"dims {dual}")
    return c.records


CRITERIA: dict[int, Callable[[int], list[Record]]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}
BUDGETS = {1: 20, 2: 5, 3: 30, 4: 30, 5: 10, 6: 20, 7: 20, 8: 10, 9: 30, 10: 60}
SUITES = {
    "chevalley": (1, 2),
    "positivity": (3,),
    "jordan": (4, 5),
    "nilcone": (6, 7),
    "bruhat": (8,),
    "borel": (9,),
    "sg-contrast": (10,),
}
SUITES["all"] = tuple(range(1, 11))


def run_criterion(k: int, seed: int) -> tuple[list[Record], float]:
    t0 = time.perf_counter()
    try:
        records = CRITERIA[k](seed)
    except Exception as exc:  # a crash is a failed criterion, not a crashed runner
        records = [Record(f"c{k:02d}.error", "fail", f"{type(exc).__name__}: {exc}")]
    elapsed = time.perf_counter() - t0
    records.append(Record(f"c{k:02d}.budget", "pass" if elapsed < BUDGETS[k] else "fail",
                          f"budget {BUDGETS[k]}s", elapsed))
    return records, elapsed


def run_suite(name: str, seed: int, progress=None) -> list[Record]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    out: list[Record] = []
    for k in SUITES[name]:
        if progress:
            progress(f"criterion {k} ...")
        records, elapsed = run_criterion(k, seed)
        if progress:
            status = "pass" if all(r.status == "pass" for r in records) else "FAIL"
            progress(f"criterion {k}: {status} ({elapsed:.1f}s)")
        out.extend(records)
    return sorted(out, key=lambda r: r.name)
