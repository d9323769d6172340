"""Acceptance criteria, one test each. A summary line per criterion is printed at the end of the run."""

import time

from heyting.algebra import heyting_from_upsets
from heyting.catalog import (FORBIDDEN, decide_equations, decide_generated, named,
                             truncated_counterexample)
from heyting.census import all_posets, posets_up_to, random_posets
from heyting.classifiers import is_cascade, is_diamond_algebra, three_point_rule_upsets
from heyting.duality import (check_pmorphism, gamma_iso, in_SH_oracle, jankov_valid,
                             pmorphic_image_of_upset, prime_spectrum)
from heyting.errors import RouteDisagreement
from heyting.formulas import Equation, depth_formula, godel_dummett, valid_on_poset, weak_peirce, width_formula
from heyting.poset import chain, depth, isomorphic, mask_of, width

from conftest import record

LIMIT_FIGURES = 1.0
LIMIT_ROUND_TRIP = 60.0
LIMIT_JANKOV_ORACLE = 300.0
LIMIT_DECISIONS = 10.0
LIMIT_DW_FORMULAS = 300.0


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_01_figure_fidelity():
    expected_sizes = {"P1": 10, "P2": 8, "P3": 5, "P4": 9}
    expected_dw = {"P1": (3, 3), "P2": (4, 2), "P3": (2, 2), "P4": (4, 2), "P5": (3, 2),
                   "P6": (3, 2), "P7": (3, 3)}
    for m in range(1, 7):
        expected_dw[f"F{m}"] = (2, m)
        expected_dw[f"D{m}"] = (3, m)

    def run():
        bad = [k for k, s in expected_sizes.items() if heyting_from_upsets(named(k)).size != s]
        bad += [k for k, dw in expected_dw.items() if (depth(named(k)), width(named(k))) != dw]
        return bad

    bad, dt = _timed(run)
    ok = not bad and dt < LIMIT_FIGURES
    record(1, "figure fidelity: upset counts, depth and width", ok, f"{dt:.3f}s, mismatches {bad}")
    assert not bad
    assert dt < LIMIT_FIGURES


def test_02_duality_round_trip():
    def run():
        corpus = [X for n in range(6) for X in all_posets(n)] + random_posets(200, 8, seed=2024)
        failures = 0
        for X in corpus:
            g = gamma_iso(heyting_from_upsets(X))  # raises if gamma is not an isomorphism
            if isomorphic(g.spectrum, X) is None:
                failures += 1
        return failures, len(corpus)

    (failures, count), dt = _timed(run)
    ok = failures == 0 and dt < LIMIT_ROUND_TRIP
    record(2, "spectrum of Up(X) is X and gamma is certified", ok, f"{count} posets, {failures} failures, {dt:.1f}s")
    assert failures == 0
    assert dt < LIMIT_ROUND_TRIP


def test_03_jankov_matches_sh_oracle():
    def run():
        As = posets_up_to(4, rooted=True)
        Bs = [X for n in range(6) for X in all_posets(n)]
        bad = []
        for B in Bs:
            for A in As:
                if jankov_valid(B, A).valid == in_SH_oracle(A, B):
                    bad.append((A, B))
        return bad, len(As) * len(Bs)

    (bad, pairs), dt = _timed(run)
    ok = not bad and dt < LIMIT_JANKOV_ORACLE
    record(3, "Jankov validity equals not-in-SH oracle", ok, f"{pairs} pairs, {len(bad)} disagreements, {dt:.1f}s")
    assert not bad
    assert dt < LIMIT_JANKOV_ORACLE


def test_04_diamond_routes_agree():
    disagreements = 0
    rooted = posets_up_to(6, rooted=True)
    for X in rooted:
        try:
            is_diamond_algebra(heyting_from_upsets(X))
        except RouteDisagreement:
            disagreements += 1
    record(4, "diamond characterizations agree on rooted posets", disagreements == 0,
           f"{len(rooted)} posets, {disagreements} disagreements")
    assert disagreements == 0


def test_05_cascade_and_weak_peirce():
    corpus = [X for n in range(7) for X in all_posets(n)]
    bad = 0
    for X in corpus:
        rule = three_point_rule_upsets(X).verdict
        jank = all(jankov_valid(X, named(t)).valid for t in ("P2", "P5", "P6"))
        peirce = valid_on_poset(X, weak_peirce()).valid
        if not rule == jank == peirce:
            bad += 1
    record(5, "three point rule, Jankov P2/P5/P6 and weak Peirce agree", bad == 0,
           f"{len(corpus)} posets, {bad} disagreements")
    assert bad == 0


def test_06_p7_remark():
    P7 = named("P7")
    f3 = jankov_valid(P7, named("F3")).valid
    d3 = jankov_valid(P7, named("D3")).valid
    w = width(P7)
    ok = f3 and d3 and w == 3
    record(6, "Up(P7) validates J(F3) and J(D3) yet has width 3", ok, f"J(F3) {f3}, J(D3) {d3}, width {w}")
    assert ok


def test_07_named_images():
    d3_is_p1 = isomorphic(named("D3"), named("P1")) is not None
    found = []
    for src in ("P5", "P6"):
        r = pmorphic_image_of_upset(named("P3"), named(src))
        if r.found:
            r.witness.verify()
        found.append(r.found)
    not_chain = not pmorphic_image_of_upset(named("P3"), chain(6)).found
    ok = d3_is_p1 and all(found) and not_chain
    record(7, "D3 = P1; P3 is an image of upsets of P5 and P6, not of chain6", ok,
           f"D3~P1 {d3_is_p1}, P5 {found[0]}, P6 {found[1]}, chain6 excluded {not_chain}")
    assert ok


def _recheck(A, name, witness) -> bool:
    """The reported map is a p-morphism from an upset of the spectrum of A onto P_i."""
    Y = prime_spectrum(A)
    U = mask_of(witness["upset"])
    if not Y.is_upset(U):
        return False
    f = check_pmorphism(witness["map"], Y.subposet(U), named(name))
    return f.surjective


def test_08_decision_procedures():
    def run():
        results = {}
        v = decide_equations([Equation(godel_dummett())])
        results["GD axiom"] = v.answer and all(e["refuted_by"] for e in v.evidence)
        results["no axioms"] = not decide_equations([]).answer
        results["chain4"] = decide_generated([heyting_from_upsets(chain(4))]).answer
        for name in FORBIDDEN:
            A = heyting_from_upsets(named(name))
            v = decide_generated([A])
            wit = [e for e in v.evidence if e["jankov"] == name][0]
            results[f"Up({name})"] = not v.answer and not wit["valid"] and _recheck(A, name, wit["witness"])
        return results

    results, dt = _timed(run)
    ok = all(results.values()) and dt < LIMIT_DECISIONS
    record(8, "decision procedures give the expected verdicts", ok,
           f"{sum(results.values())}/{len(results)} correct, {dt:.2f}s")
    assert all(results.values()), results
    assert dt < LIMIT_DECISIONS


def test_09_depth_width_formulas():
    def run():
        bad = 0
        count = 0
        for X in (X for n in range(1, 7) for X in all_posets(n)):
            count += 1
            for n in (1, 2, 3):
                if valid_on_poset(X, depth_formula(n)).valid != (depth(X) <= n):
                    bad += 1
                if valid_on_poset(X, width_formula(n)).valid != (width(X) <= n):
                    bad += 1
        return bad, count

    (bad, count), dt = _timed(run)
    ok = bad == 0 and dt < LIMIT_DW_FORMULAS
    record(9, "depth and width formulas match depth and width", ok, f"{count} posets, {bad} disagreements, {dt:.1f}s")
    assert bad == 0
    assert dt < LIMIT_DW_FORMULAS


def test_10_truncations():
    failures = []
    for case in FORBIDDEN:
        for N in (4, 5, 6):
            try:
                w = truncated_counterexample(case, N)
                w.verify()
                if jankov_valid(w.poset, named(case)).valid:
                    failures.append((case, N, "Jankov formula holds"))
            except Exception as e:  # any failure counts against the criterion
                failures.append((case, N, repr(e)))
    record(10, "truncated counterexamples verify and refute their Jankov formula", not failures,
           f"12 cases, {len(failures)} failures")
    assert not failures
