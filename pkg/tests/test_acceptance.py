"""One test per acceptance criterion; a PASS/FAIL line for each is printed at the end of the run."""

import random
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE, BOWTIE, FIG8, random_polygons_with_crossings, solver_available
from isocurve.codes import codes_isotopic, validate
from isocurve.etrc import coded_polygon, crossing_order, crossing_signs, evaluate, good_polygon, stats, witness_assignment
from isocurve.exact_geom import CrossingSign, Point, Segment, crossing_sign, segments_cross
from isocurve.polyscan import extract_codes, is_isotopic
from isocurve.reduce import WiringDiagram, curve_from_arrangement, random_arrangement, ringel, stapled, wiring_of_lines
from isocurve.straighten import check_m, straighten_upperbound


def record(k, ok, detail):
    ACCEPTANCE[k] = (ok, detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_criterion_1_predicate_identities():
    rng = random.Random(1)

    def q():
        return Fraction(rng.randint(-60, 60), rng.randint(1, 7))

    t0 = time.perf_counter()
    pairs = failures = 0
    while pairs < 10_000:
        a, b, c, d = (Point(q(), q()) for _ in range(4))
        if a == b or c == d:
            continue
        e, f = Segment(a, b), Segment(c, d)
        s, r = crossing_sign(e, f), crossing_sign(f, e)
        if (s is CrossingSign.POSITIVE) != (r is CrossingSign.NEGATIVE):
            failures += 1
        if segments_cross(e, f) != (s is not CrossingSign.NONE):
            failures += 1
        pairs += 1
    dt = time.perf_counter() - t0
    record(1, failures == 0 and dt < 5, f"{pairs} segment pairs, {failures} failures, {dt:.2f}s")


def test_criterion_2_figure_eight_end_to_end():
    t0 = time.perf_counter()
    exs = extract_codes(BOWTIE)
    code = exs[0].code
    ok = validate(code).valid and code.n == 1 and codes_isotopic(code, FIG8)
    ex = next(e for e in exs if e.code == FIG8)
    env = witness_assignment(ex.polygon, ex.edge.entries)
    holds = evaluate(coded_polygon(FIG8.twin, FIG8.sign, 4), env)
    flipped = evaluate(coded_polygon(FIG8.twin, (1, -1), 4), env)
    dt = time.perf_counter() - t0
    ok = ok and holds and not flipped and dt < 1
    record(2, ok, f"code {code.to_dict()}, formula under witness {holds}, after sign flip {flipped}, {dt:.2f}s")


def test_criterion_3_six_n_bound():
    polys = random_polygons_with_crossings(random.Random(3), 50, max_n=6)
    t0 = time.perf_counter()
    failures = []
    worst = 0.0
    for k, P in enumerate(polys):
        code = extract_codes(P)[0].code
        res = straighten_upperbound(code, seed=k)
        worst = max(worst, res.vertex_count / (6 * code.n))
        if not (res.verified and res.vertex_count <= 6 * code.n and is_isotopic(res.polygon, code)):
            failures.append(k)
    dt = time.perf_counter() - t0
    record(3, not failures and dt < 60, f"50 curves, {len(failures)} failures, max vertices/6n {worst:.2f}, {dt:.1f}s")


def test_criterion_4_staple_oracle():
    rng = random.Random(4)
    t0 = time.perf_counter()
    runs = failures = 0
    for n in (3, 5):
        for k in range(5):
            L = random_arrangement(n, rng)
            res = stapled(L, seed=k)
            target = curve_from_arrangement(wiring_of_lines(L))
            if not any(codes_isotopic(ex.code, target) for ex in extract_codes(res.polygon)):
                failures += 1
            runs += 1
    dt = time.perf_counter() - t0
    record(4, failures == 0 and dt < 60, f"{runs} arrangements (n=3,5), {failures} failures, {dt:.1f}s")


def test_criterion_5_nine_wire_count():
    t0 = time.perf_counter()
    c = curve_from_arrangement(ringel())
    dt = time.perf_counter() - t0
    record(5, c.n == 54 and dt < 1, f"{c.n} crossings (expected 36 + 18), {dt:.3f}s")


def test_criterion_6_growth_rates():
    t0 = time.perf_counter()

    def ratio(build):
        return stats(build(32)).atoms / stats(build(16)).atoms

    g = ratio(good_polygon)
    s = ratio(lambda m: crossing_signs(FIG8.twin, FIG8.sign, m))
    o = ratio(lambda m: crossing_order(FIG8.twin, m, prune=False))
    pruned = ratio(lambda m: crossing_order(FIG8.twin, m))
    dt = time.perf_counter() - t0
    ok = 6.5 <= g <= 9.5 and 3.4 <= s <= 4.6 and 6.5 <= o <= 9.5 and dt < 10
    record(
        6,
        ok,
        f"good_polygon {g:.2f}, crossing_signs {s:.2f}, crossing_order {o:.2f} "
        f"(literal; pruned variant {pruned:.2f} for information), {dt:.1f}s",
    )


def test_criterion_7_solver_round_trip():
    if not solver_available():
        ACCEPTANCE[7] = (True, "SOLVER_UNAVAILABLE (skipped)")
        pytest.skip("SOLVER_UNAVAILABLE")
    sat = check_m(FIG8, 4, timeout=60)
    unsat = check_m(FIG8, 3, timeout=60)
    ok = sat.status == "sat" and sat.witness is not None and is_isotopic(sat.witness, FIG8) and unsat.status == "unsat"
    record(7, ok, f"m=4 {sat.status} (witness re-verified: {sat.witness is not None}), m=3 {unsat.status}")


def test_criterion_8_lower_bound_at_desk_scale():
    code = curve_from_arrangement(WiringDiagram(3, [1, 2, 1]))
    res = straighten_upperbound(code)
    upper_ok = res.verified and res.vertex_count <= 54
    parts = [f"straighten {res.vertex_count} vertices verified={res.verified}"]
    ok = upper_ok
    if solver_available():
        for m in (10, 11):
            out = check_m(code, m, timeout=60)
            parts.append(f"m={m} {out.status}")
            if out.status == "sat" and out.witness is not None:
                ok = False
    else:
        parts.append("solver checks SOLVER_UNAVAILABLE")
    record(8, ok, ", ".join(parts))
