import os
import random
import stat
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import BOWTIE, random_polygons_with_crossings, solver_available
from isocurve.codes import NotRealizable, SignedCrossingCode, image_graph
from isocurve.polyscan import extract_codes, is_generic, is_isotopic
from isocurve.reduce import WiringDiagram, curve_from_arrangement
from isocurve.straighten import (
    ModelParseFailure,
    SolverUnavailable,
    check_m,
    curve_tour,
    draw_image_graph,
    min_polygon_search,
    parse_model,
    run_solver,
    straighten_upperbound,
)

needs_solver = pytest.mark.skipif(not solver_available(), reason="no SMT solver configured")


def fake_solver(tmp_path, reply: str) -> str:
    path = tmp_path / "fake-solver"
    body = reply.replace("'", "'\\''")
    path.write_text(f"#!/bin/sh\nprintf '%s' '{body}'\n")
    path.chmod(path.stat().st_mode | stat.S_IEXEC)
    return str(path)


def bowtie_model() -> str:
    lines = ["sat", "("]
    for i, p in enumerate(BOWTIE.vertices, 1):
        for name, v in ((f"x{i}", p.x), (f"y{i}", p.y)):
            txt = f"{abs(v.numerator)}.0" if v.denominator == 1 else f"(/ {abs(v.numerator)}.0 {v.denominator}.0)"
            if v < 0:
                txt = f"(- {txt})"
            lines.append(f"  (define-fun {name} () Real {txt})")
    lines.append(")")
    return "\n".join(lines) + "\n"


def test_simple_curve_gives_a_triangle():
    res = straighten_upperbound(SignedCrossingCode.empty())
    assert res.verified and res.vertex_count == 3


def test_figure_eight(fig8):
    res = straighten_upperbound(fig8)
    assert res.verified
    assert res.vertex_count <= 6
    assert is_isotopic(res.polygon, fig8)


def test_three_wire_curve():
    c = curve_from_arrangement(WiringDiagram(3, [1, 2, 1]))
    res = straighten_upperbound(c)
    assert res.verified and res.vertex_count <= 6 * c.n
    assert is_generic(res.polygon) and is_isotopic(res.polygon, c)


def test_tour_visits_each_crossing_twice(fig8):
    c = curve_from_arrangement(WiringDiagram(3, [1, 2, 1]))
    pts, _ = draw_image_graph(c)
    tour = curve_tour(c, pts)
    assert len(tour) == 6 * c.n
    assert len(set(tour)) == 6 * c.n - c.n


def test_unrealizable_code():
    with pytest.raises(NotRealizable):
        straighten_upperbound(SignedCrossingCode([4, 5, 6, 1, 2, 3], [1, 1, 1, -1, -1, -1]))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_bound_on_random_curves(seed):
    (P,) = random_polygons_with_crossings(random.Random(seed), 1, max_n=6)
    code = extract_codes(P)[0].code
    res = straighten_upperbound(code, seed=seed)
    assert res.verified
    assert res.vertex_count <= 6 * code.n
    assert image_graph(code).euler_characteristic() == 2


def test_parse_model_forms():
    text = (
        "sat\n(\n"
        "  (define-fun x1 () Real (root-obj (+ (^ x 2) (- 2)) 2))\n"
        "  (define-fun y1 () Real (/ (- 3.0) 4.0))\n"
        "  (define-fun x2 () Real (- 2.5))\n"
        "  (define-fun y2 () Real 7)\n"
        "  (define-fun flag () Bool true)\n"
        ")\n"
    )
    vals = parse_model(text)
    assert vals["y1"] == Fraction(-3, 4)
    assert vals["x2"] == Fraction(-5, 2)
    assert vals["y2"] == 7
    assert abs(vals["x1"] - Fraction(14142135623730950488, 10**19)) < Fraction(1, 10**18)
    assert "flag" not in vals


def test_parse_model_failures():
    with pytest.raises(ModelParseFailure):
        parse_model("sat\n((define-fun x1 () Real 1.0)")
    with pytest.raises(ModelParseFailure):
        parse_model("sat\n()")


def test_missing_solver(fig8):
    with pytest.raises(SolverUnavailable):
        run_solver("(check-sat)\n", cmd="/nonexistent/solver-binary")
    rep = min_polygon_search(fig8, 4, cmd="/nonexistent/solver-binary")
    assert not rep.solver_available
    assert rep.best_m == rep.upper_bound <= 6


def test_fake_unsat_solver(tmp_path, fig8):
    cmd = fake_solver(tmp_path, "unsat\n")
    assert check_m(fig8, 3, cmd=cmd).status == "unsat"


def test_fake_sat_solver_witness_is_reverified(tmp_path, fig8):
    cmd = fake_solver(tmp_path, bowtie_model())
    out = check_m(fig8, 4, cmd=cmd)
    assert out.status == "sat"
    assert is_isotopic(out.witness, fig8)
    # the same model claimed for the mirror curve fails exact re-verification
    assert check_m(fig8.mirror(), 4, cmd=cmd).status == "unknown"


def test_garbled_solver_output(tmp_path, fig8):
    assert check_m(fig8, 4, cmd=fake_solver(tmp_path, "segfault\n")).status == "unknown"


@pytest.mark.solver
@needs_solver
def test_figure_eight_minimum_is_four(fig8):
    rep = min_polygon_search(fig8, 6, timeout=60)
    assert rep.outcome(3).status == "unsat"
    assert rep.outcome(4).status == "sat"
    assert rep.best_m == 4
    assert is_isotopic(rep.outcome(4).witness, fig8)
