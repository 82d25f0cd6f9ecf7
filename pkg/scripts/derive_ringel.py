"""Derive the built-in 9-pseudoline wiring diagram from a Pappus configuration.

Nine lines: g and h carrying A1..A3 and B1..B3, the six lines AiBj (i != j),
and the line through the three points AiBj ^ AjBi.  Every intersection point
is a double or triple point (nine triple points).  Resolving each triple
point one of two ways gives 512 simple wiring diagrams.

Stretchable ones are discarded in two passes:

1. random small perturbations of the nine lines realize most resolutions;
2. z3 is asked for lines with the same crossing order along every wire,
   after fixing an affine frame (a1 = b1 = 0, a2 = 1, b2 = 0, b3 = +-1).

The survivor whose mirror resolution (every triple point flipped) also
survives is written out.  Its non-stretchability is supported by the
sampling and by the solver failing to find a realization; it is not proved
here.

    python3 scripts/derive_ringel.py [--out src/isocurve/data/ringel9.json]
"""


import argparse
import json
import random
import subprocess
import sys
import tempfile
from fractions import Fraction as F
from itertools import combinations

from isocurve.reduce import WiringDiagram, validate_wiring


def line_through(p, q):
    a = (q[1] - p[1]) / (q[0] - p[0])
    return a, p[1] - a * p[0]


def meet(l1, l2):
    (a1, b1), (a2, b2) = l1, l2
    x = (b2 - b1) / (a1 - a2)
    return x, a1 * x + b1


def pappus_lines():
    A = [(F(-3), F(0)), (F(-1), F(0)), (F(2), F(0))]
    h = (F(1, 3), F(2))
    B = [(x, h[0] * x + h[1]) for x in (F(-5), F(-1, 2), F(4))]
    g = (F(0), F(0))
    named = {"g": g, "h": h}
    for i, j in [(i, j) for i in range(3) for j in range(3) if i != j]:
        named[f"A{i + 1}B{j + 1}"] = line_through(A[i], B[j])
    C = {}
    for i, j in combinations(range(3), 2):
        C[(i, j)] = meet(named[f"A{i + 1}B{j + 1}"], named[f"A{j + 1}B{i + 1}"])
    named["pappus"] = line_through(C[(0, 1)], C[(0, 2)])
    assert meet(named["pappus"], named["A2B3"]) == C[(1, 2)], "Pappus line misses the third point"
    return named


def sweep(lines):
    """Wiring diagram of real lines given as (slope, intercept), or None if degenerate."""
    order = sorted(range(len(lines)), key=lambda k: lines[k][0])
    slopes = [lines[k][0] for k in order]
    if len(set(slopes)) < len(slopes):
        return None, None
    ls = [lines[k] for k in order]
    events = []
    for i, j in combinations(range(len(ls)), 2):
        x, _ = meet(ls[i], ls[j])
        events.append((x, i, j))
    events.sort()
    if any(a[0] == b[0] for a, b in zip(events, events[1:])):
        return None, None
    perm = list(range(len(ls)))
    swaps = []
    for _, i, j in events:
        k = perm.index(i)
        assert perm[k + 1] == j
        swaps.append(k + 1)
        perm[k], perm[k + 1] = j, i
    return swaps, order


def smt_stretchable(w: WiringDiagram) -> str:
    """SMT-LIB query: do lines exist with the same crossing order along every wire?"""
    n = w.n
    out = ["(set-logic QF_NRA)"]
    for k in range(1, n + 1):
        out.append(f"(declare-fun a{k} () Real)")
        out.append(f"(declare-fun b{k} () Real)")
    for k in range(1, n):
        out.append(f"(assert (< a{k} a{k + 1}))")
    along = {k: [] for k in range(1, n + 1)}
    for up, lo in w.crossings():
        along[up].append(lo)
        along[lo].append(up)

    def xnum(k, j):
        # x of the crossing of k and j is (b_j - b_k) / (a_k - a_j)
        return f"(- b{j} b{k})", f"(- a{k} a{j})"

    for k, others in along.items():
        for j, l in zip(others, others[1:]):
            nj, dj = xnum(k, j)
            nl, dl = xnum(k, l)
            # nj/dj < nl/dl with known denominator signs
            sj = 1 if k > j else -1
            sl = 1 if k > l else -1
            rel = "<" if sj * sl > 0 else ">"
            out.append(f"(assert ({rel} (* {nj} {dl}) (* {nl} {dj})))")
    out.append("(check-sat)")
    return "\n".join(out) + "\n"


def z3_says(text: str, timeout: int) -> str:
    with tempfile.NamedTemporaryFile("w", suffix=".smt2", delete=False) as fh:
        fh.write(text)
        path = fh.name
    try:
        res = subprocess.run(["z3", f"-T:{timeout}", path], capture_output=True, text=True, timeout=timeout + 5)
    except (OSError, subprocess.TimeoutExpired):
        return "unknown"
    return res.stdout.strip().splitlines()[0] if res.stdout.strip() else "unknown"


def exact_sweep(lines):
    """Sweep events of the exact configuration: single swaps and triple points."""
    order = sorted(range(len(lines)), key=lambda k: lines[k][0])
    ls = [lines[k] for k in order]
    points = {}
    for i, j in combinations(range(len(ls)), 2):
        points.setdefault(meet(ls[i], ls[j]), set()).update((i, j))
    xs = [p[0] for p in points]
    if len(set(xs)) != len(xs):
        raise ValueError("two intersection points share an abscissa")
    perm = list(range(len(ls)))
    events = []  # ("swap", k) or ("triple", k)
    for p in sorted(points):
        wires = points[p]
        ks = sorted(perm.index(w) for w in wires)
        if ks != list(range(ks[0], ks[0] + len(ks))):
            raise AssertionError("wires through a point must be adjacent")
        if len(ks) == 2:
            events.append(("swap", ks[0] + 1))
        elif len(ks) == 3:
            events.append(("triple", ks[0] + 1))
        else:
            raise ValueError("only double and triple points are expected")
        perm[ks[0]:ks[-1] + 1] = perm[ks[0]:ks[-1] + 1][::-1]
    return events, order


def resolve(events, choice):
    swaps = []
    t = 0
    for kind, k in events:
        if kind == "swap":
            swaps.append(k)
        else:
            swaps += [k, k + 1, k] if (choice >> t) & 1 else [k + 1, k, k + 1]
            t += 1
    return swaps


def frame(w: WiringDiagram) -> str:
    """Affine normalization; the sign of b3 is read off the diagram."""
    along = [lo if up == 1 else up for up, lo in w.crossings() if 1 in (up, lo)]
    # wire 1 meets wire 3 left of x = 0 (its crossing with wire 2) iff b3 > 0
    b3 = "1.0" if along.index(3) < along.index(2) else "(- 1.0)"
    return "".join(f"(assert (= {v} {k}))\n" for v, k in (("a1", "0.0"), ("b1", "0.0"), ("a2", "1.0"), ("b2", "0.0"), ("b3", b3)))


def sampled(lines, events, samples, seed):
    """Resolutions realized by random perturbations of the exact lines."""
    by_swaps = {tuple(resolve(events, c)): c for c in range(512)}
    rng = random.Random(seed)
    seen = set()
    for _ in range(samples):
        s = F(1, 10 ** rng.randint(2, 4))
        moved = [(a + F(rng.randint(-1000, 1000), 1000) * s, b + F(rng.randint(-1000, 1000), 1000) * s) for a, b in lines]
        swaps, _ = sweep(moved)
        if swaps is not None and tuple(swaps) in by_swaps:
            seen.add(by_swaps[tuple(swaps)])
    return seen


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="src/isocurve/data/ringel9.json")
    ap.add_argument("--samples", type=int, default=40000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--timeout", type=int, default=30)
    args = ap.parse_args(argv)

    lines = list(pappus_lines().values())
    events, _ = exact_sweep(lines)
    triples = sum(1 for kind, _ in events if kind == "triple")
    assert triples == 9, triples
    realized = sampled(lines, events, args.samples, args.seed)
    left = {}
    for c in range(1 << triples):
        if c in realized:
            continue
        w = WiringDiagram(9, resolve(events, c))
        assert validate_wiring(w).valid
        verdict = z3_says(smt_stretchable(w).replace("(check-sat)", frame(w) + "(check-sat)"), args.timeout)
        if verdict != "sat":
            left[c] = verdict
    full = (1 << triples) - 1
    paired = sorted(c for c in left if full ^ c in left)
    print(json.dumps({"resolutions": 1 << triples, "realized_by_sampling": len(realized), "undecided": left, "mirror_pairs": paired}))
    if not paired:
        return 1
    w = WiringDiagram(9, resolve(events, paired[0]))
    with open(args.out, "w") as fh:
        json.dump(w.to_dict(), fh, separators=(",", ":"))
        fh.write("\n")
    print(json.dumps(w.to_dict()))
    return 0


if __name__ == "__main__":
    sys.exit(main())
