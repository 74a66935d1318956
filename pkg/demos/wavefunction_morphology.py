"""Show how eigenfunctions deform along a loop around the singular point.

Following the level that starts as the ground state around the loop: it
begins node-free, picks up one node each time the loop crosses the line
beta = 0 (where the interaction decouples the two sides of the box), and
ends with two nodes -- it has become the old second excited state.
Profiles are sketched in ASCII at four loop stations.
"""

import math

import numpy as np

from pointbox import (
    Domain,
    SliceCoords,
    evaluate,
    node_count,
    polar_loop,
    trace_path,
    wavefunction_slice,
)
from pointbox.spectrum import EnergyLevel

DOM = Domain(1.0, 0.618034)
RHO = 0.5


def sketch(wf, width=72, height=9):
    xs = np.linspace(-DOM.r * DOM.L, (1 - DOM.r) * DOM.L, width)
    ys = evaluate(wf, xs)
    top = max(1e-12, float(np.abs(ys).max()))
    rows = [[" "] * width for _ in range(height)]
    mid = height // 2
    for c, y in enumerate(ys):
        rows[mid][c] = "-"
        r = mid - round(y / top * mid)
        rows[min(max(r, 0), height - 1)][c] = "*"
    rows[mid][round(DOM.r / DOM.L * (width - 1))] = "|"
    return "\n".join("".join(r) for r in rows)


def main():
    loop = polar_loop(-1.0, RHO, n_steps=400)
    gs = trace_path(loop, DOM, 1)[0]
    stations = [(0.05, "t=0.05 (start region)"),
                (0.20, "t=0.20 (just before beta=0)"),
                (0.30, "t=0.30 (just after beta=0)"),
                (0.80, "t=0.80 (after second crossing)")]
    for t_target, label in stations:
        i = min(range(len(gs.samples)),
                key=lambda j: abs(gs.samples[j][0] - t_target))
        t, energy = gs.samples[i]
        theta = 2.0 * math.pi * t
        pt = SliceCoords(-1.0, -1.0 - RHO * math.sin(theta), RHO * math.cos(theta))
        wf = wavefunction_slice(EnergyLevel(gs.indices[i], energy), pt, DOM)
        print(f"{label}: E = {energy:.4f}, spectral index = {gs.indices[i]}, "
              f"nodes = {node_count(wf)}")
        print(sketch(wf))
        print()
    print("the '|' tick marks the interaction point x = 0; each beta = 0 "
          "crossing adds one node to the tracked state, and its spectral "
          "index rises as new levels emerge from below.")


if __name__ == "__main__":
    main()
