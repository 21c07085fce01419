import os
import random
import subprocess
import sys

import numpy as np
import pytest

from twistbracket import kernel
from twistbracket.generate import random_plat, random_wiring_diagram


def _rows(d):
    order = d.site_vertices + d.crossing_vertices
    rows = ([], [])
    for v in order:
        vert = d.vertices[v]
        for bit in (0, 1):
            (p, q), (r, s) = vert.smoothing(bit)
            rows[bit].append((vert.ports[p], vert.ports[q], vert.ports[r], vert.ports[s]))
    return rows


def test_backend_name():
    assert kernel.BACKEND in ("cython", "python")


@pytest.mark.skipif(kernel.BACKEND != "cython", reason="compiled kernel not built")
@pytest.mark.parametrize("seed", range(25))
def test_compiled_matches_reference(seed):
    rng = random.Random(seed)
    if seed % 2:
        nv = rng.randint(1, 8)
        d = random_wiring_diagram(rng, nv, rng.randint(0, min(3, nv)))
    else:
        d = random_plat(rng, rng.randint(1, 3), rng.randint(1, 10), rng.randint(0, 2))
    r0, r1 = _rows(d)
    fast = kernel.state_histogram(r0, r1, d.edge_count, d.k)
    slow = kernel.state_histogram_py(r0, r1, d.edge_count, d.k)
    assert fast.shape == slow.shape
    assert np.array_equal(fast, slow)


def test_histogram_totals():
    rng = random.Random(7)
    d = random_wiring_diagram(rng, 6, 2)
    r0, r1 = _rows(d)
    h = kernel.state_histogram_py(r0, r1, d.edge_count, d.k)
    assert h.shape[0] == 4
    assert all(h[m].sum() == 2 ** d.n_crossings for m in range(4))


def test_fallback_selected_by_env():
    code = ("from twistbracket import kernel; from twistbracket.families import figure_eight_bracket;"
            "print(kernel.BACKEND, figure_eight_bracket().to_text())")
    env = dict(os.environ, TWISTBRACKET_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True).stdout
    assert out.strip() == "python 1*A^8 + -1*A^4 + 1 + -1*A^-4 + 1*A^-8"
