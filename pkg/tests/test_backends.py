import json
import os
import subprocess
import sys

import numpy as np
import pytest

from bohrlab import _kernels, _pykernels

try:
    from bohrlab import _ckernels
except ImportError:
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled extension not built")


def random_coeffs(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def test_pykernels_horner_matches_polyval():
    rng = np.random.default_rng(0)
    c = random_coeffs(rng, 40)
    z = 0.9 * np.exp(2j * np.pi * rng.random(50))
    assert np.allclose(_pykernels.horner(c, z), np.polyval(c[::-1], z), atol=1e-12)


def test_circle_values_shape_and_origin():
    c = np.array([0.5, 1.0, 0.25], dtype=complex)
    vals = _pykernels.circle_values(c, np.array([0.0, 0.5]), 8)
    assert vals.shape == (2, 8)
    assert np.allclose(vals[0], 0.5)
    assert vals[1, 0] == pytest.approx(0.5 + 0.5 + 0.0625)


@needs_ext
@pytest.mark.parametrize("order", [0, 1, 7, 256, 2048])
def test_backends_agree(order):
    rng = np.random.default_rng(order)
    c = random_coeffs(rng, order + 1) / (1 + np.arange(order + 1))
    radii = np.linspace(0.0, 0.95, 11)
    py = _pykernels.circle_values(c, radii, 64)
    cy = _ckernels.circle_values(c, radii, 64)
    assert np.max(np.abs(py - cy)) <= 1e-12 * max(1.0, np.max(np.abs(py)))
    z = 0.9 * np.exp(2j * np.pi * rng.random((3, 5)))
    assert np.allclose(_ckernels.horner(c, z), _pykernels.horner(c, z), rtol=0, atol=1e-12)


def backend_in_subprocess(**env):
    proc = subprocess.run([sys.executable, "-c", "import bohrlab; print(bohrlab.BACKEND)"],
                          capture_output=True, text=True, check=True, env={**os.environ, **env})
    return proc.stdout.strip()


def test_pure_flag_forces_numpy():
    assert backend_in_subprocess(BOHRLAB_PURE="1") == "python"


@needs_ext
def test_extension_selected_by_default():
    env = {k: v for k, v in os.environ.items() if k != "BOHRLAB_PURE"}
    proc = subprocess.run([sys.executable, "-c", "import bohrlab; print(bohrlab.BACKEND)"],
                          capture_output=True, text=True, check=True, env=env)
    assert proc.stdout.strip() == "cython"
    assert _kernels.BACKEND == ("python" if os.environ.get("BOHRLAB_PURE") == "1" else "cython")


def test_results_independent_of_backend():
    code = ("import json; from bohrlab import radius_value, check_theorem;"
            "rep = check_theorem('lemmaG', samples=10, seed=1);"
            "print(json.dumps([radius_value('theoremD_rstar'), rep.max_violation]))")
    outs = []
    for pure in ("1", "0"):
        proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, check=True,
                              env={**os.environ, "BOHRLAB_PURE": pure})
        outs.append(proc.stdout)
    a, b = (json.loads(o) for o in outs)
    assert a[0] == b[0]
    assert a[1] == pytest.approx(b[1], abs=1e-12)
