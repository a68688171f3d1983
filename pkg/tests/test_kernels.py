import os
import subprocess
import sys

import numpy as np
import pytest

from corrdyn import _kernels
from corrdyn.channels import ChannelKind, ChannelSpec
from corrdyn.states import make_state, to_density_matrix

from oracles import conditional_entropy as cond_oracle, lindblad_exact, random_valid_c, rho_of

compiled = _kernels.compiled_backend  # kernel rate argument is gamma / 2
needs_ext = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def _stack(rng, n):
    return np.array([rho_of(c) for c in random_valid_c(rng, n)], dtype=complex)


@pytest.mark.parametrize("kind", list(ChannelKind))
def test_python_rk4_matches_expm(rng, kind):
    ops = ChannelSpec(kind).jump_operators()
    rho0 = rho_of(random_valid_c(rng, 1)[0])
    got = _kernels.python_backend.rk4_dissipator(rho0, ops, 0.5, 1e-3, 400, 0.0)
    np.testing.assert_allclose(got, lindblad_exact(rho0, kind.value, 1.0, 0.4), atol=1e-12, rtol=0)


def test_python_rk4_partial_last_step(rng):
    ops = ChannelSpec("phase").jump_operators()
    rho0 = rho_of(random_valid_c(rng, 1)[0])
    got = _kernels.python_backend.rk4_dissipator(rho0, ops, 0.5, 1e-3, 100, 5e-4)
    np.testing.assert_allclose(got, lindblad_exact(rho0, 3, 1.0, 0.1005), atol=1e-12, rtol=0)


def test_python_conditional_entropy_grid_matches_oracle(rng):
    rho = rho_of(random_valid_c(rng, 1)[0])
    thetas, phis = np.linspace(0, np.pi / 2, 5), np.linspace(0, 2 * np.pi, 7)
    grid = _kernels.python_backend.conditional_entropy_grid(rho, thetas, phis)
    assert grid.shape == (5, 7)
    for i, t in enumerate(thetas):
        for j, p in enumerate(phis):
            assert grid[i, j] == pytest.approx(cond_oracle(rho, t, p), abs=1e-12)


@needs_ext
@pytest.mark.parametrize("kind", list(ChannelKind))
def test_backends_agree_on_rk4(rng, kind):
    ops = ChannelSpec(kind, 1.3).jump_operators()
    stack = _stack(rng, 8)
    a = compiled.rk4_dissipator(stack, ops, 1.3, 1e-3, 250, 3e-4)
    b = _kernels.python_backend.rk4_dissipator(stack, ops, 1.3, 1e-3, 250, 3e-4)
    np.testing.assert_allclose(a, b, atol=1e-14, rtol=0)
    single = compiled.rk4_dissipator(stack[0], ops, 1.3, 1e-3, 250, 3e-4)
    assert single.shape == (4, 4)
    np.testing.assert_allclose(single, a[0], atol=1e-15, rtol=0)


@needs_ext
def test_backends_agree_on_dense_operators(rng):
    # a non-monomial jump operator exercises the general matrix path
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    ops = np.array([np.kron(h, np.eye(2)), np.kron(np.eye(2), h)])
    stack = _stack(rng, 4)
    a = compiled.rk4_dissipator(stack, ops, 0.7, 1e-3, 100)
    b = _kernels.python_backend.rk4_dissipator(stack, ops, 0.7, 1e-3, 100)
    np.testing.assert_allclose(a, b, atol=1e-14, rtol=0)


@needs_ext
def test_backends_agree_on_conditional_entropy(rng):
    thetas, phis = np.linspace(0, np.pi / 2, 17), np.linspace(0, 2 * np.pi, 23)
    for rho in _stack(rng, 10):
        a = compiled.conditional_entropy_grid(rho, thetas, phis)
        b = _kernels.python_backend.conditional_entropy_grid(rho, thetas, phis)
        np.testing.assert_allclose(a, b, atol=1e-13, rtol=0)


@needs_ext
def test_compiled_backend_is_default():
    if os.environ.get("CORRDYN_PURE_PYTHON", "") in ("", "0"):
        assert _kernels.BACKEND == "cython"


def test_rk4_keeps_identity_fixed():
    ops = ChannelSpec("bitphase").jump_operators()
    out = _kernels.rk4_dissipator(np.eye(4, dtype=complex) / 4, ops, 2.0, 1e-2, 50)
    np.testing.assert_allclose(out, np.eye(4) / 4, atol=1e-16)


def test_environment_flag_selects_fallback():
    env = dict(os.environ, CORRDYN_PURE_PYTHON="1")
    code = "import corrdyn._kernels as k; print(k.BACKEND, k.compiled_backend is None)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "True"]


def test_fallback_gives_same_physics():
    env = dict(os.environ, CORRDYN_PURE_PYTHON="1")
    code = (
        "from corrdyn.channels import integrate, ChannelSpec\n"
        "from corrdyn.states import make_state, to_density_matrix\n"
        "import numpy as np\n"
        "r = integrate(to_density_matrix(make_state(1, -0.6, 0.6)), ChannelSpec('phase'), 0.25)\n"
        "print(repr(float(r[0, 3].real)))\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    here = _kernels.rk4_dissipator(
        to_density_matrix(make_state(1, -0.6, 0.6)), ChannelSpec("phase").jump_operators(), 0.5, 1e-4, 2500
    )
    assert float(out.stdout) == pytest.approx(here[0, 3].real, abs=1e-15)
