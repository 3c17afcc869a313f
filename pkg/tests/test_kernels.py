"""Backend equivalence and numeric-stability tests for the hot kernels."""

import math

import numpy as np
import pytest

from ecsim import kernels
from ecsim.kernels import load_backend

python_backend = load_backend("python")
try:
    compiled_backend = load_backend("compiled")
except ImportError:
    compiled_backend = None

BACKENDS = [python_backend] + ([compiled_backend] if compiled_backend else [])


def test_selection_exposes_backend_name():
    assert kernels.BACKEND in ("python", "compiled")


def test_env_var_forces_python_backend():
    import os
    import subprocess
    import sys

    env = dict(os.environ, ECSIM_KERNELS="python")
    out = subprocess.run(
        [sys.executable, "-c", "from ecsim import kernels; print(kernels.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
    )
    assert out.stdout.strip() == "python"


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        load_backend("fortran")


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
class TestEachBackend:
    def test_parity_origin_values(self, mod):
        assert mod.ghz_parity_correlator(1.0 + 0j, True, 0j, 0j, 0j) == pytest.approx(-1.0)
        assert mod.ghz_parity_correlator(0.6 + 0j, False, 0j, 0j, 0j) == pytest.approx(1.0)

    def test_fock_limit_origin(self, mod):
        assert mod.fock_parity_correlator(0j, 0j, 0j) == pytest.approx(-1.0)

    def test_small_amplitude_dispatch(self, mod):
        bs = (0.2 + 0.1j, -0.3j, 0.4 + 0j)
        assert mod.ghz_parity_correlator(0j, True, *bs) == pytest.approx(
            mod.fock_parity_correlator(*bs), abs=1e-15
        )

    def test_threshold_matches_jkl(self, mod):
        from ecsim.measure import jkl

        rng = np.random.default_rng(9)
        for _ in range(20):
            a = complex(*rng.uniform(-1.5, 1.5, 2))
            bs = [complex(*rng.uniform(-1, 1, 2)) for _ in range(3)]
            c1, c2 = rng.uniform(-1, 1, 2)
            n2 = c1 * c1 + c2 * c2 + 2 * c1 * c2 * math.exp(-6 * abs(a) ** 2)
            if n2 < 1e-3:
                continue
            parts = [jkl(a, b) for b in bs]
            want = (
                c1 * c1 * math.prod(p[0] for p in parts)
                + c2 * c2 * math.prod(p[1] for p in parts)
                + 2 * (c1 * c2 * math.prod(p[2] for p in parts)).real
            ) / n2
            got = mod.ghz_threshold_correlator(a, complex(c1), complex(c2), *bs)
            assert got == pytest.approx(want, abs=1e-12)

    def test_large_amplitude_finite(self, mod):
        # exponents are merged analytically, so nothing under/overflows even
        # where exp(-6|a|^2) alone is subnormal or zero
        x = np.linspace(-0.04, 0.04, 12)
        for a in (11.0, 15.0, 30.0):
            v = mod.mermin_parity(complex(a), True, x)
            assert math.isfinite(v)
        assert math.isfinite(mod.mermin_threshold(8.0 + 0j, 1 + 0j, -1 + 0j, x))

    def test_degenerate_weights_raise(self, mod):
        with pytest.raises(ValueError):
            mod.ghz_threshold_correlator(0j, 1 + 0j, -1 + 0j, 0j, 0j, 0j)


@pytest.mark.skipif(compiled_backend is None, reason="extension not built")
class TestBackendAgreement:
    def test_random_agreement(self):
        rng = np.random.default_rng(17)
        for _ in range(300):
            a = complex(rng.uniform(-4, 4), rng.uniform(-1, 1))
            x = rng.uniform(-1.5, 1.5, 12)
            b = [complex(x[2 * i], x[2 * i + 1]) for i in range(6)]
            minus = bool(rng.integers(0, 2))
            v1 = python_backend.ghz_parity_correlator(a, minus, b[0], b[1], b[2])
            v2 = compiled_backend.ghz_parity_correlator(a, minus, b[0], b[1], b[2])
            assert v1 == pytest.approx(v2, rel=1e-12, abs=1e-15)
            m1 = python_backend.mermin_parity(a, minus, x)
            m2 = compiled_backend.mermin_parity(a, minus, x)
            assert m1 == pytest.approx(m2, rel=1e-12, abs=1e-15)
            t1 = python_backend.mermin_threshold(a, 1 + 0j, -0.5 + 0.2j, x)
            t2 = compiled_backend.mermin_threshold(a, 1 + 0j, -0.5 + 0.2j, x)
            assert t1 == pytest.approx(t2, rel=1e-12, abs=1e-15)
