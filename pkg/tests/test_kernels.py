import numpy as np
import pytest

from newsauth._kernels import available_backends, get_backend

BACKENDS = available_backends()
HAS_COMPILED = "compiled" in BACKENDS


def random_gate_inputs(rng, batch=7, hidden=5):
    z = rng.normal(size=(batch, 4 * hidden))
    c_prev = rng.normal(size=(batch, hidden))
    return z, c_prev


class TestPythonBackend:
    """Semantics checks runnable against the always-available fallback."""

    def test_forward_matches_formulas(self):
        backend = get_backend("python")
        rng = np.random.default_rng(0)
        z, c_prev = random_gate_inputs(rng)
        gates, c, h = backend.lstm_gates_forward(z, c_prev)
        H = c_prev.shape[1]

        def sig(x):
            return 1.0 / (1.0 + np.exp(-x))

        i, f = sig(z[:, :H]), sig(z[:, H:2 * H])
        g, o = np.tanh(z[:, 2 * H:3 * H]), sig(z[:, 3 * H:])
        np.testing.assert_allclose(c, f * c_prev + i * g, rtol=1e-14)
        np.testing.assert_allclose(h, o * np.tanh(c), rtol=1e-14)
        np.testing.assert_allclose(gates[:, :H], i, rtol=1e-14)

    def test_split_scan_simple(self):
        backend = get_backend("python")
        grad = np.array([0.5, 0.5, -0.5, -0.5])
        hess = np.array([0.25, 0.25, 0.25, 0.25])
        values = np.array([1.0, 2.0, 3.0, 4.0])
        gain, threshold, left = backend.gbt_split_scan(grad, hess, values, 1.0, 0.0)
        assert threshold == 2.5
        assert left == 2
        assert gain == pytest.approx(0.5 * (1.0 / 1.5 + 1.0 / 1.5), abs=1e-12)

    def test_split_scan_respects_duplicates(self):
        backend = get_backend("python")
        grad = np.array([0.5, -0.5, -0.5])
        hess = np.array([0.25, 0.25, 0.25])
        values = np.array([1.0, 1.0, 2.0])
        gain, threshold, left = backend.gbt_split_scan(grad, hess, values, 1.0, 0.0)
        assert threshold == 1.5
        assert left == 2

    def test_split_scan_min_child_weight(self):
        backend = get_backend("python")
        grad = np.array([0.5, -0.5])
        hess = np.array([0.25, 0.25])
        values = np.array([1.0, 2.0])
        gain, _, _ = backend.gbt_split_scan(grad, hess, values, 1.0, 0.5)
        assert gain == -np.inf


@pytest.mark.skipif(not HAS_COMPILED, reason="compiled extension not built")
class TestBackendEquivalence:
    def test_gates_forward(self):
        rng = np.random.default_rng(1)
        z, c_prev = random_gate_inputs(rng, batch=9, hidden=8)
        results = [
            get_backend(name).lstm_gates_forward(z.copy(), c_prev.copy())
            for name in ("python", "compiled")
        ]
        for a, b in zip(*results):
            np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-15)

    def test_gates_backward(self):
        rng = np.random.default_rng(2)
        z, c_prev = random_gate_inputs(rng, batch=6, hidden=4)
        outputs = {}
        for name in ("python", "compiled"):
            backend = get_backend(name)
            gates, c, _ = backend.lstm_gates_forward(z.copy(), c_prev.copy())
            dh = rng.normal(size=c_prev.shape) * 0 + 0.3  # fixed direction
            dc = np.full_like(c_prev, -0.2)
            outputs[name] = backend.lstm_gates_backward(dh, dc, gates, c, c_prev)
        for a, b in zip(outputs["python"], outputs["compiled"]):
            np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-15)

    def test_split_scan_agrees_exactly(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            n = rng.integers(2, 30)
            values = np.sort(np.round(rng.normal(size=n), 2))
            grad = rng.normal(size=n)
            hess = rng.random(n) * 0.25
            args = (grad, hess, values, 1.0, 0.0)
            assert get_backend("python").gbt_split_scan(*args) == \
                get_backend("compiled").gbt_split_scan(*args)
