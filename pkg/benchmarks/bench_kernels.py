"""Benchmark the compiled kernels against the numpy fallback.

Run with:  python benchmarks/bench_kernels.py
"""

import argparse
import time

import numpy as np

from newsauth._kernels import available_backends, get_backend
from newsauth.neural import BiLstmConfig, BiLstmModel


def time_callable(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_gates(backend, batch=32, hidden=64, timesteps=200, repeats=5):
    rng = np.random.default_rng(0)
    z = rng.normal(size=(batch, 4 * hidden))
    c_prev = rng.normal(size=(batch, hidden))
    gates, c, _ = backend.lstm_gates_forward(z, c_prev)
    dh = rng.normal(size=(batch, hidden))
    dc = rng.normal(size=(batch, hidden))

    def forward():
        for _ in range(timesteps):
            backend.lstm_gates_forward(z, c_prev)

    def backward():
        for _ in range(timesteps):
            backend.lstm_gates_backward(dh, dc, gates, c, c_prev)

    return time_callable(forward, repeats), time_callable(backward, repeats)


def bench_split_scan(backend, rows=1000, features=13, repeats=5):
    rng = np.random.default_rng(1)
    grad = rng.normal(size=rows)
    hess = rng.random(rows) * 0.25
    columns = [np.sort(rng.normal(size=rows)) for _ in range(features)]

    def scan():
        for column in columns:
            backend.gbt_split_scan(grad, hess, column, 1.0, 1.0)

    return time_callable(scan, repeats)


def bench_training_epoch(backend_name, repeats=3):
    """One training step of the full-size sequence model, end to end."""
    import importlib
    import os

    os.environ["NEWSAUTH_KERNELS"] = backend_name
    import newsauth._kernels as kernels
    import newsauth.neural.lstm as lstm_module

    importlib.reload(kernels)
    importlib.reload(lstm_module)

    config = BiLstmConfig(vocab_size=30)
    model = lstm_module.BiLstmModel(config)
    params = model.init_params(seed=0)
    rng = np.random.default_rng(0)
    ids = rng.integers(0, 32, size=(32, 200))
    y = (rng.random(32) < 0.5).astype(np.float64)
    masks = model.make_masks(rng, 32)

    def step():
        model.loss_and_grads(params, ids, y, masks=masks)

    step()
    return time_callable(step, repeats)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    print(f"available backends: {', '.join(backends)}\n")

    rows = []
    for name in backends:
        backend = get_backend(name)
        fwd, bwd = bench_gates(backend, repeats=args.repeats)
        scan = bench_split_scan(backend, repeats=args.repeats)
        rows.append((name, fwd, bwd, scan))

    print(f"{'backend':10s} {'gate fwd x200':>14s} {'gate bwd x200':>14s} {'split scan 13x1k':>17s}")
    for name, fwd, bwd, scan in rows:
        print(f"{name:10s} {fwd * 1e3:12.2f}ms {bwd * 1e3:12.2f}ms {scan * 1e3:15.2f}ms")
    if len(rows) == 2:
        compiled = next(r for r in rows if r[0] == "compiled")
        python = next(r for r in rows if r[0] == "python")
        print(f"\nspeedups (compiled vs python): "
              f"gate fwd {python[1] / compiled[1]:.2f}x, "
              f"gate bwd {python[2] / compiled[2]:.2f}x, "
              f"split scan {python[3] / compiled[3]:.2f}x")

    print("\nfull training step (batch 32, length 200, hidden 64):")
    for name in backends:
        elapsed = bench_training_epoch(name, repeats=max(2, args.repeats // 2))
        print(f"  {name:10s} {elapsed * 1e3:10.1f}ms")


if __name__ == "__main__":
    main()
