"""Pure numpy implementations of the hot kernels.

Same call surface as the compiled extension (_core); arithmetic is kept
in the same order so results match the compiled path to float64
round-off.
"""

import numpy as np

BACKEND = "python"


def lstm_gates_forward(z, c_prev):
    """Fused LSTM gate block for one timestep.

    z: (B, 4H) preactivations laid out [input | forget | cell | output];
    returns (gates, c, h) with gates post-activation in the same layout.
    """
    B, four_h = z.shape
    H = four_h // 4
    gates = np.empty_like(z)
    zi, zf, zg, zo = z[:, :H], z[:, H:2 * H], z[:, 2 * H:3 * H], z[:, 3 * H:]
    gates[:, :H] = _sigmoid(zi)
    gates[:, H:2 * H] = _sigmoid(zf)
    gates[:, 2 * H:3 * H] = np.tanh(zg)
    gates[:, 3 * H:] = _sigmoid(zo)
    i, f, g, o = gates[:, :H], gates[:, H:2 * H], gates[:, 2 * H:3 * H], gates[:, 3 * H:]
    c = f * c_prev + i * g
    h = o * np.tanh(c)
    return gates, c, h


def lstm_gates_backward(dh, dc_in, gates, c, c_prev):
    """Backward pass of the fused gate block.

    dh, dc_in: gradients flowing into h_t and c_t; returns (dz, dc_prev)
    with dz in the same (B, 4H) layout as the forward preactivations.
    """
    B, H = dh.shape
    i, f, g, o = gates[:, :H], gates[:, H:2 * H], gates[:, 2 * H:3 * H], gates[:, 3 * H:]
    tc = np.tanh(c)
    dc = dh * o * (1.0 - tc * tc) + dc_in
    dz = np.empty_like(gates)
    dz[:, :H] = dc * g * i * (1.0 - i)
    dz[:, H:2 * H] = dc * c_prev * f * (1.0 - f)
    dz[:, 2 * H:3 * H] = dc * i * (1.0 - g * g)
    dz[:, 3 * H:] = dh * tc * o * (1.0 - o)
    dc_prev = dc * f
    return dz, dc_prev


def gbt_split_scan(grad, hess, values, lam, min_child_weight):
    """Best split of one feature column (inputs sorted by value ascending).

    Returns (gain, threshold, left_count); gain is -inf when no valid
    split exists.  Ties keep the lowest threshold.
    """
    n = values.shape[0]
    if n < 2:
        return -np.inf, 0.0, 0
    # totals come from the sequential prefix sums so the accumulation
    # order matches the compiled loop bit for bit
    g_prefix = np.cumsum(grad)
    h_prefix = np.cumsum(hess)
    g_total = float(g_prefix[-1])
    h_total = float(h_prefix[-1])
    parent = g_total * g_total / (h_total + lam)
    gl = g_prefix[:-1]
    hl = h_prefix[:-1]
    gr = g_total - gl
    hr = h_total - hl
    gains = 0.5 * (gl * gl / (hl + lam) + gr * gr / (hr + lam) - parent)
    valid = (values[:-1] != values[1:]) & (hl >= min_child_weight) & (hr >= min_child_weight)
    if not np.any(valid):
        return -np.inf, 0.0, 0
    gains = np.where(valid, gains, -np.inf)
    best = int(np.argmax(gains))
    threshold = (values[best] + values[best + 1]) / 2.0
    return float(gains[best]), float(threshold), best + 1


def _sigmoid(x):
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out
