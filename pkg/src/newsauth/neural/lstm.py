"""Bidirectional LSTM sequence classifier with hand-derived BPTT.

Architecture: embedding (padding row 0 frozen at zero) -> one LSTM pass
left-to-right and one right-to-left -> final hidden states concatenated
-> ReLU dense layer -> sigmoid unit.

Gate preactivations use the fused layout [input | forget | cell |
output] so each timestep is one input matmul, one recurrent matmul and
one fused elementwise kernel call.  The input matmuls of all timesteps
are batched into a single GEMM per direction; only the recurrent matmul
is inherently sequential.

Dropout (train mode only) is inverted and variational: one input mask
and one recurrent mask per sequence per direction, reused across all
timesteps.  The recurrent mask applies to the previous hidden state as
consumed by the gates, not to the carried state itself.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._kernels import lstm_gates_backward, lstm_gates_forward
from ..errors import BadSequenceLength, DimensionMismatch
from ..numerics import bce_from_logits, sigmoid

GATE_ORDER = ("input", "forget", "cell", "output")


@dataclass(frozen=True)
class BiLstmConfig:
    vocab_size: int  # distinct real tags; embedding has vocab_size + 2 rows
    embed_dim: int = 150
    hidden: int = 64
    dense_units: int = 32
    seq_len: int = 200
    dropout: float = 0.2
    recurrent_dropout: float = 0.2


def _glorot(rng, fan_in, fan_out):
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


def _scaled_uniform(rng, rows, cols):
    limit = 1.0 / np.sqrt(rows)
    return rng.uniform(-limit, limit, size=(rows, cols))


class BiLstmModel:
    def __init__(self, config: BiLstmConfig):
        self.config = config

    # -- parameters ----------------------------------------------------

    def init_params(self, seed: int) -> dict[str, np.ndarray]:
        c = self.config
        rng = np.random.default_rng(seed)
        embedding = rng.uniform(-0.05, 0.05, size=(c.vocab_size + 2, c.embed_dim))
        embedding[0] = 0.0  # padding row stays zero and receives no updates
        params = {"embedding": embedding}
        for direction in ("f", "b"):
            bias = np.zeros(4 * c.hidden)
            bias[c.hidden:2 * c.hidden] = 1.0  # forget-gate bias
            params[f"wx_{direction}"] = _glorot(rng, c.embed_dim, 4 * c.hidden)
            params[f"wh_{direction}"] = _scaled_uniform(rng, c.hidden, 4 * c.hidden)
            params[f"b_{direction}"] = bias
        params["wd1"] = _glorot(rng, 2 * c.hidden, c.dense_units)
        params["bd1"] = np.zeros(c.dense_units)
        params["wd2"] = _glorot(rng, c.dense_units, 1).reshape(c.dense_units)
        params["bd2"] = np.zeros(1)
        return params

    # -- dropout masks -------------------------------------------------

    def make_masks(self, rng: np.random.Generator, batch_size: int) -> dict[str, np.ndarray]:
        """One inverted-dropout mask per sequence per direction and kind."""
        c = self.config
        masks = {}
        for direction in ("f", "b"):
            masks[f"im_{direction}"] = self._draw(rng, (batch_size, c.embed_dim), c.dropout)
            masks[f"rm_{direction}"] = self._draw(rng, (batch_size, c.hidden), c.recurrent_dropout)
        return masks

    @staticmethod
    def _draw(rng, shape, p):
        if p <= 0.0:
            return np.ones(shape)
        return (rng.random(shape) >= p).astype(np.float64) / (1.0 - p)

    # -- forward / backward --------------------------------------------

    def _check_ids(self, ids) -> np.ndarray:
        ids = np.asarray(ids)
        if ids.ndim != 2 or ids.shape[1] != self.config.seq_len:
            raise BadSequenceLength(
                f"expected (n, {self.config.seq_len}) id sequences, got {ids.shape}"
            )
        if ids.min() < 0 or ids.max() >= self.config.vocab_size + 2:
            raise DimensionMismatch("sequence ids outside the embedding table")
        return ids.astype(np.intp)

    def _run_direction(self, params, embedded, direction, masks, cache):
        """One LSTM pass; returns the final hidden state (B, H)."""
        c = self.config
        B, T, D = embedded.shape
        H = c.hidden
        wx = params[f"wx_{direction}"]
        wh = params[f"wh_{direction}"]
        bias = params[f"b_{direction}"]
        if masks is None:
            x_masked = embedded
            rec_mask = None
        else:
            x_masked = embedded * masks[f"im_{direction}"][:, None, :]
            rec_mask = masks[f"rm_{direction}"]
        # all input-side matmuls as one GEMM
        zx = (x_masked.reshape(B * T, D) @ wx + bias).reshape(B, T, 4 * H)
        order = range(T) if direction == "f" else range(T - 1, -1, -1)
        gates_all = np.empty((T, B, 4 * H))
        c_all = np.empty((T, B, H))
        c_prev_all = np.empty((T, B, H))
        h_in_all = np.empty((T, B, H))
        h = np.zeros((B, H))
        c_state = np.zeros((B, H))
        for t in order:
            h_in = h if rec_mask is None else h * rec_mask
            z = zx[:, t, :] + h_in @ wh
            gates, c_next, h = lstm_gates_forward(z, c_state)
            gates_all[t] = gates
            c_all[t] = c_next
            c_prev_all[t] = c_state
            h_in_all[t] = h_in
            c_state = c_next
        cache[direction] = {
            "x_masked": x_masked, "rec_mask": rec_mask, "gates": gates_all,
            "c": c_all, "c_prev": c_prev_all, "h_in": h_in_all,
        }
        return h

    def _direction_backward(self, params, dh_final, direction, cache):
        """BPTT for one direction; returns (grads, d_embedded)."""
        c = self.config
        data = cache[direction]
        x_masked = data["x_masked"]
        B, T, D = x_masked.shape
        H = c.hidden
        wx = params[f"wx_{direction}"]
        wh = params[f"wh_{direction}"]
        rec_mask = data["rec_mask"]
        order = range(T) if direction == "f" else range(T - 1, -1, -1)
        dz_all = np.empty((T, B, 4 * H))
        dwh = np.zeros_like(wh)
        dh = dh_final
        dc = np.zeros((B, H))
        for t in reversed(list(order)):
            dz, dc = lstm_gates_backward(
                dh, dc, data["gates"][t], data["c"][t], data["c_prev"][t]
            )
            dz_all[t] = dz
            dwh += data["h_in"][t].T @ dz
            dh = dz @ wh.T
            if rec_mask is not None:
                dh = dh * rec_mask
        dz_flat = dz_all.transpose(1, 0, 2).reshape(B * T, 4 * H)
        x_flat = x_masked.reshape(B * T, D)
        grads = {
            f"wx_{direction}": x_flat.T @ dz_flat,
            f"wh_{direction}": dwh,
            f"b_{direction}": dz_flat.sum(axis=0),
        }
        d_embedded = (dz_flat @ wx.T).reshape(B, T, D)
        if rec_mask is not None:
            d_embedded = d_embedded * cache["masks"][f"im_{direction}"][:, None, :]
        return grads, d_embedded

    def _head_forward(self, params, h_concat):
        z1 = h_concat @ params["wd1"] + params["bd1"]
        d1 = np.maximum(z1, 0.0)
        logits = d1 @ params["wd2"] + params["bd2"][0]
        return z1, d1, logits

    def forward(self, params, ids, masks=None, cache=None):
        """Logits for a batch of id sequences."""
        ids = self._check_ids(ids)
        embedded = params["embedding"][ids]
        if cache is None:
            cache = {}
        cache["ids"] = ids
        cache["masks"] = masks
        h_f = self._run_direction(params, embedded, "f", masks, cache)
        h_b = self._run_direction(params, embedded, "b", masks, cache)
        h_concat = np.concatenate([h_f, h_b], axis=1)
        z1, d1, logits = self._head_forward(params, h_concat)
        cache.update({"h_concat": h_concat, "z1": z1, "d1": d1})
        return logits

    def predict_proba(self, params, ids) -> np.ndarray:
        return sigmoid(self.forward(params, ids))

    def loss_and_grads(self, params, ids, y, masks=None):
        """Batch loss and gradients for every parameter tensor."""
        cache: dict = {}
        logits = self.forward(params, ids, masks=masks, cache=cache)
        y = np.asarray(y, dtype=np.float64)
        n = logits.shape[0]
        loss = bce_from_logits(logits, y)

        H = self.config.hidden
        dlogits = (sigmoid(logits) - y) / n
        grads = {
            "wd2": cache["d1"].T @ dlogits,
            "bd2": np.array([dlogits.sum()]),
        }
        dd1 = np.outer(dlogits, params["wd2"])
        dz1 = dd1 * (cache["z1"] > 0.0)
        grads["wd1"] = cache["h_concat"].T @ dz1
        grads["bd1"] = dz1.sum(axis=0)
        dh_concat = dz1 @ params["wd1"].T

        grads_f, d_emb_f = self._direction_backward(params, dh_concat[:, :H], "f", cache)
        grads_b, d_emb_b = self._direction_backward(params, dh_concat[:, H:], "b", cache)
        grads.update(grads_f)
        grads.update(grads_b)

        d_embedded = d_emb_f + d_emb_b
        d_table = np.zeros_like(params["embedding"])
        flat_ids = cache["ids"].reshape(-1)
        np.add.at(d_table, flat_ids, d_embedded.reshape(-1, self.config.embed_dim))
        d_table[0] = 0.0  # padding row is frozen
        grads["embedding"] = d_table
        return loss, grads


def lstm_cell(cell_params: dict[str, np.ndarray], x_t, h_prev, c_prev):
    """Single LSTM cell step from per-gate weights.

    cell_params maps w_<gate>, u_<gate>, b_<gate> for gates input,
    forget, cell, output; returns (h_t, c_t).
    """
    x_t = np.atleast_2d(np.asarray(x_t, dtype=np.float64))
    h_prev = np.atleast_2d(np.asarray(h_prev, dtype=np.float64))
    c_prev = np.atleast_2d(np.asarray(c_prev, dtype=np.float64))
    try:
        wx = np.concatenate([cell_params[f"w_{g}"] for g in GATE_ORDER], axis=1)
        wh = np.concatenate([cell_params[f"u_{g}"] for g in GATE_ORDER], axis=1)
        bias = np.concatenate([cell_params[f"b_{g}"] for g in GATE_ORDER])
    except KeyError as exc:
        raise DimensionMismatch(f"missing cell parameter {exc}") from exc
    if x_t.shape[1] != wx.shape[0] or h_prev.shape[1] != wh.shape[0]:
        raise DimensionMismatch("cell parameter shapes do not match inputs")
    z = x_t @ wx + h_prev @ wh + bias
    _, c_t, h_t = lstm_gates_forward(z, c_prev)
    return h_t, c_t


def bilstm_forward(params, sequence, train_mode: bool = False, seed: int = 0,
                   config: BiLstmConfig | None = None) -> float:
    """Probability for one fixed-length id sequence."""
    if config is None:
        config = BiLstmConfig(
            vocab_size=params["embedding"].shape[0] - 2,
            embed_dim=params["embedding"].shape[1],
            hidden=params["wh_f"].shape[0],
            dense_units=params["wd1"].shape[1],
            seq_len=len(sequence),
        )
    model = BiLstmModel(config)
    ids = np.asarray(sequence)[None, :]
    masks = model.make_masks(np.random.default_rng(seed), 1) if train_mode else None
    logits = model.forward(params, ids, masks=masks)
    return float(sigmoid(logits)[0])
