"""Feed-forward and bidirectional LSTM classifiers with manual gradients."""

from .lstm import BiLstmConfig, BiLstmModel, bilstm_forward, lstm_cell
from .mlp import MlpConfig, MlpModel, mlp_forward
from .optim import Adam
from .training import TrainConfig, train_model

__all__ = [
    "Adam",
    "BiLstmConfig",
    "BiLstmModel",
    "MlpConfig",
    "MlpModel",
    "TrainConfig",
    "bilstm_forward",
    "lstm_cell",
    "mlp_forward",
    "train_model",
]
