"""Minimal numerical kernel: explicit forward/backward ops, Adam, gradient
checking. Everything is float64 and deterministic; no autodiff tape, each
op returns the cache its backward needs."""

from .adam import AdamState, adam_step, clip_gradients
from .gradcheck import grad_check
from .lstm import BiLstmParams, LstmParams, bilstm, bilstm_backward, init_bilstm
from .ops import (
    bilinear_attention,
    bilinear_attention_backward,
    cross_entropy,
    softmax,
    softmax_backward,
    tanh_affine,
    tanh_affine_backward,
)
from .params import Parameter

__all__ = [
    "AdamState", "BiLstmParams", "LstmParams", "Parameter",
    "adam_step", "bilinear_attention", "bilinear_attention_backward", "bilstm",
    "bilstm_backward", "clip_gradients", "cross_entropy", "grad_check",
    "init_bilstm", "softmax", "softmax_backward", "tanh_affine",
    "tanh_affine_backward",
]
