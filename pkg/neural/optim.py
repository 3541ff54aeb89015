"""
Parameter update rules: Adam (default) and plain SGD for exactness checks
"""

from typing import Dict, Mapping

import numpy as np

from arena_errors import DivergenceError, ShapeMismatchError


def _check_grads(params: Mapping[str, np.ndarray], grads: Mapping[str, np.ndarray]):
    for name, value in params.items():
        grad = grads.get(name)
        if grad is None or grad.shape != value.shape:
            raise ShapeMismatchError(f"gradient for {name} missing or misshapen")
        if not np.all(np.isfinite(grad)):
            raise DivergenceError(f"non-finite gradient in {name}")


class SGD:
    def __init__(self, lr: float = 0.001):
        self.lr = lr

    def step(self, params: Mapping[str, np.ndarray], grads: Mapping[str, np.ndarray]):
        _check_grads(params, grads)
        for name, value in params.items():
            value -= self.lr * grads[name]


class Adam:
    def __init__(self, lr: float = 0.001, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m: Dict[str, np.ndarray] = {}
        self.v: Dict[str, np.ndarray] = {}

    def step(self, params: Mapping[str, np.ndarray], grads: Mapping[str, np.ndarray]):
        _check_grads(params, grads)
        self.t += 1
        correction1 = 1.0 - self.beta1 ** self.t
        correction2 = 1.0 - self.beta2 ** self.t
        for name, value in params.items():
            grad = grads[name]
            m = self.m.setdefault(name, np.zeros_like(value))
            v = self.v.setdefault(name, np.zeros_like(value))
            m *= self.beta1
            m += (1.0 - self.beta1) * grad
            v *= self.beta2
            v += (1.0 - self.beta2) * grad ** 2
            value -= self.lr * (m / correction1) / (np.sqrt(v / correction2) + self.eps)


def make_optimizer(name: str, lr: float):
    if name == "adam":
        return Adam(lr=lr)
    if name == "sgd":
        return SGD(lr=lr)
    raise ValueError(f"unknown optimizer '{name}'")
