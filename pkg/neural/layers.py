"""
Layer set with analytic gradients: Conv2D, Linear, ReLU, Flatten

All layers take batched input (N first). Convolution runs on (N, C, H, W) through
sliding windows and einsum; its input gradient is the full convolution of the
stride-dilated output gradient with the 180-degree rotated kernel.
"""

from typing import Dict, Optional, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from arena_errors import ShapeMismatchError


def fan_in_uniform(rng: np.random.Generator, shape: Tuple[int, ...], fan_in: int) -> np.ndarray:
    bound = 1.0 / np.sqrt(fan_in)
    return rng.uniform(-bound, bound, size=shape)


class Layer:
    """Base layer: params and grads share keys; forward caches what backward needs"""

    def __init__(self):
        self.params: Dict[str, np.ndarray] = {}
        self.grads: Dict[str, np.ndarray] = {}

    def forward(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def backward(self, dout: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def zero_grad(self):
        for name, value in self.params.items():
            self.grads[name] = np.zeros_like(value)


class Conv2D(Layer):
    def __init__(self, in_channels: int, out_channels: int, kernel: int = 3, stride: int = 1,
                 rng: Optional[np.random.Generator] = None):
        super().__init__()
        self.in_channels = in_channels
        self.out_channels = out_channels
        self.kernel = kernel
        self.stride = stride
        fan_in = in_channels * kernel * kernel
        rng = rng or np.random.default_rng(0)
        self.params["weight"] = fan_in_uniform(rng, (out_channels, in_channels, kernel, kernel), fan_in)
        self.params["bias"] = fan_in_uniform(rng, (out_channels,), fan_in)
        self.zero_grad()
        self._cache = None

    def output_shape(self, height: int, width: int) -> Tuple[int, int]:
        if height < self.kernel or width < self.kernel:
            raise ShapeMismatchError(f"{height}x{width} input is smaller than the {self.kernel}x{self.kernel} kernel")
        return (height - self.kernel) // self.stride + 1, (width - self.kernel) // self.stride + 1

    def _windows(self, x: np.ndarray) -> np.ndarray:
        k, s = self.kernel, self.stride
        return sliding_window_view(x, (k, k), axis=(2, 3))[:, :, ::s, ::s]

    def forward(self, x: np.ndarray) -> np.ndarray:
        if x.ndim != 4 or x.shape[1] != self.in_channels:
            raise ShapeMismatchError(f"Conv2D expects (N, {self.in_channels}, H, W), got {x.shape}")
        self.output_shape(x.shape[2], x.shape[3])
        windows = self._windows(x)
        out = np.einsum("nchwij,ocij->nohw", windows, self.params["weight"], optimize=True)
        out += self.params["bias"][None, :, None, None]
        self._cache = (x.shape, windows)
        return out

    def backward(self, dout: np.ndarray) -> np.ndarray:
        x_shape, windows = self._cache
        k, s = self.kernel, self.stride
        weight = self.params["weight"]

        self.grads["bias"] = dout.sum(axis=(0, 2, 3))
        self.grads["weight"] = np.einsum("nchwij,nohw->ocij", windows, dout, optimize=True)

        n, o, out_h, out_w = dout.shape
        dilated = np.zeros((n, o, (out_h - 1) * s + 1, (out_w - 1) * s + 1), dtype=dout.dtype)
        dilated[:, :, ::s, ::s] = dout
        padded = np.pad(dilated, ((0, 0), (0, 0), (k - 1, k - 1), (k - 1, k - 1)))
        dout_windows = sliding_window_view(padded, (k, k), axis=(2, 3))
        rotated = weight[:, :, ::-1, ::-1]
        dx = np.einsum("nohwij,ocij->nchw", dout_windows, rotated, optimize=True)

        # rows/cols the strided windows never reached get zero gradient
        pad_h, pad_w = x_shape[2] - dx.shape[2], x_shape[3] - dx.shape[3]
        if pad_h or pad_w:
            dx = np.pad(dx, ((0, 0), (0, 0), (0, pad_h), (0, pad_w)))
        return dx


class Linear(Layer):
    def __init__(self, in_features: int, out_features: int, rng: Optional[np.random.Generator] = None):
        super().__init__()
        self.in_features = in_features
        self.out_features = out_features
        rng = rng or np.random.default_rng(0)
        self.params["weight"] = fan_in_uniform(rng, (in_features, out_features), in_features)
        self.params["bias"] = fan_in_uniform(rng, (out_features,), in_features)
        self.zero_grad()
        self._x = None

    def forward(self, x: np.ndarray) -> np.ndarray:
        if x.ndim != 2 or x.shape[1] != self.in_features:
            raise ShapeMismatchError(f"Linear expects (N, {self.in_features}), got {x.shape}")
        self._x = x
        return x @ self.params["weight"] + self.params["bias"]

    def backward(self, dout: np.ndarray) -> np.ndarray:
        self.grads["weight"] = self._x.T @ dout
        self.grads["bias"] = dout.sum(axis=0)
        return dout @ self.params["weight"].T


class ReLU(Layer):
    """ReLU, or identity when linear=True (linear test mode)"""

    def __init__(self, linear: bool = False):
        super().__init__()
        self.linear = linear
        self.mask: Optional[np.ndarray] = None

    def forward(self, x: np.ndarray) -> np.ndarray:
        if self.linear:
            self.mask = np.ones(x.shape, dtype=bool)
            return x
        self.mask = x > 0
        return np.where(self.mask, x, 0.0)

    def backward(self, dout: np.ndarray) -> np.ndarray:
        return dout * self.mask


class Flatten(Layer):
    def __init__(self):
        super().__init__()
        self._shape = None

    def forward(self, x: np.ndarray) -> np.ndarray:
        self._shape = x.shape
        return x.reshape(x.shape[0], -1)

    def backward(self, dout: np.ndarray) -> np.ndarray:
        return dout.reshape(self._shape)
