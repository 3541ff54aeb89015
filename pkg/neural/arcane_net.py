"""
🧠 ARCANE NETWORK
Two-branch Q-network: Conv-G reads the global view, Conv-L the local view, each
projected to 256 features; the 512-wide concatenation feeds fc1 (64) and the
Q-value head. The global-only variant drops Conv-L and projects Conv-G to 512.
"""

import logging
from collections import OrderedDict
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from arena_errors import ShapeMismatchError
from grid_core import MAX_CODES

from .layers import Conv2D, Flatten, Layer, Linear, ReLU

logger = logging.getLogger(__name__)

DUAL = "dual"
GLOBAL_ONLY = "global_only"


class NetConfig(BaseModel):
    """Shapes and widths of an ArcaneNet; the parameter count is a pure function of this"""

    global_shape: Tuple[int, int]
    n_actions: int = Field(gt=0)
    local_size: int = 5
    channels: int = MAX_CODES
    conv_global: List[int] = Field(default_factory=lambda: [32, 32])
    conv_local: List[int] = Field(default_factory=lambda: [32])
    kernel: int = 3
    stride: int = 1
    proj: int = 256
    global_only_proj: int = 512
    hidden: int = 64
    variant: Literal["dual", "global_only"] = DUAL
    activation: Literal["relu", "identity"] = "relu"
    seed: int = 0

    @model_validator(mode="after")
    def _check_widths(self):
        if not self.conv_global or (self.variant == DUAL and not self.conv_local):
            raise ValueError("each active branch needs at least one conv layer")
        return self

    @classmethod
    def for_screen(cls, grid_shape: Tuple[int, int], n_actions: int, **overrides) -> "NetConfig":
        """Config for a game whose screen decodes to an H x W tile grid"""
        height, width = grid_shape
        return cls(global_shape=(2 * height - 1, 2 * width - 1), n_actions=n_actions, **overrides)


class ArcaneNet:
    def __init__(self, config: NetConfig):
        self.config = config
        rng = np.random.default_rng(config.seed)
        linear = config.activation == "identity"

        self.conv_g, out_shape = self._conv_stack(config.conv_global, config.global_shape, rng, linear)
        g_features = out_shape[0] * out_shape[1] * config.conv_global[-1]
        if self.variant == DUAL:
            self.proj_g = Linear(g_features, config.proj, rng)
            self.conv_l, l_shape = self._conv_stack(
                config.conv_local, (config.local_size, config.local_size), rng, linear
            )
            l_features = l_shape[0] * l_shape[1] * config.conv_local[-1]
            self.proj_l = Linear(l_features, config.proj, rng)
            junction = 2 * config.proj
        else:
            self.proj_g = Linear(g_features, config.global_only_proj, rng)
            self.conv_l, self.proj_l = [], None
            junction = config.global_only_proj

        self.relu_g = ReLU(linear)
        self.relu_l = ReLU(linear)
        self.fc1 = Linear(junction, config.hidden, rng)
        self.relu_fc = ReLU(linear)
        self.out = Linear(config.hidden, config.n_actions, rng)
        self.flatten_g = Flatten()
        self.flatten_l = Flatten()
        if linear:
            # linear test mode has no biases, so forward is homogeneous in its input
            for name, value in self.parameters().items():
                if name.endswith(".bias"):
                    value[:] = 0.0

    def _conv_stack(self, widths, in_shape, rng, linear) -> Tuple[List[Layer], Tuple[int, int]]:
        layers: List[Layer] = []
        channels = self.config.channels
        shape = tuple(in_shape)
        for width in widths:
            conv = Conv2D(channels, width, self.config.kernel, self.config.stride, rng)
            shape = conv.output_shape(*shape)
            layers.extend([conv, ReLU(linear)])
            channels = width
        return layers, shape

    @property
    def variant(self) -> str:
        return self.config.variant

    @property
    def n_actions(self) -> int:
        return self.config.n_actions

    def named_layers(self) -> List[Tuple[str, Layer]]:
        """Parameter-carrying layers in declaration order"""
        named = [(f"conv_g.{i}", layer) for i, layer in enumerate(self.conv_g) if isinstance(layer, Conv2D)]
        named.append(("proj_g", self.proj_g))
        if self.variant == DUAL:
            named.extend((f"conv_l.{i}", layer) for i, layer in enumerate(self.conv_l) if isinstance(layer, Conv2D))
            named.append(("proj_l", self.proj_l))
        named.extend([("fc1", self.fc1), ("out", self.out)])
        return named

    def parameters(self) -> "OrderedDict[str, np.ndarray]":
        params = OrderedDict()
        for prefix, layer in self.named_layers():
            for name, value in layer.params.items():
                params[f"{prefix}.{name}"] = value
        return params

    def gradients(self) -> "OrderedDict[str, np.ndarray]":
        grads = OrderedDict()
        for prefix, layer in self.named_layers():
            for name in layer.params:
                grads[f"{prefix}.{name}"] = layer.grads[name]
        return grads

    def parameter_count(self) -> int:
        return int(sum(value.size for value in self.parameters().values()))

    def relu_masks(self) -> List[np.ndarray]:
        """Activation patterns of the last forward pass"""
        relus = [layer for layer in self.conv_g + self.conv_l if isinstance(layer, ReLU)]
        relus.append(self.relu_g)
        if self.variant == DUAL:
            relus.append(self.relu_l)
        relus.append(self.relu_fc)
        return [relu.mask for relu in relus]

    # forward / backward

    def _check_inputs(self, global_x: np.ndarray, local_x: Optional[np.ndarray]):
        gh, gw = self.config.global_shape
        expected = (gh, gw, self.config.channels)
        if global_x.ndim != 4 or global_x.shape[1:] != expected:
            raise ShapeMismatchError(f"global input must be (N, {gh}, {gw}, {self.config.channels}), got {global_x.shape}")
        if self.variant == DUAL:
            size = self.config.local_size
            if local_x is None or local_x.ndim != 4 or local_x.shape[1:] != (size, size, self.config.channels):
                got = None if local_x is None else local_x.shape
                raise ShapeMismatchError(f"local input must be (N, {size}, {size}, {self.config.channels}), got {got}")
            if local_x.shape[0] != global_x.shape[0]:
                raise ShapeMismatchError("global and local batches differ in size")

    def forward_batch(self, global_x: np.ndarray, local_x: Optional[np.ndarray] = None) -> np.ndarray:
        """
        Q-values for a batch of observations

        Args:
            global_x: (N, 2H-1, 2W-1, 16) one-hot global views
            local_x: (N, 5, 5, 16) one-hot local views (ignored by the global-only variant)

        Returns:
            (N, n_actions) Q-values
        """
        global_x = np.asarray(global_x, dtype=np.float64)
        local_x = None if local_x is None else np.asarray(local_x, dtype=np.float64)
        self._check_inputs(global_x, local_x)

        h = global_x.transpose(0, 3, 1, 2)
        for layer in self.conv_g:
            h = layer.forward(h)
        features = self.relu_g.forward(self.proj_g.forward(self.flatten_g.forward(h)))

        if self.variant == DUAL:
            l = local_x.transpose(0, 3, 1, 2)
            for layer in self.conv_l:
                l = layer.forward(l)
            local_features = self.relu_l.forward(self.proj_l.forward(self.flatten_l.forward(l)))
            features = np.concatenate([features, local_features], axis=1)

        hidden = self.relu_fc.forward(self.fc1.forward(features))
        return self.out.forward(hidden)

    def forward(self, obs) -> np.ndarray:
        """Q-values for one ObservationPair"""
        local = obs.local_onehot[None] if self.variant == DUAL else None
        return self.forward_batch(obs.global_onehot[None], local)[0]

    def backward(self, dq: np.ndarray) -> "OrderedDict[str, np.ndarray]":
        """Gradients of sum(dq * Q) for the last forward_batch call"""
        dq = np.asarray(dq, dtype=np.float64)
        if dq.ndim == 1:
            dq = dq[None]
        d = self.fc1.backward(self.relu_fc.backward(self.out.backward(dq)))

        if self.variant == DUAL:
            width = self.config.proj
            d_global, d_local = d[:, :width], d[:, width:]
            dl = self.flatten_l.backward(self.proj_l.backward(self.relu_l.backward(d_local)))
            for layer in reversed(self.conv_l):
                dl = layer.backward(dl)
        else:
            d_global = d

        dg = self.flatten_g.backward(self.proj_g.backward(self.relu_g.backward(d_global)))
        for layer in reversed(self.conv_g):
            dg = layer.backward(dg)
        return self.gradients()

    # parameter plumbing

    def load_parameters(self, params: Dict[str, np.ndarray]):
        own = self.parameters()
        for name, value in own.items():
            if name not in params:
                raise ShapeMismatchError(f"missing parameter {name}")
            if params[name].shape != value.shape:
                raise ShapeMismatchError(f"{name}: expected {value.shape}, got {params[name].shape}")
            value[...] = params[name]

    def copy_from(self, other: "ArcaneNet"):
        self.load_parameters(other.parameters())

    def clone(self) -> "ArcaneNet":
        twin = ArcaneNet(self.config)
        twin.copy_from(self)
        return twin


def huber_loss(pred: np.ndarray, target: np.ndarray, delta: float = 1.0) -> Tuple[float, np.ndarray]:
    """Mean Huber loss and its gradient with respect to pred"""
    diff = np.asarray(pred, dtype=np.float64) - np.asarray(target, dtype=np.float64)
    small = np.abs(diff) <= delta
    losses = np.where(small, 0.5 * diff ** 2, delta * (np.abs(diff) - 0.5 * delta))
    grad = np.where(small, diff, delta * np.sign(diff)) / diff.size
    return float(losses.mean()), grad
