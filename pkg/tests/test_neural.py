import struct
import zlib

import numpy as np
import pytest

from arena_errors import DivergenceError, ModelFormatError, ShapeMismatchError
from neural import (
    GLOBAL_ONLY, SGD, Adam, ArcaneNet, Conv2D, NetConfig, check_gradients, decode_model,
    encode_model, huber_loss, load_params, make_optimizer, relative_error, save_params,
)
from observation import one_hot


def _inputs(config, batch, rng):
    gh, gw = config.global_shape
    size = config.local_size
    global_x = one_hot(rng.integers(0, 10, size=(batch, gh, gw)))
    local_x = one_hot(rng.integers(0, 10, size=(batch, size, size)))
    return global_x, local_x


def test_default_golddigger_net_size():
    net = ArcaneNet(NetConfig.for_screen((10, 14), n_actions=6))
    assert net.config.global_shape == (19, 27)
    assert net.parameter_count() == 2_952_230
    names = list(net.parameters())
    assert names[0] == "conv_g.0.weight"
    assert names[-1] == "out.bias"


def test_global_only_has_no_local_branch(small_net_config):
    net = ArcaneNet(small_net_config.model_copy(update={"variant": GLOBAL_ONLY}))
    assert not any(name.startswith(("conv_l", "proj_l")) for name in net.parameters())
    q = net.forward_batch(_inputs(net.config, 3, np.random.default_rng(0))[0])
    assert q.shape == (3, 6)


def test_forward_shapes_and_validation(small_net, rng):
    global_x, local_x = _inputs(small_net.config, 4, rng)
    assert small_net.forward_batch(global_x, local_x).shape == (4, 6)
    with pytest.raises(ShapeMismatchError):
        small_net.forward_batch(global_x)
    with pytest.raises(ShapeMismatchError):
        small_net.forward_batch(global_x[:, :5], local_x)


@pytest.mark.parametrize("overrides", [{}, {"stride": 2}, {"variant": GLOBAL_ONLY}])
def test_backprop_matches_finite_differences(small_net_config, rng, overrides):
    net = ArcaneNet(small_net_config.model_copy(update=overrides))
    global_x, local_x = _inputs(net.config, 2, rng)
    output_grad = rng.normal(size=(2, net.n_actions))
    report = check_gradients(net, global_x, local_x, output_grad, eps=1e-4)
    assert report.checked > 0
    assert report.passed(1e-5), f"worst entry {report.worst}: {report.max_relative_error:.2e}"
    assert set(report.per_parameter) == set(net.parameters())


def test_conv_stride_output_shape():
    conv = Conv2D(16, 4, kernel=3, stride=2)
    assert conv.output_shape(7, 9) == (3, 4)
    with pytest.raises(ShapeMismatchError):
        conv.output_shape(2, 9)


def test_linear_mode_is_homogeneous(small_net_config, rng):
    net = ArcaneNet(small_net_config.model_copy(update={"activation": "identity"}))
    global_x, local_x = _inputs(net.config, 3, rng)
    base = net.forward_batch(global_x, local_x)
    for a in (0.0, -1.5, 0.25, 3.0, 1e3):
        np.testing.assert_allclose(net.forward_batch(a * global_x, a * local_x), a * base, rtol=1e-9, atol=1e-9)


def test_linear_mode_is_additive(small_net_config, rng):
    net = ArcaneNet(small_net_config.model_copy(update={"activation": "identity"}))
    a = _inputs(net.config, 1, rng)
    b = _inputs(net.config, 1, rng)
    summed = tuple(x + y for x, y in zip(a, b))
    q = lambda pair: net.forward_batch(*pair)
    np.testing.assert_allclose(q(a) + q(b), q(summed), rtol=1e-10, atol=1e-10)


def test_clone_is_independent(small_net, rng):
    twin = small_net.clone()
    global_x, local_x = _inputs(small_net.config, 2, rng)
    np.testing.assert_array_equal(twin.forward_batch(global_x, local_x), small_net.forward_batch(global_x, local_x))
    twin.parameters()["out.bias"][:] += 1.0
    assert not np.allclose(twin.forward_batch(global_x, local_x), small_net.forward_batch(global_x, local_x))


def test_huber_loss():
    loss, grad = huber_loss(np.array([0.5, 3.0]), np.array([0.0, 0.0]))
    assert loss == pytest.approx((0.125 + 2.5) / 2)
    np.testing.assert_allclose(grad, [0.25, 0.5])


def test_relative_error_floor():
    assert relative_error(0.0, 0.0) == 0.0
    assert relative_error(1.0, 1.0) == 0.0
    assert relative_error(1e-9, 0.0) == pytest.approx(1e-3)


def test_sgd_and_adam_steps():
    params = {"w": np.array([1.0, -2.0])}
    SGD(lr=0.1).step(params, {"w": np.array([1.0, 1.0])})
    np.testing.assert_allclose(params["w"], [0.9, -2.1])

    params = {"w": np.array([1.0, -2.0])}
    Adam(lr=0.01).step(params, {"w": np.array([0.5, -3.0])})
    np.testing.assert_allclose(params["w"], [0.99, -1.99], atol=1e-6)

    with pytest.raises(DivergenceError):
        SGD().step(params, {"w": np.array([np.nan, 0.0])})
    with pytest.raises(ValueError):
        make_optimizer("rmsprop", 0.1)


def test_model_file_round_trip(small_net, rng, tmp_path):
    path = save_params(small_net, tmp_path / "net.bin")
    loaded = load_params(path, expected_variant="dual")
    global_x, local_x = _inputs(small_net.config, 3, rng)
    np.testing.assert_array_equal(loaded.forward_batch(global_x, local_x), small_net.forward_batch(global_x, local_x))
    assert loaded.config == small_net.config


def _resealed(body: bytes) -> bytes:
    return body + struct.pack("<I", zlib.crc32(body))


def test_model_file_rejections(small_net):
    data = encode_model(small_net)
    with pytest.raises(ModelFormatError, match="checksum"):
        decode_model(data[:-10])
    corrupted = bytearray(data)
    corrupted[40] ^= 0xFF
    with pytest.raises(ModelFormatError, match="checksum"):
        decode_model(bytes(corrupted))
    with pytest.raises(ModelFormatError, match="not an ArcaneNet"):
        decode_model(_resealed(b"XXXX" + data[4:-4]))
    with pytest.raises(ModelFormatError, match="version"):
        decode_model(_resealed(data[:4] + struct.pack("<H", 9) + data[6:-4]))
    with pytest.raises(ModelFormatError, match="variant mismatch"):
        decode_model(data, expected_variant=GLOBAL_ONLY)
