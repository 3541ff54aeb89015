"""
Model files

Layout (little-endian): magic b"ARCN", u16 version, u8 variant flag, u32 header
length + NetConfig JSON, u32 array count, per array (u16 name length, name, u8 ndim,
u32 dims), the float64 arrays in declared order, and a trailing CRC32 of everything
before it.
"""

import json
import logging
import struct
import zlib
from pathlib import Path
from typing import Optional, Union

import numpy as np

from arena_errors import ModelFormatError

from .arcane_net import DUAL, GLOBAL_ONLY, ArcaneNet, NetConfig

logger = logging.getLogger(__name__)

MAGIC = b"ARCN"
FORMAT_VERSION = 1
VARIANT_FLAGS = {DUAL: 0, GLOBAL_ONLY: 1}


def encode_model(net: ArcaneNet) -> bytes:
    header = net.config.model_dump_json().encode("utf-8")
    params = net.parameters()
    parts = [
        MAGIC,
        struct.pack("<HB", FORMAT_VERSION, VARIANT_FLAGS[net.variant]),
        struct.pack("<I", len(header)),
        header,
        struct.pack("<I", len(params)),
    ]
    for name, value in params.items():
        raw = name.encode("utf-8")
        parts.append(struct.pack("<H", len(raw)) + raw)
        parts.append(struct.pack("<B", value.ndim) + struct.pack(f"<{value.ndim}I", *value.shape))
    for value in params.values():
        parts.append(np.ascontiguousarray(value, dtype="<f8").tobytes())
    body = b"".join(parts)
    return body + struct.pack("<I", zlib.crc32(body))


def save_params(net: ArcaneNet, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_model(net))
    logger.info(f"💾 Saved {net.variant} model ({net.parameter_count():,} parameters) to {path}")
    return path


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, size: int) -> bytes:
        if self.pos + size > len(self.data):
            raise ModelFormatError("model file is truncated")
        chunk = self.data[self.pos:self.pos + size]
        self.pos += size
        return chunk

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def decode_model(data: bytes, expected_variant: Optional[str] = None) -> ArcaneNet:
    if len(data) < len(MAGIC) + 4:
        raise ModelFormatError("model file is truncated")
    body, (checksum,) = data[:-4], struct.unpack("<I", data[-4:])
    if zlib.crc32(body) != checksum:
        raise ModelFormatError("checksum mismatch (file corrupt or truncated)")

    reader = _Reader(body)
    if reader.take(len(MAGIC)) != MAGIC:
        raise ModelFormatError("not an ArcaneNet model file")
    version, flag = reader.unpack("<HB")
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format version {version}")
    variant = {v: k for k, v in VARIANT_FLAGS.items()}.get(flag)
    if variant is None:
        raise ModelFormatError(f"unknown variant flag {flag}")
    if expected_variant is not None and variant != expected_variant:
        raise ModelFormatError(f"variant mismatch: file holds '{variant}', expected '{expected_variant}'")

    (header_len,) = reader.unpack("<I")
    try:
        config = NetConfig.model_validate(json.loads(reader.take(header_len).decode("utf-8")))
    except ValueError as e:
        raise ModelFormatError(f"bad model header: {e}") from e
    if config.variant != variant:
        raise ModelFormatError("variant flag disagrees with the model header")

    (count,) = reader.unpack("<I")
    table = []
    for _ in range(count):
        (name_len,) = reader.unpack("<H")
        name = reader.take(name_len).decode("utf-8")
        (ndim,) = reader.unpack("<B")
        table.append((name, reader.unpack(f"<{ndim}I")))

    net = ArcaneNet(config)
    own = net.parameters()
    if [name for name, _ in table] != list(own):
        raise ModelFormatError("parameter table does not match the network layout")
    for name, shape in table:
        if tuple(shape) != own[name].shape:
            raise ModelFormatError(f"shape mismatch for {name}: file {tuple(shape)}, network {own[name].shape}")
        size = int(np.prod(shape)) * 8
        own[name][...] = np.frombuffer(reader.take(size), dtype="<f8").reshape(shape)
    if reader.pos != len(body):
        raise ModelFormatError("trailing bytes after parameter data")
    return net


def load_params(path: Union[str, Path], expected_variant: Optional[str] = None) -> ArcaneNet:
    path = Path(path)
    net = decode_model(path.read_bytes(), expected_variant)
    logger.info(f"📂 Loaded {net.variant} model from {path}")
    return net
