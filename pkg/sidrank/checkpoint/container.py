# -*- coding: utf-8 -*-
import io
import logging
from typing import Dict, Any, Iterable, Optional

import numpy as np
import yaml

from ..errors import CheckpointFormatError, ConfigDigestMismatch

MAGIC = b"RGR1"
FORMAT_VERSION = 1

_UINT32 = np.dtype('<u4')
_FLOAT32 = np.dtype('<f4')

log = logging.getLogger(__name__)


class CheckpointContainer:
    """
    Named float32 arrays with explicit shapes and a metadata table, stored little-endian behind the "RGR1" magic.

    Layout:
      magic | version | n_meta | (key, yaml value)* | n_arrays | (name, ndim, dims, float32 data)*
    Strings are stored as an uint32 byte length followed by utf-8 bytes.
    """

    def __init__(self, arrays: Optional[Dict[str, np.ndarray]] = None, metadata: Optional[Dict[str, Any]] = None):
        self.arrays = {}  # type: Dict[str, np.ndarray]
        self.metadata = dict(metadata) if metadata else {}
        if arrays:
            for name, array in arrays.items():
                self.put(name, array)

    def put(self, name: str, array) -> np.ndarray:
        """
        Add an array, converted to little-endian float32.
        """
        value = np.ascontiguousarray(np.asarray(array, dtype=_FLOAT32))
        if not np.all(np.isfinite(value)):
            raise CheckpointFormatError("array \"%s\" holds non finite values" % name)
        self.arrays[name] = value
        return value

    def get(self, name: str) -> np.ndarray:
        """
        Get an array by name.
        """
        if name not in self.arrays:
            raise CheckpointFormatError("array \"%s\" is missing" % name)
        return self.arrays[name]

    def namespace(self, prefix: str) -> Dict[str, np.ndarray]:
        """
        Arrays stored under "<prefix>.", with the prefix removed.
        """
        start = prefix + "."
        return {name[len(start):]: array for name, array in self.arrays.items() if name.startswith(start)}

    def require_digest(self, expected: str, artifact: str):
        """
        Abort if this container was produced under another configuration.
        """
        actual = self.metadata.get("config_digest")
        if actual != expected:
            raise ConfigDigestMismatch(artifact, expected, actual)

    def to_bytes(self) -> bytes:
        """
        Serialize the container.
        """
        stream = io.BytesIO()
        stream.write(MAGIC)
        stream.write(np.array([FORMAT_VERSION, len(self.metadata)], dtype=_UINT32).tobytes())
        for key in sorted(self.metadata):
            _write_string(stream, key)
            _write_string(stream, yaml.safe_dump(self.metadata[key], default_flow_style=True))
        stream.write(np.array([len(self.arrays)], dtype=_UINT32).tobytes())
        for name, array in self.arrays.items():
            _write_string(stream, name)
            stream.write(np.array([array.ndim] + list(array.shape), dtype=_UINT32).tobytes())
            stream.write(array.astype(_FLOAT32).tobytes())
        return stream.getvalue()

    @staticmethod
    def from_bytes(data: bytes, known_names: Optional[Iterable[str]] = None) -> 'CheckpointContainer':
        """
        Deserialize a container. When known_names is given, any other array name is rejected. A known name ending
        with "." accepts every array of that namespace.
        """
        reader = _Reader(data)
        if reader.read(4) != MAGIC:
            raise CheckpointFormatError("bad magic, not a RGR1 container")
        version, n_meta = reader.uint32(2)
        if version != FORMAT_VERSION:
            raise CheckpointFormatError("unsupported format version %d" % version)
        metadata = {}
        for _ in range(n_meta):
            key = reader.string()
            metadata[key] = yaml.safe_load(reader.string())

        container = CheckpointContainer(metadata=metadata)
        known = tuple(known_names) if known_names is not None else None
        (n_arrays,) = reader.uint32(1)
        for _ in range(n_arrays):
            name = reader.string()
            (ndim,) = reader.uint32(1)
            shape = tuple(int(dim) for dim in reader.uint32(ndim)) if ndim else ()
            count = int(np.prod(shape, dtype=np.int64)) if shape else 1
            array = np.frombuffer(reader.read(count * _FLOAT32.itemsize), dtype=_FLOAT32).reshape(shape)
            if known is not None and not _is_known(name, known):
                raise CheckpointFormatError("unknown array name \"%s\"" % name)
            container.arrays[name] = array.copy()
        if not reader.exhausted:
            raise CheckpointFormatError("trailing bytes after last array")
        return container

    def save(self, path: str):
        """
        Write the container to a file.
        """
        with open(path, 'wb') as stream:
            stream.write(self.to_bytes())
        log.debug("Saved %d arrays to %s", len(self.arrays), path)

    @staticmethod
    def load(path: str, known_names: Optional[Iterable[str]] = None) -> 'CheckpointContainer':
        """
        Read a container from a file.
        """
        with open(path, 'rb') as stream:
            return CheckpointContainer.from_bytes(stream.read(), known_names)


def _is_known(name: str, known: Iterable[str]) -> bool:
    for known_name in known:
        if known_name.endswith(".") and name.startswith(known_name):
            return True
        if name == known_name:
            return True
    return False


def _write_string(stream, value: str):
    encoded = value.encode("utf-8")
    stream.write(np.array([len(encoded)], dtype=_UINT32).tobytes())
    stream.write(encoded)


class _Reader:
    def __init__(self, data: bytes):
        self._data = data
        self._offset = 0

    def read(self, size: int) -> bytes:
        if self._offset + size > len(self._data):
            raise CheckpointFormatError("truncated container")
        chunk = self._data[self._offset:self._offset + size]
        self._offset += size
        return chunk

    def uint32(self, count: int) -> np.ndarray:
        return np.frombuffer(self.read(count * _UINT32.itemsize), dtype=_UINT32)

    def string(self) -> str:
        (size,) = self.uint32(1)
        return self.read(int(size)).decode("utf-8")

    @property
    def exhausted(self) -> bool:
        return self._offset == len(self._data)
