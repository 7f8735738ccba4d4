"""
File Utilities

Small helpers for the output files every command writes: directories,
JSON documents, text tables and raw bytes.
"""

import os
from typing import Any, Optional

import msgspec

__all__ = [
    "ensure_dir",
    "write_bytes",
    "write_text",
    "write_json",
    "read_json",
    "output_path",
]


def ensure_dir(path: str) -> str:
    """Create ``path`` (and parents) if missing; returns it."""
    if path:
        os.makedirs(path, exist_ok=True)
    return path


def output_path(out_dir: str, name: str) -> str:
    return os.path.join(ensure_dir(out_dir), name)


def write_bytes(filepath: str, content: bytes) -> str:
    ensure_dir(os.path.dirname(filepath))
    with open(filepath, "wb") as f:
        f.write(content)
    return filepath


def write_text(filepath: str, content: str) -> str:
    return write_bytes(filepath, content.encode("utf-8"))


def write_json(filepath: str, obj: Any, indent: int = 2) -> str:
    """Encode ``obj`` with msgspec (Structs, dataclasses, builtins) and pretty-print it."""
    data = msgspec.json.format(msgspec.json.encode(obj), indent=indent)
    return write_bytes(filepath, data + b"\n")


def read_json(filepath: str, type: Optional[Any] = None) -> Any:
    with open(filepath, "rb") as f:
        raw = f.read()
    if type is None:
        return msgspec.json.decode(raw)
    return msgspec.json.decode(raw, type=type)
