"""

Internal apme utilities.

"""

from .enum import InsensitiveEnum, TitledEnum
from .files import atomic_path, write_frame, write_json, read_frame, read_json, dumps
from .random import resolve_seed, validate_seed, stream

__all__ = [
    "InsensitiveEnum",
    "TitledEnum",
    "atomic_path",
    "write_frame",
    "write_json",
    "read_frame",
    "read_json",
    "dumps",
    "resolve_seed",
    "validate_seed",
    "stream",
]
