"""

Seeded generators. Every stream is derived from a 64-bit seed plus a key
(e.g. the run index), so streams never depend on scheduling.

"""

from numpy.random import Generator, Philox, SeedSequence
from typing import Optional
import os

SEED_ENV = "APME_SEED"
MAX_SEED = 2**64 - 1


def validate_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ValueError(f"Seed must be an integer, got {seed!r}")
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"Seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def resolve_seed(seed: Optional[int] = None) -> int:
    """
    The explicit seed if given, else `APME_SEED` from the environment, else `0`.
    """

    if seed is not None:
        return validate_seed(seed)

    env_value = os.environ.get(SEED_ENV, "").strip()
    if env_value:
        try:
            return validate_seed(int(env_value, 10))
        except ValueError:
            raise ValueError(f"{SEED_ENV} must be a 64-bit unsigned integer, got '{env_value}'")

    return 0


def stream(seed: int, *key: int) -> Generator:
    """
    A counter-based generator for the substream `key` of `seed`.
    """

    return Generator(Philox(SeedSequence(validate_seed(seed), spawn_key=tuple(key))))
