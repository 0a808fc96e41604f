"""Runtime caps and seeds.

The active :class:`Config` lives in a context variable so that deep call
chains (quotients of quotients, lattices of subgroups) see the same caps
without threading an argument through every function.
"""
from __future__ import annotations

import contextlib
import contextvars
import dataclasses
from typing import Iterator

DEFAULT_SEED = 0xD1C50


@dataclasses.dataclass(frozen=True)
class Config:
    cap_elements: int = 200_000
    cap_quotient_degree: int = 20_000
    cap_lattice: int = 10_000
    cap_search: int = 1_000_000
    cap_dixon_prime: int = 10_000_000
    cap_split_rounds: int = 64
    seed: int = DEFAULT_SEED
    stretch: bool = False

    def __post_init__(self) -> None:
        for f in dataclasses.fields(self):
            if f.name.startswith("cap_") and getattr(self, f.name) <= 0:
                raise ValueError(f"{f.name} must be positive")


_current: contextvars.ContextVar[Config] = contextvars.ContextVar(
    "vanset_config", default=Config()
)


def get() -> Config:
    return _current.get()


@contextlib.contextmanager
def use(cfg: Config) -> Iterator[Config]:
    token = _current.set(cfg)
    try:
        yield cfg
    finally:
        _current.reset(token)
