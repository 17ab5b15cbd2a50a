"""
Run configuration shared by the command line and the verification suites.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from ..constants import (
    CACHE_ENV_VAR,
    DEFAULT_CACHE_FILE_NAME,
    DEFAULT_DIMENSION_BOUND,
    DEFAULT_FGL_DEGREE,
    DEFAULT_Q_ORDER,
    DEFAULT_SEED,
    DEFAULT_VERTEX_N_BOUND,
    OUTPUT_FORMATS,
)
from .errors import BoundError


@dataclass(frozen=True)
class Config:
    """
    Truncation orders, output format, cache location and seed.

    Args:
        fgl_degree: Total (u, v)-degree D of formal group laws.
        q_order: Order N of q-series.
        vertex_n_bound: Largest n accepted by the localization oracle.
        dimension_bound: Largest dimension handled by Chern-number calculus.
        output_format: ``text`` or ``json``.
        cache_path: Result cache file; None disables caching.
        seed: Seed of the specialization generator.
        jobs: Worker processes for the localization sum.
    """

    fgl_degree: int = DEFAULT_FGL_DEGREE
    q_order: int = DEFAULT_Q_ORDER
    vertex_n_bound: int = DEFAULT_VERTEX_N_BOUND
    dimension_bound: int = DEFAULT_DIMENSION_BOUND
    output_format: str = "text"
    cache_path: Optional[Path] = None
    seed: int = DEFAULT_SEED
    jobs: int = 1

    def validate(self) -> "Config":
        for name in ("fgl_degree", "q_order", "vertex_n_bound", "dimension_bound"):
            value = getattr(self, name)
            if value < 0:
                raise BoundError(name, value)
        if self.fgl_degree < 1:
            raise BoundError("fgl_degree", self.fgl_degree)
        if self.jobs < 1:
            raise BoundError("jobs", self.jobs)
        if self.output_format not in OUTPUT_FORMATS:
            raise BoundError("output_format", self.output_format)
        return self

    def with_overrides(self, **changes) -> "Config":
        """Copy with the given fields replaced; None values are ignored."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    @classmethod
    def from_environment(cls) -> "Config":
        """Defaults, with the cache path taken from the environment when set."""
        return cls(cache_path=default_cache_path())


def default_cache_path() -> Path:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env).expanduser()
    return Path.cwd() / DEFAULT_CACHE_FILE_NAME
