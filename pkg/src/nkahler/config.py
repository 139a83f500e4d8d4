"""Run configuration shared by the CLI and the experiment scripts."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Optional

SEED_ENV = "NK_SEED"


@dataclass(frozen=True)
class RunConfig:
    null_tol: float = 1e-10
    class_tol: float = 1e-6
    fd_tol: float = 1e-5
    grid: int = 50
    samples: int = 1000
    curvature_points: int = 25
    seed: int = 0
    out: Optional[str] = None

    def __post_init__(self):
        for name in ("null_tol", "class_tol", "fd_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        for name in ("grid", "samples", "curvature_points"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be at least 1")

    @classmethod
    def from_dict(cls, d):
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def load(cls, path=None, env=None, **overrides):
        """defaults < config file < NK_SEED < explicit overrides (None values ignored)."""
        env = os.environ if env is None else env
        cfg = cls()
        if path is not None:
            with open(path, encoding="utf-8") as fh:
                cfg = cls.from_dict({**asdict(cfg), **json.load(fh)})
        if env.get(SEED_ENV) is not None:
            cfg = replace(cfg, seed=int(env[SEED_ENV]))
        given = {k: v for k, v in overrides.items() if v is not None}
        return replace(cfg, **given) if given else cfg

    def to_dict(self):
        return asdict(self)
