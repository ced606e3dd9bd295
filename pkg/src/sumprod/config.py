"""Run configuration: brute-force caps, worker count, seed and witness pool."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields, replace

from .errors import ConfigError
from .families import FamilySpec
from .structure_stats import DEFAULT_POOL, PoolConfig


@dataclass(frozen=True)
class HarnessConfig:
    seed: int = 0
    workers: int = 1
    cap_sigma: int = 12**3
    cap_sols: int = 6
    cap_incidence: int = 10**7
    # pair budget for each expander set A(A +- A) and for each shift A(A +- a)
    cap_expander: int = 4 * 10**6
    # Katz-Koester runs over all of A/A up to this |A|
    cap_katz_koester: int = 64
    pool: PoolConfig = DEFAULT_POOL
    family: FamilySpec | None = None
    sizes: tuple = ()

    def __post_init__(self):
        for f in ("cap_sigma", "cap_sols", "cap_incidence", "cap_expander", "workers"):
            v = getattr(self, f)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ConfigError(f"{f} must be a positive integer, got {v!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 1 << 64:
            raise ConfigError("seed must be an unsigned 64-bit integer")

    def to_dict(self):
        d = asdict(self)
        d["pool"] = self.pool.to_dict()
        d["family"] = self.family.to_dict() if self.family else None
        d["sizes"] = list(self.sizes)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "HarnessConfig":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        d = dict(d)
        try:
            if "pool" in d:
                d["pool"] = PoolConfig.from_dict(d["pool"])
            if d.get("family") is not None:
                d["family"] = FamilySpec.from_dict(d["family"])
            if "sizes" in d:
                d["sizes"] = tuple(int(n) for n in d["sizes"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        return cls(**d)

    def updated(self, **overrides) -> "HarnessConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def load_config(path) -> HarnessConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return HarnessConfig.from_dict(data)
