"""Run configuration: a flat JSON object of defaults, overridden by command-line flags."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .field import prime_power


@dataclass
class RunConfig:
    r: int = 3
    prec: int = 40
    d_max: int = 8
    seed: int = 0
    out_dir: str | None = None
    workers: int = 1
    karatsuba_threshold: int = 512

    def __post_init__(self):
        prime_power(self.r)  # raises for non prime powers
        if self.prec < 1:
            raise ValueError("precision must be >= 1")
        if self.d_max < 0:
            raise ValueError("d_max must be >= 0")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @classmethod
    def keys(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    @classmethod
    def load(cls, path: str | Path | None, overrides: dict | None = None) -> "RunConfig":
        data: dict = {}
        if path is not None:
            data = json.loads(Path(path).read_text())
            if not isinstance(data, dict):
                raise ValueError("config must be a JSON object")
            nested = [k for k, v in data.items() if isinstance(v, (dict, list))]
            if nested:
                raise ValueError(f"config must be flat; nested values under {nested}")
            unknown = set(data) - set(cls.keys())
            if unknown:
                raise ValueError(f"unknown config keys {sorted(unknown)}")
        for k, v in (overrides or {}).items():
            if v is not None:
                data[k] = v
        return cls(**data)

    def to_json(self) -> dict:
        return asdict(self)


def content_hash(obj) -> str:
    """SHA-256 of the canonical JSON encoding."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()
