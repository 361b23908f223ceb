"""Run configuration with a canonical serialization and stable hash.

Every CLI output embeds config_hash so that downstream tools can tell
at a glance whether two files came from the same physical setup.  The
hash is the first 12 hex digits of the sha256 of canonical_json, which
fixes the key order and prints floats with %.9e; for tabulated
interactions the table path (not its contents) enters the hash.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .potentials import InteractionModel, from_name, load_table

_BUILTIN_NAMES = ("A", "B", "C")
_FIELD_ORDER = (
    "interaction",
    "statistics",
    "n_max",
    "l_max",
    "gamma",
    "ortho_threshold",
    "radial_nodes",
    "angular_nodes",
)


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines a solver run.

    interaction names a built-in model ("A", "B", "C") or gives the path
    of a two-column table.  gamma=None optimizes the basis width per
    series; a positive float pins it.
    """

    interaction: str = "A"
    statistics: str = "bosons"
    n_max: int = 20
    l_max: int = 4
    gamma: float | None = None
    ortho_threshold: float = 1e-8
    radial_nodes: int = 48
    angular_nodes: int = 32

    def __post_init__(self) -> None:
        if self.statistics not in ("bosons", "fermions"):
            raise ValueError(f"unknown statistics {self.statistics!r}")
        if self.n_max < 0 or self.l_max < 0:
            raise ValueError("n_max and l_max must be non-negative")
        if self.gamma is not None and self.gamma <= 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.ortho_threshold <= 0.0:
            raise ValueError("ortho_threshold must be positive")
        if self.radial_nodes < 8 or self.angular_nodes < 8:
            raise ValueError("quadrature node counts below 8 are not sensible")


def resolve_model(config: RunConfig) -> InteractionModel:
    """Interaction model named by the configuration."""
    if config.interaction.upper() in _BUILTIN_NAMES:
        return from_name(config.interaction)
    return load_table(config.interaction)


def canonical_json(config: RunConfig) -> str:
    """Single-line JSON with fixed key order and %.9e float format."""
    parts = []
    for name in _FIELD_ORDER:
        value = getattr(config, name)
        if value is None:
            text = "null"
        elif isinstance(value, float):
            text = f"{value:.9e}"
        elif isinstance(value, int):
            text = str(value)
        else:
            text = json.dumps(value)
        parts.append(f'"{name}": {text}')
    return "{" + ", ".join(parts) + "}"


def config_hash(config: RunConfig) -> str:
    """First 12 hex digits of the sha256 of the canonical form."""
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()[:12]
