"""Application settings loaded from environment / .env file, plus the static scenario tables."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pydantic import Field as PydanticField
from pydantic_settings import BaseSettings

from errors import SchemaError


# ---------------------------------------------------------------------------
# Static scenarios -- the presentations, extensions, points and comonads the
# reproduction runs and the test batteries are built from.
# ---------------------------------------------------------------------------


@dataclass
class Scenario:
    """One named reproduction run: a CLI verb with its arguments."""

    name: str
    verb: str
    args: list[str] = field(default_factory=list)
    description: str = ""


ORACLE_BATTERY: list[str] = [
    "Q[x]",
    "GF(2)[x]/(x^2)",
    "GF(3)[x]/(x^3)",
    "GF(2)[x,y]/(x^2,y^2)",
    "Q[x,y]",
]

REGULAR_RINGS: list[str] = [
    "Q[x]",
    "Q[x,y]",
    "Q[x,y,z]",
    "GF(2)[x]",
    "GF(2)[x,y]",
    "GF(2)[x,y,z]",
]

GALOIS_EXTENSIONS: list[str] = [
    "Q(i^2+1)",
    "GF(2^2;a^2+a+1)",
]

# Nonzero points of GF(2)^r used when no point is given.
DEFAULT_POINTS: dict[int, tuple[int, ...]] = {
    1: (1,),
    2: (1, 1),
    3: (1, 0, 1),
    4: (1, 1, 0, 1),
}

ODD_SHIFTED: list[tuple[int, int]] = [(3, 2), (3, 3), (5, 2)]

COMONAD_SPECS: dict[str, dict[str, Any]] = {
    "identity": {
        "rings": ["Q[x]/(x^2)"],
        "maps": [{"from": 0, "to": 0, "images": ["x"]}],
        "pattern": "FU",
    },
    "galois": {
        "rings": ["Q", "Q(i^2+1)"],
        "maps": [{"from": 0, "to": 1, "images": []}],
        "pattern": "FU",
    },
    "dual-numbers": {
        "rings": ["Q", "Q[x]/(x^2)"],
        "maps": [{"from": 0, "to": 1, "images": []}],
        "pattern": "FU",
    },
    "chain": {
        "rings": ["Q", "Q", "Q(i^2+1)"],
        "maps": [{"from": 0, "to": 1, "images": []}, {"from": 1, "to": 2, "images": []}],
        "pattern": "F2F1U1U2",
    },
}

SCENARIOS: list[Scenario] = [
    Scenario("tor-regular", "tor", ["--ring", "Q[x,y]", "--max-degree", "4", "--check", "hopf"],
             "Tor of a polynomial ring is exterior"),
    Scenario("tor-tau", "tor", ["--ring", "Q[x]", "--max-degree", "4", "--check", "hopf"],
             "one primitive generator with square zero"),
    Scenario("dualize-regular", "dualize", ["--ring", "Q[x,y,z]", "--max-degree", "4"],
             "dual of Tor against the exterior algebra"),
    Scenario("shifted-p2", "shifted", ["--p", "2", "--r", "3", "--point", "1,0,1"],
             "shifted subgroup bialgebra at p = 2"),
    Scenario("shifted-p3", "shifted", ["--p", "3", "--r", "2", "--point", "1,1"],
             "shifted subgroup coring at p = 3"),
    Scenario("endo-p3", "endo", ["--p", "3"], "stable endomorphisms against the preprojective algebra"),
    Scenario("endo-p5", "endo", ["--p", "5"], "stable endomorphisms against the preprojective algebra"),
    Scenario("galois-gaussian", "galois", ["--field", "Q(i^2+1)"], "Galois coring of Q(i)"),
    Scenario("galois-gf4", "galois", ["--field", "GF(2^2;a^2+a+1)"], "Galois coring of GF(4)"),
    Scenario("descend-gaussian", "descend", ["--field", "Q(i^2+1)"], "descent of induced comodules"),
    Scenario("extract-galois", "extract", ["--spec", "galois"], "Eilenberg-Watts for the Galois comonad"),
    Scenario("extract-dual-numbers", "extract", ["--spec", "dual-numbers"], "Eilenberg-Watts for Q -> Q[x]/(x^2)"),
]


class Settings(BaseSettings):
    """All configuration for coringlab, loaded from .env or environment."""

    max_degree: int = PydanticField(
        default=8,
        ge=0,
        description="Global truncation cap on homological and internal degrees",
    )
    seed: int = PydanticField(default=0, description="Seed for every random battery")
    battery_size: int = PydanticField(default=20, ge=1, description="Size of random test batteries")
    max_dimension: int = PydanticField(
        default=8, ge=1, description="Largest dimension of a random battery object"
    )
    output_dir: str = PydanticField(default="output", description="Directory for result envelopes")

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "env_prefix": "CORINGLAB_",
        "extra": "ignore",
    }


def load_settings(config: str | Path | None = None, **overrides: Any) -> Settings:
    """Defaults < environment < JSON config file < explicit overrides (None means unset)."""
    values: dict[str, Any] = {}
    if config is not None:
        try:
            data = json.loads(Path(config).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON in {config} ({exc.msg})", "/") from exc
        if not isinstance(data, dict):
            raise SchemaError("a config file holds one JSON object", "/")
        values.update({k.replace("-", "_"): v for k, v in data.items()})
    values.update({k: v for k, v in overrides.items() if v is not None})
    known = {k: v for k, v in values.items() if k in Settings.model_fields}
    return Settings(**known)
