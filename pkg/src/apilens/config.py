"""Engine configuration: result limits and ranking constants."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

from .examples import API_WORD_WEIGHT, BREVITY_WEIGHT, KEYWORD_WORD_WEIGHT


@dataclass(frozen=True, slots=True)
class EngineConfig:
    example_limit: int = 10
    brevity_weight: int | float = BREVITY_WEIGHT
    api_word_weight: int = API_WORD_WEIGHT
    keyword_word_weight: int = KEYWORD_WORD_WEIGHT
    debounce_hint_ms: int = 200  # advisory for clients; the engine never waits

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def load_config(path: str | Path) -> EngineConfig:
    """Read a JSON config file; unknown keys are rejected to catch typos."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError(f"config {path} must be a JSON object")
    known = {f.name for f in dataclasses.fields(EngineConfig)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"config {path}: unknown keys {sorted(unknown)}")
    return EngineConfig(**data)
