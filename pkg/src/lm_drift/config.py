"""
Configuration - YAML file plus CLI overrides; env vars only for the credential
and the metadata endpoint.
"""

import dataclasses
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple

import yaml
from dotenv import load_dotenv

from .errors import ConfigError


DEFAULT_CONFIG_NAME = "lm_drift.yaml"
METADATA_URL_ENV = "LM_DRIFT_METADATA_URL"


@dataclass(frozen=True)
class PathsConfig:
    corpus: Path = Path("data/corpus.jsonl")
    lexicon: Path = Path("data/lexicon.yaml")
    decision_log: Path = Path("data/decisions.jsonl")
    counts: Path = Path("data/counts.jsonl")
    candidates: Path = Path("data/candidates.jsonl")
    cache: Path = Path("data/extraction_cache.jsonl")
    output_dir: Path = Path("output")


@dataclass(frozen=True)
class FetchConfig:
    metadata_url: Optional[str] = None
    pdf_url_template: str = "https://aclanthology.org/{paper_id}.pdf"
    max_workers: int = 4
    max_retries: int = 3
    timeout: float = 30.0


@dataclass(frozen=True)
class MatcherConfig:
    scope: str = "body"  # "body" (default setup) or "abstract"


@dataclass(frozen=True)
class ExtractionConfig:
    endpoint: str = "http://localhost:11434/v1"
    model: str = "llama3.1"
    api_key_env: str = "LM_DRIFT_API_KEY"
    timeout: float = 60.0
    max_workers: int = 4
    max_retries: int = 3
    include_title: bool = False


@dataclass(frozen=True)
class ReportConfig:
    sunburst_threshold: float = 0.005
    top_k: int = 10


@dataclass(frozen=True)
class Config:
    paths: PathsConfig = field(default_factory=PathsConfig)
    fetch: FetchConfig = field(default_factory=FetchConfig)
    matcher: MatcherConfig = field(default_factory=MatcherConfig)
    extraction: ExtractionConfig = field(default_factory=ExtractionConfig)
    report: ReportConfig = field(default_factory=ReportConfig)
    venue_order: Tuple[str, ...] = ("NAACL", "ACL", "EMNLP")

    def with_paths(self, **overrides: Optional[Path]) -> "Config":
        """Return a copy with the given (non-None) path overrides applied."""
        changes = {k: Path(v) for k, v in overrides.items() if v is not None}
        if not changes:
            return self
        return dataclasses.replace(self, paths=dataclasses.replace(self.paths, **changes))

    def with_section(self, section: str, **overrides: Any) -> "Config":
        changes = {k: v for k, v in overrides.items() if v is not None}
        if not changes:
            return self
        current = getattr(self, section)
        return dataclasses.replace(self, **{section: dataclasses.replace(current, **changes)})

    @property
    def metadata_url(self) -> Optional[str]:
        return self.fetch.metadata_url or os.environ.get(METADATA_URL_ENV)

    def api_key(self) -> Optional[str]:
        return os.environ.get(self.extraction.api_key_env) or None


_SECTIONS = {
    "paths": PathsConfig,
    "fetch": FetchConfig,
    "matcher": MatcherConfig,
    "extraction": ExtractionConfig,
    "report": ReportConfig,
}


def _build_section(name: str, cls: type, raw: Any) -> Any:
    if raw is None:
        return cls()
    if not isinstance(raw, Mapping):
        raise ConfigError(f"section {name!r} must be a mapping")
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown key(s) in {name!r}: {', '.join(unknown)}")
    return cls(**dict(raw))


def _resolve_paths(paths: PathsConfig, base_dir: Path) -> PathsConfig:
    resolved: Dict[str, Path] = {}
    for f in dataclasses.fields(PathsConfig):
        p = Path(getattr(paths, f.name))
        resolved[f.name] = p if p.is_absolute() else base_dir / p
    return PathsConfig(**resolved)


def parse_config(data: Mapping[str, Any], base_dir: Path) -> Config:
    known_top = set(_SECTIONS) | {"venue_order"}
    unknown = sorted(set(data) - known_top)
    if unknown:
        raise ConfigError(f"unknown top-level key(s): {', '.join(unknown)}")

    sections = {
        name: _build_section(name, cls, data.get(name))
        for name, cls in _SECTIONS.items()
    }
    sections["paths"] = _resolve_paths(sections["paths"], base_dir)

    venue_order = data.get("venue_order") or Config().venue_order
    if not isinstance(venue_order, (list, tuple)) or not all(isinstance(v, str) for v in venue_order):
        raise ConfigError("venue_order must be a list of venue names")

    cfg = Config(venue_order=tuple(venue_order), **sections)
    if cfg.matcher.scope not in ("body", "abstract"):
        raise ConfigError(f"matcher.scope must be 'body' or 'abstract', got {cfg.matcher.scope!r}")
    return cfg


def load_config(path: Optional[Path] = None) -> Config:
    """
    Load configuration.

    Args:
        path: explicit config file; when None, ``lm_drift.yaml`` in the working
            directory is used if present, otherwise defaults.

    Raises:
        ConfigError: unreadable file, unknown keys, or bad values.
    """
    load_dotenv()
    if path is None:
        candidate = Path.cwd() / DEFAULT_CONFIG_NAME
        if not candidate.exists():
            return parse_config({}, Path.cwd())
        path = candidate

    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"{path}: invalid YAML: {e}") from e
    if not isinstance(data, Mapping):
        raise ConfigError(f"{path}: top level must be a mapping")
    return parse_config(data, path.resolve().parent)
