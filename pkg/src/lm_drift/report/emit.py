"""
Figure emitter - writes one chart-data file and one SVG per chart, plus a
manifest, under ``<output_dir>/figures/``.

Chart-data file (``<kind>__<scope>.json``)::

    {"schema_version": 1, "kind": "sunburst", "scope": "ACL 2023", "data": {...}}

Manifest (``manifest.json``): files sorted by path, each with kind, scope and
the SHA-256 of its bytes.
"""

import dataclasses
import hashlib
import json
import logging
import shutil
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..analysis.runner import DriftAnalysis
from ..errors import OutputExistsError, OutputWriteError
from ..lexicon.model import Lexicon
from .charts import ChartBundle, chart_bundles
from .palette import root_colors
from .render import StyleOptions, render

logger = logging.getLogger(__name__)

CHART_SCHEMA_VERSION = 1
FIGURES_DIR = "figures"
MANIFEST_NAME = "manifest.json"


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _write(path: Path, text: str) -> bytes:
    data = text.encode("utf-8")
    try:
        path.write_bytes(data)
    except OSError as e:
        raise OutputWriteError(str(path), e.strerror or str(e)) from e
    return data


def _chart_document(bundle: ChartBundle) -> str:
    document = {
        "schema_version": CHART_SCHEMA_VERSION,
        "kind": bundle.kind.value,
        "scope": bundle.scope,
        "data": bundle.data,
    }
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def prepare_output(figures_dir: Path, force: bool) -> None:
    """Create the figures directory; refuse to write into a non-empty one unless ``force``."""
    if figures_dir.exists() and any(figures_dir.iterdir()):
        if not force:
            raise OutputExistsError(str(figures_dir))
        logger.info("clearing %s", figures_dir)
        try:
            shutil.rmtree(figures_dir)
        except OSError as e:
            raise OutputWriteError(str(figures_dir), e.strerror or str(e)) from e
    try:
        figures_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputWriteError(str(figures_dir), e.strerror or str(e)) from e


def emit_all(
    analysis: DriftAnalysis,
    lexicon: Lexicon,
    output_dir: Path,
    style: Optional[StyleOptions] = None,
    force: bool = False,
    threshold: float = 0.005,
) -> Dict[str, Any]:
    """
    Render every chart the analysis supports and write it with its data file.

    Colours come from the lexicon's sorted root list, so the same root has the
    same colour in every chart of the run.

    Returns:
        the manifest as written

    Raises:
        OutputExistsError: figures directory is not empty and ``force`` is off
        OutputWriteError: a file or directory cannot be written
        SchemaError: a chart's data does not fit its kind
    """
    figures_dir = Path(output_dir) / FIGURES_DIR
    prepare_output(figures_dir, force)

    if style is None:
        style = StyleOptions(colors=root_colors(lexicon.roots()))
    elif not style.colors:
        style = dataclasses.replace(style, colors=root_colors(lexicon.roots()))

    files: List[Dict[str, str]] = []
    bundles = chart_bundles(analysis, lexicon, threshold)
    seen: Dict[str, str] = {}
    for bundle in bundles:
        stem = bundle.stem
        if stem in seen:
            # two scopes slugged to the same name
            raise OutputWriteError(str(figures_dir / stem), f"scope {bundle.scope!r} collides with {seen[stem]!r}")
        seen[stem] = bundle.scope

        svg = render(bundle.kind, bundle.data, style)
        for suffix, text in ((".json", _chart_document(bundle)), (".svg", svg)):
            name = f"{stem}{suffix}"
            data = _write(figures_dir / name, text)
            files.append({"path": name, "kind": bundle.kind.value, "scope": bundle.scope, "sha256": _sha256(data)})
        logger.debug("rendered %s", stem)

    files.sort(key=lambda f: f["path"])
    manifest = {
        "schema_version": CHART_SCHEMA_VERSION,
        "kinds": sorted({f["kind"] for f in files}),
        "files": files,
    }
    _write(figures_dir / MANIFEST_NAME, json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    logger.info("wrote %d charts (%d files) to %s", len(bundles), len(files), figures_dir)
    return manifest


def read_manifest(output_dir: Path) -> Dict[str, Any]:
    return json.loads((Path(output_dir) / FIGURES_DIR / MANIFEST_NAME).read_text(encoding="utf-8"))


def verify_manifest(output_dir: Path) -> List[str]:
    """Paths whose bytes no longer match the manifest digest (missing files included)."""
    figures_dir = Path(output_dir) / FIGURES_DIR
    stale = []
    for entry in read_manifest(output_dir)["files"]:
        path = figures_dir / entry["path"]
        if not path.exists() or _sha256(path.read_bytes()) != entry["sha256"]:
            stale.append(entry["path"])
    return stale
