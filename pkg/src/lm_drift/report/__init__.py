"""
Chart data, SVG rendering and figure emission.
"""

from .charts import ChartBundle, ChartKind, chart_bundles, slugify, validate
from .emit import CHART_SCHEMA_VERSION, emit_all, read_manifest, verify_manifest
from .palette import root_colors
from .render import StyleOptions, render
from .sunburst import OTHER_LABEL, SunburstNode, forest_total, sunburst_data

__all__ = [
    "ChartBundle",
    "ChartKind",
    "chart_bundles",
    "slugify",
    "validate",
    "CHART_SCHEMA_VERSION",
    "emit_all",
    "read_manifest",
    "verify_manifest",
    "root_colors",
    "StyleOptions",
    "render",
    "OTHER_LABEL",
    "SunburstNode",
    "forest_total",
    "sunburst_data",
]
