"""
Colours shared by every chart in a run: one qualitative colour per component
root, a diverging scale for signed quantities.
"""

from typing import Dict, Sequence

import matplotlib
from matplotlib import colors as mcolors

OTHER_COLOR = "#bdbdbd"
NEUTRAL_COLOR = "#f7f7f7"

# colormap position per significance bucket; ns stays neutral
_BUCKET_STRENGTH = {"ns": 0.0, "p<0.05": 0.2, "p<0.01": 0.33, "p<0.001": 0.46}


def root_colors(roots: Sequence[str]) -> Dict[str, str]:
    """root -> hex colour, a pure function of the sorted root list."""
    cmap = matplotlib.colormaps["tab20"]
    return {root: mcolors.to_hex(cmap(i % cmap.N)) for i, root in enumerate(sorted(set(roots)))}


def lighten(hex_color: str, amount: float) -> str:
    """Blend towards white; amount 0 keeps the colour, 1 gives white."""
    r, g, b = mcolors.to_rgb(hex_color)
    amount = min(max(amount, 0.0), 1.0)
    return mcolors.to_hex((r + (1 - r) * amount, g + (1 - g) * amount, b + (1 - b) * amount))


def diverging_color(value: float, limit: float = 1.0) -> str:
    """Blue for negative, red for positive, white at zero."""
    cmap = matplotlib.colormaps["coolwarm"]
    if limit <= 0:
        return mcolors.to_hex(cmap(0.5))
    x = 0.5 + 0.5 * max(-1.0, min(1.0, value / limit))
    return mcolors.to_hex(cmap(x))


def bucket_color(bucket: str, mean_diff: float) -> str:
    strength = _BUCKET_STRENGTH.get(bucket, 0.0)
    if strength == 0.0:
        return NEUTRAL_COLOR
    cmap = matplotlib.colormaps["coolwarm"]
    return mcolors.to_hex(cmap(0.5 + strength if mean_diff >= 0 else 0.5 - strength))


def sequential_color(value: float) -> str:
    """Light to dark blue over [0, 1]."""
    cmap = matplotlib.colormaps["Blues"]
    return mcolors.to_hex(cmap(0.1 + 0.8 * max(0.0, min(1.0, value))))
