"""Self-contained SVG heatmaps of per-cell sweep statistics.

Renders one colored rect per (n, k) cell for a fixed gamma, n on the x axis
and k on the y axis. Cells dominated by singular or degenerate trials are
hatched. No plotting library is involved; the output is plain SVG 1.1.
"""

from __future__ import annotations

import math

from .harness import CellStats

STAT_FIELDS = ("td_win_ratio", "bound_prediction_ratio", "mean_td_over_br",
               "mean_rel_td", "mean_rel_br")
# indicator means live in [0,1] and get a fixed color scale
UNIT_SCALE_STATS = {"td_win_ratio", "bound_prediction_ratio"}

_CELL = 16
_MARGIN_LEFT = 46
_MARGIN_BOTTOM = 40
_MARGIN_TOP = 30
_MARGIN_RIGHT = 16

# dark blue -> teal -> yellow gradient anchors
_ANCHORS = [(0.0, (68, 1, 84)), (0.5, (33, 145, 140)), (1.0, (253, 231, 37))]


def _color(t: float) -> str:
    t = min(1.0, max(0.0, t))
    for (t0, c0), (t1, c1) in zip(_ANCHORS, _ANCHORS[1:]):
        if t <= t1:
            u = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
            rgb = [round(a + u * (b - a)) for a, b in zip(c0, c1)]
            return f"rgb({rgb[0]},{rgb[1]},{rgb[2]})"
    return "rgb(253,231,37)"


def _infer_cell_size(cells: list[CellStats]) -> int | None:
    # full-basis (k = n) cells have every trial degenerate, so their excluded
    # count reveals the per-cell trial total
    totals = [c.excluded_count for c in cells if c.k == c.n]
    return max(totals) if totals and max(totals) > 0 else None


def render_heatmap(cells: list[CellStats], stat: str, gamma: float,
                   log_scale: bool = False) -> str:
    """Return an SVG document for one statistic at one gamma."""
    if stat not in STAT_FIELDS:
        raise ValueError(f"unknown statistic {stat!r}; choose from {STAT_FIELDS}")
    selected = [c for c in cells if c.gamma == gamma]
    if not selected:
        available = sorted({c.gamma for c in cells})
        raise ValueError(f"no cells for gamma={gamma}; available: {available}")

    cell_size = _infer_cell_size(cells)
    values = {(c.n, c.k): getattr(c, stat) for c in selected}
    hatched = set()
    for c in selected:
        broken = c.singular_count + c.excluded_count
        v = values[(c.n, c.k)]
        if math.isnan(v) or (cell_size is not None and 2 * broken > cell_size):
            hatched.add((c.n, c.k))

    finite = [v for v in values.values() if not math.isnan(v)]
    if stat in UNIT_SCALE_STATS and not log_scale:
        lo, hi = 0.0, 1.0
    elif finite:
        lo, hi = min(finite), max(finite)
    else:
        lo, hi = 0.0, 1.0

    if log_scale:
        floor = min((v for v in finite if v > 0), default=1.0)
        def scale(v):
            v = max(v, floor)
            llo, lhi = math.log10(max(lo, floor)), math.log10(max(hi, floor))
            return 0.5 if lhi == llo else (math.log10(v) - llo) / (lhi - llo)
    else:
        def scale(v):
            return 0.5 if hi == lo else (v - lo) / (hi - lo)

    n_min = min(c.n for c in selected)
    n_max = max(c.n for c in selected)
    k_max = max(c.k for c in selected)
    width = _MARGIN_LEFT + (n_max - n_min + 1) * _CELL + _MARGIN_RIGHT
    height = _MARGIN_TOP + k_max * _CELL + _MARGIN_BOTTOM

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}">',
        '<defs><pattern id="hatch" width="6" height="6" '
        'patternUnits="userSpaceOnUse" patternTransform="rotate(45)">'
        '<rect width="6" height="6" fill="#bbbbbb"/>'
        '<line x1="0" y1="0" x2="0" y2="6" stroke="#666666" stroke-width="2"/>'
        "</pattern></defs>",
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">'
        f"{stat} (gamma={gamma:g}{', log scale' if log_scale else ''})</text>",
    ]
    for (n, k), v in sorted(values.items()):
        x = _MARGIN_LEFT + (n - n_min) * _CELL
        y = _MARGIN_TOP + (k_max - k) * _CELL
        if (n, k) in hatched:
            fill = "url(#hatch)"
        else:
            fill = _color(scale(v))
        parts.append(
            f'<rect x="{x}" y="{y}" width="{_CELL}" height="{_CELL}" '
            f'fill="{fill}" stroke="white" stroke-width="0.5">'
            f"<title>n={n} k={k} {stat}={v:.6g}</title></rect>")

    axis_y = _MARGIN_TOP + k_max * _CELL
    for n in range(n_min, n_max + 1, max(1, (n_max - n_min) // 10 or 1)):
        x = _MARGIN_LEFT + (n - n_min) * _CELL + _CELL / 2
        parts.append(
            f'<text x="{x:.1f}" y="{axis_y + 14}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="9">{n}</text>')
    for k in range(1, k_max + 1, max(1, k_max // 10 or 1)):
        y = _MARGIN_TOP + (k_max - k) * _CELL + _CELL / 2 + 3
        parts.append(
            f'<text x="{_MARGIN_LEFT - 6}" y="{y:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="9">{k}</text>')
    parts.append(
        f'<text x="{_MARGIN_LEFT + (n_max - n_min + 1) * _CELL / 2:.1f}" '
        f'y="{axis_y + 30}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="11">n (state-space size)</text>')
    parts.append(
        f'<text x="12" y="{_MARGIN_TOP + k_max * _CELL / 2:.1f}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="11" '
        f'transform="rotate(-90 12 {_MARGIN_TOP + k_max * _CELL / 2:.1f})">'
        "k (feature dimension)</text>")
    parts.append(
        f'<text x="{width - _MARGIN_RIGHT}" y="18" text-anchor="end" '
        f'font-family="sans-serif" font-size="9">range [{lo:.3g}, {hi:.3g}]</text>')
    parts.append("</svg>")
    return "\n".join(parts)
