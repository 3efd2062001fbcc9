"""Run artifacts: CSV logs and static SVG trajectory plots.

Both writers are deterministic: the same log gives the same bytes. Numbers
in the CSV use ``repr`` so they parse back to the identical float.
"""
from __future__ import annotations

import csv
import io
import math

from .simulator import ScenarioConfig, SimLog

CSV_COLUMNS = ("t", "wx", "wy", "wpsi", "wu", "wr", "rx", "ry", "rpsi", "ru", "rr",
               "leaf", "encounter", "tl", "tr", "sep", "xte")


def _num(v) -> str:
    return "" if v is None else repr(float(v))


def log_rows(log: SimLog):
    for rec in log.records:
        w, r = rec.white, rec.red
        red = ("", "", "", "", "") if r is None else tuple(_num(v) for v in (r.x, r.y, r.psi, r.u, r.r))
        yield ((_num(rec.t),) + tuple(_num(v) for v in (w.x, w.y, w.psi, w.u, w.r)) + red
               + (rec.leaf, rec.encounter, _num(rec.t_left), _num(rec.t_right),
                  _num(rec.sep), _num(rec.xte)))


def log_to_csv(log: SimLog) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(log_rows(log))
    return buf.getvalue()


def write_log_csv(log: SimLog, path) -> None:
    text = log_to_csv(log)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write log {path}: {exc.strerror}") from exc


def read_log_csv(path) -> list[dict]:
    """Rows of a written log with numeric fields as floats (None when empty)."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    out = []
    for row in rows:
        conv = {}
        for k, v in row.items():
            if k in ("leaf", "encounter"):
                conv[k] = v
            else:
                conv[k] = None if v == "" else float(v)
        out.append(conv)
    return out


# SVG

_W = 640
_MARGIN = 40


def _fmt(v: float) -> str:
    return f"{v:.3f}"


class _Frame:
    """Maps North-East metres to SVG pixels: East to the right, North up."""

    def __init__(self, pts):
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        self.n0, self.n1 = min(xs), max(xs)
        self.e0, self.e1 = min(ys), max(ys)
        span = max(self.n1 - self.n0, self.e1 - self.e0, 1.0)
        self.scale = (_W - 2 * _MARGIN) / span
        self.width = int(math.ceil((self.e1 - self.e0) * self.scale)) + 2 * _MARGIN
        self.height = int(math.ceil((self.n1 - self.n0) * self.scale)) + 2 * _MARGIN

    def __call__(self, north: float, east: float) -> tuple[str, str]:
        px = _MARGIN + (east - self.e0) * self.scale
        py = self.height - _MARGIN - (north - self.n0) * self.scale
        return _fmt(px), _fmt(py)


def _polyline(frame, pts, **attrs) -> str:
    coords = " ".join(",".join(frame(n, e)) for n, e in pts)
    extra = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<polyline points="{coords}" fill="none" {extra}/>'


def trajectory_svg(log: SimLog, config: ScenarioConfig) -> str:
    if not log.records:
        raise ValueError("empty log")
    path = config.route.build(config.white_state)
    white = [(r.white.x, r.white.y) for r in log.records]
    red = None if log.records[0].red is None else [(r.red.x, r.red.y) for r in log.records]
    ref = list(zip(path.xs.tolist(), path.ys.tolist()))
    frame = _Frame(white + (red or []) + ref)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{frame.width}" height="{frame.height}" '
        f'viewBox="0 0 {frame.width} {frame.height}">',
        f"<title>{config.name}</title>",
        f'<rect x="0" y="0" width="{frame.width}" height="{frame.height}" fill="white"/>',
    ]
    # axes along the lower and left edges, labelled in metres
    x0, y0 = _fmt(_MARGIN), _fmt(frame.height - _MARGIN)
    x1, y1 = _fmt(frame.width - _MARGIN), _fmt(_MARGIN)
    parts.append(f'<g id="axes" stroke="#888" stroke-width="1">'
                 f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/>'
                 f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/></g>')
    parts.append(f'<text x="{x1}" y="{_fmt(frame.height - 10)}" font-size="12" text-anchor="end">'
                 f'East [m] {frame.e0:.1f} .. {frame.e1:.1f}</text>')
    parts.append(f'<text x="10" y="{_fmt(_MARGIN - 10)}" font-size="12">'
                 f'North [m] {frame.n0:.1f} .. {frame.n1:.1f}</text>')
    parts.append(_polyline(frame, ref, id="path", stroke="#555", stroke_width="1",
                           stroke_dasharray="6,4"))
    parts.append(_polyline(frame, white, id="white", stroke="blue", stroke_width="1.5"))
    if red is not None:
        parts.append(_polyline(frame, red, id="red", stroke="red", stroke_width="1.5"))
        k = min(range(len(log.records)), key=lambda i: log.records[i].sep)
        rec = log.records[k]
        for vid, st in (("white", rec.white), ("red", rec.red)):
            cx, cy = frame(st.x, st.y)
            parts.append(f'<circle class="cpa" id="cpa-{vid}" cx="{cx}" cy="{cy}" r="4" '
                         f'fill="none" stroke="black"/>')
        parts.append(f'<text x="{cx}" y="{cy}" dx="6" dy="-6" font-size="11">'
                     f'CPA {rec.sep:.1f} m at t={rec.t:.1f} s</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_trajectory_svg(log: SimLog, config: ScenarioConfig, path) -> None:
    text = trajectory_svg(log, config)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write plot {path}: {exc.strerror}") from exc
