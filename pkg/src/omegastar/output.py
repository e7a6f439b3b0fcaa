"""CSV / JSON rendering and run manifests."""
from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field

from . import __version__

MOMENTS_HEADER = ("x", "s1", "s2", "b_hat", "c_hat")
PAIRSUM_HEADER = ("x", "t_direct", "t_phi", "s2_over_x", "abs_gap", "census")
BLOCKS_HEADER = ("x", "j", "q_j", "block_size", "good", "exceptional", "phi_mass")
BV_HEADER = ("d", "z", "bv_error")
OMEGA_HEADER = ("n", "omega_star")


def fmt_real(v) -> str:
    """12 significant digits; None renders as an empty field."""
    if v is None:
        return ""
    return format(float(v), ".12g")


def _cell(v) -> str:
    if isinstance(v, float):
        return fmt_real(v)
    return "" if v is None else str(v)


def render_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def render_json(header, rows, meta: dict | None = None) -> str:
    recs = [dict(zip(header, (None if v is None else v for v in row))) for row in rows]
    doc = {"log_base": "natural", "rows": recs}
    if meta:
        doc.update(meta)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render(fmt: str, header, rows, meta: dict | None = None) -> str:
    rows = list(rows)
    return render_csv(header, rows) if fmt == "csv" else render_json(header, rows, meta)


@dataclass
class RunManifest:
    command: str
    parameters: dict
    table_limits: dict = field(default_factory=dict)
    log_base: str = "natural"
    version: str = __version__
    elapsed: float = 0.0
    thread_count: int = 1
    started: float = field(default_factory=time.perf_counter, repr=False)

    def finish(self) -> "RunManifest":
        self.elapsed = round(time.perf_counter() - self.started, 6)
        return self

    def to_json(self) -> str:
        d = asdict(self)
        d.pop("started")
        return json.dumps(d, indent=2, sort_keys=True) + "\n"
