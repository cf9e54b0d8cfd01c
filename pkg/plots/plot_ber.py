#!/usr/bin/env python3
"""Render SNR-vs-BER figures from simulator CSV output.

Consumes the simulator's CSV schema (scheme, rician_k_db, snr_db, node,
bit_errors, bits_total, ber) and draws one log-y figure per Rician factor,
overlaying the schemes.  Zero-error points are clamped to the 0.5/bits
rule-of-thumb floor so they survive the log scale; the floor is annotated.

Usage: plot_ber.py --in results.csv [more.csv ...] --out fig.png [--per-node]
"""

import argparse
import csv
import sys
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

REQUIRED_COLUMNS = ["scheme", "rician_k_db", "snr_db", "node", "bit_errors", "bits_total", "ber"]


class PlotInputError(Exception):
    """Bad or unusable input CSV."""


@dataclass
class PlotSpec:
    inputs: list[str]
    output: str
    per_node: bool = False
    rows: list[dict] = field(default_factory=list)


def read_rows(paths: list[str]) -> list[dict]:
    rows = []
    for path in paths:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            missing = [c for c in REQUIRED_COLUMNS if c not in (reader.fieldnames or [])]
            if missing:
                raise PlotInputError(f"{path}: missing columns {missing}")
            for raw in reader:
                rows.append(
                    {
                        "scheme": raw["scheme"],
                        "rician_k_db": float(raw["rician_k_db"]),
                        "snr_db": float(raw["snr_db"]),
                        "node": raw["node"],
                        "bit_errors": int(raw["bit_errors"]),
                        "bits_total": int(raw["bits_total"]),
                    }
                )
    if not rows:
        raise PlotInputError("no data rows in input")
    return rows


def floored_ber(errors: int, bits: int) -> float:
    """Observed BER, or the 0.5/bits upper-bound floor when no errors occurred."""
    if bits <= 0:
        raise PlotInputError("bits_total must be positive")
    if errors == 0:
        return 0.5 / bits
    return errors / bits


def build_series(rows: list[dict], per_node: bool) -> dict:
    """(rician_k -> curve label -> sorted list of (snr, ber, floored))."""
    acc = defaultdict(lambda: defaultdict(lambda: [0, 0]))
    for r in rows:
        key = (r["scheme"], r["node"]) if per_node else (r["scheme"],)
        cell = acc[(r["rician_k_db"],) + key][r["snr_db"]]
        cell[0] += r["bit_errors"]
        cell[1] += r["bits_total"]
    figures: dict = defaultdict(dict)
    for full_key, by_snr in acc.items():
        k, label = full_key[0], " ".join(str(p) for p in full_key[1:])
        pts = []
        for snr in sorted(by_snr):
            errors, bits = by_snr[snr]
            pts.append((snr, floored_ber(errors, bits), errors == 0))
        figures[k][label] = pts
    return figures


def output_path(base: str, k: float, multiple: bool) -> Path:
    path = Path(base)
    if not multiple:
        return path
    return path.with_name(f"{path.stem}_k{k:g}{path.suffix}")


def render(spec: PlotSpec) -> list[tuple[Path, plt.Figure]]:
    rows = spec.rows or read_rows(spec.inputs)
    figures = build_series(rows, spec.per_node)
    multiple = len(figures) > 1
    out = []
    for k in sorted(figures):
        fig, ax = plt.subplots(figsize=(7, 5))
        floor_used = False
        for label, pts in sorted(figures[k].items()):
            snrs = [p[0] for p in pts]
            bers = [p[1] for p in pts]
            floor_used |= any(p[2] for p in pts)
            ax.semilogy(snrs, bers, marker="o", label=label)
        ax.set_xlabel("SNR (dB)")
        ax.set_ylabel("BER")
        ax.set_title(f"End-to-end BER, Rician factor {k:g} dB")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend()
        if floor_used:
            ax.annotate(
                "zero-error points shown at 0.5/bits floor",
                xy=(0.02, 0.02), xycoords="axes fraction", fontsize=8,
            )
        path = output_path(spec.output, k, multiple)
        fig.savefig(path, dpi=150, bbox_inches="tight")
        out.append((path, fig))
    return out


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--in", dest="inputs", nargs="+", required=True, metavar="CSV")
    parser.add_argument("--out", required=True, metavar="IMAGE")
    parser.add_argument("--per-node", action="store_true", help="three curves per scheme")
    args = parser.parse_args(argv)
    try:
        written = render(PlotSpec(inputs=args.inputs, output=args.out, per_node=args.per_node))
    except (PlotInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path, fig in written:
        plt.close(fig)
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
