"""Command-line entry point: enumeration, map construction, metrics, simulation."""

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import fadespace, latincube, metrics, simulator
from .latincube import NonRemovableClassError, RelayMap
from .metrics import FadeState, MapCatalog
from .simulator import ChannelModel, Scheme, SimConfig

CSV_COLUMNS = ["scheme", "rician_k_db", "snr_db", "node", "bit_errors", "bits_total", "ber"]


class CliError(Exception):
    """User-facing error with a one-line message."""


def _parse_fade(text: str) -> FadeState:
    parts = text.split()
    if len(parts) != 3:
        raise CliError(f'expected three "re,im" gains separated by spaces, got {text!r}')
    gains = []
    for p in parts:
        try:
            re_s, im_s = p.split(",")
            gains.append(complex(float(re_s), float(im_s)))
        except ValueError as exc:
            raise CliError(f"bad gain {p!r}: {exc}") from exc
    return FadeState(*gains)


def _parse_snr(text: str) -> tuple[float, ...]:
    """Either comma-separated values or start:step:stop (stop inclusive)."""
    if ":" in text:
        try:
            start, step, stop = (float(x) for x in text.split(":"))
        except ValueError as exc:
            raise CliError(f"bad SNR range {text!r}: {exc}") from exc
        if step <= 0:
            raise CliError("SNR range step must be positive")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(start + i * step for i in range(max(n, 0)))
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError as exc:
        raise CliError(f"bad SNR list {text!r}: {exc}") from exc


def _load_map(path: str) -> RelayMap:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"cannot read map file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"map file {path} is not valid JSON: {exc}") from exc
    try:
        return RelayMap.from_json_dict(data)
    except ValueError as exc:
        raise CliError(f"invalid map file {path}: {exc}") from exc


def _write_map(m: RelayMap, out: str | None) -> None:
    text = json.dumps(m.to_json_dict(), indent=None, separators=(",", ":"))
    if out is None:
        print(text)
    else:
        Path(out).write_text(text + "\n")


def cmd_enumerate(args) -> int:
    classes = fadespace.enumerate_classes()
    counts = fadespace.census(classes)
    if args.json:
        print(json.dumps(counts))
    else:
        print(
            f"case1={counts['case1']} case2={counts['case2']} "
            f"case3={counts['case3']} total={counts['total']}"
        )
        print(
            f"case3 by adjacent components: 1->{counts['case3_adjacent1']} "
            f"2->{counts['case3_adjacent2']} 3->{counts['case3_adjacent3']}"
        )
        print(f"removable={counts['removable']} non-removable={counts['total'] - counts['removable']}")
    if args.dump:
        payload = [
            {
                "id": c.id,
                "case": c.case,
                "removable": c.removable,
                "members": [[[d.re, d.im] for d in m.components] for m in c.members],
            }
            for c in classes
        ]
        Path(args.dump).write_text(json.dumps(payload))
    return 0


def cmd_build_map(args) -> int:
    try:
        cls = fadespace.class_by_id(args.class_id)
    except KeyError as exc:
        raise CliError(str(exc.args[0])) from exc
    try:
        m = latincube.map_for_class(cls)
    except NonRemovableClassError as exc:
        raise CliError(f"class {args.class_id} is non-removable: {exc}") from exc
    _write_map(m, args.out)
    return 0


def cmd_build_all(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    built = 0
    for cls in fadespace.enumerate_classes():
        if not cls.removable:
            continue
        m = latincube.map_for_class(cls)
        _write_map(m, str(out / f"map_{cls.id:03d}.json"))
        built += 1
    print(f"wrote {built} maps to {out}")
    return 0


def cmd_validate(args) -> int:
    m = _load_map(args.file)
    if not latincube.exclusive_law_ok(m):
        raise CliError(f"map {args.file} repeats a label inside a slice")
    if m.canonical is not None:
        cls = fadespace.class_of(m.canonical)
        if not latincube.removes(m, cls):
            raise CliError(f"map {args.file} does not honor its class constraints")
    if args.json:
        print(json.dumps({"ok": True, "t": m.t, "class_id": m.class_id}))
    else:
        print(f"OK t={m.t}")
    return 0


def cmd_dmin(args) -> int:
    m = _load_map(args.map)
    h = _parse_fade(args.h)
    value = metrics.dmin_cluster(m, h)
    if args.json:
        print(json.dumps({"dmin_cluster": value}))
    else:
        print(f"{value:.12g}")
    return 0


def cmd_classify_fade(args) -> int:
    h = _parse_fade(args.h)
    hit = metrics.is_singular(h, tol=args.tol)
    if args.json:
        print(json.dumps({"class_id": hit}))
    else:
        print("none" if hit is None else str(hit))
    return 0


def cmd_simulate(args) -> int:
    config = SimConfig(
        snr_db_list=_parse_snr(args.snr),
        frames=args.frames,
        frame_len_bits=args.frame_bits,
        scheme=Scheme(args.scheme),
        seed=args.seed,
    )
    try:
        config.validate()
    except simulator.ConfigError as exc:
        raise CliError(str(exc)) from exc
    model = ChannelModel(rician_k_db=args.rician_k, variance_db=args.variance_db)
    catalog = MapCatalog.build()
    records = simulator.run_sim(config, catalog, model)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow(
                [
                    args.scheme,
                    format(args.rician_k, "g"),
                    format(rec.snr_db, "g"),
                    rec.node.name,
                    rec.bit_errors,
                    rec.bits_total,
                    format(rec.ber, ".12g"),
                ]
            )
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trirelay",
        description="Adaptive network-coding maps and BER simulation for the three-way 4-PSK relay",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="count singular fade subspace classes")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dump", metavar="FILE", help="write all classes as JSON")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("build-map", help="build the map removing one subspace class")
    p.add_argument("--class-id", type=int, required=True)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_build_map)

    p = sub.add_parser("build-all", help="build maps for every removable class")
    p.add_argument("--out", metavar="DIR", required=True)
    p.set_defaults(func=cmd_build_all)

    p = sub.add_parser("validate", help="check a map file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("dmin", help="minimum cluster distance of a map at a fade state")
    p.add_argument("--map", required=True)
    p.add_argument("--h", required=True, metavar='"re,im re,im re,im"')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dmin)

    p = sub.add_parser("classify-fade", help="find the subspace class containing a fade state")
    p.add_argument("--h", required=True, metavar='"re,im re,im re,im"')
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify_fade)

    p = sub.add_parser("simulate", help="Monte Carlo BER simulation")
    p.add_argument("--scheme", choices=[s.value for s in Scheme], required=True)
    p.add_argument("--rician-k", type=float, default=10.0, help="Rician factor in dB")
    p.add_argument("--variance-db", type=float, default=0.0, help="total channel power in dB")
    p.add_argument("--snr", required=True, help='"start:step:stop" or comma list, dB')
    p.add_argument("--frames", type=int, required=True)
    p.add_argument("--frame-bits", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, metavar="FILE")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
