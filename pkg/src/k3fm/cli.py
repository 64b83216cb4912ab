"""Command-line front end: census tables, partner listings, coset
classification, and the self-verification pipeline.

Exact integers and rationals ride through JSON as decimal strings; floats
appear only in defect and tolerance fields.  CSV output is RFC-4180 framed
with a mandatory header row.  Nothing reads the environment, so a fixed
seed reproduces a verification report byte for byte.

Exit codes: 0 success, 1 verification failures, 2 usage error,
3 classification failure, 4 parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass

from .arith import exact_divisor_values, factorize
from .corr import classify_coset, report_to_json, represent, verify_correspondence
from .errors import K3FMError
from .fmcalc import census_to_json, induced_transform, partner_census, source_twist
from .halfplane import (
    HalfPlanePoint,
    charge_product_defect,
    equivariance_defect,
    induced_action,
    mobius,
)
from .lattice import (
    discriminant_unit,
    is_isometry,
    is_orientation_preserving,
    isometry_from_json,
)
from .modgroup import al_from_json, al_to_json, fricke_coset_count, random_al

__all__ = ["VerifyConfig", "main", "run_verify"]

_FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class VerifyConfig:
    d_min: int = 1
    d_max: int = 50
    samples_per_coset: int = 50
    seed: int = 1
    tolerance: float = 1e-9
    fmt: str = "json"

    def validate(self) -> str | None:
        if self.d_min < 1 or self.d_max < self.d_min:
            return f"invalid range [{self.d_min}, {self.d_max}]"
        if self.samples_per_coset < 1:
            return "samples per coset must be at least 1"
        if self.fmt not in _FORMATS:
            return f"unknown format {self.fmt!r}"
        return None


def _print_csv(header: list[str], rows: list[list[str]]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _print_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


# ---------------------------------------------------------------- table


def _table_row(d: int) -> dict:
    census = partner_census(d)
    index = fricke_coset_count(d)
    if census.fm_number != index:
        raise AssertionError(f"partner count and coset index disagree at d={d}")
    return {
        "d": str(d),
        "omega": str(factorize(d).omega),
        "exact_divisors": str(len(exact_divisor_values(d))),
        "fm_number": str(census.fm_number),
        "fricke_index": str(index),
    }


def _cmd_table(args) -> int:
    if args.d_min < 1 or args.d_max < args.d_min:
        print(f"error: invalid range [{args.d_min}, {args.d_max}]", file=sys.stderr)
        return 2
    rows = [_table_row(d) for d in range(args.d_min, args.d_max + 1)]
    keys = ["d", "omega", "exact_divisors", "fm_number", "fricke_index"]
    if args.format == "json":
        _print_json({"rows": rows})
    elif args.format == "csv":
        _print_csv(keys, [[row[k] for k in keys] for row in rows])
    else:
        print("  ".join(f"{k:>14}" for k in keys))
        for row in rows:
            print("  ".join(f"{row[k]:>14}" for k in keys))
    return 0


# ------------------------------------------------------------- partners


def _partner_entries(d: int) -> list[dict]:
    entries = []
    for lab in partner_census(d).labels:
        t = induced_transform(d, lab.r)
        entry = {
            "r": str(lab.r),
            "moduli": lab.moduli,
            "fine": lab.is_fine,
            "image": al_to_json(t.image),
            "coset_level": str(t.image.s),
        }
        entries.append(entry)
    return entries


def _cmd_partners(args) -> int:
    if args.d < 1:
        print(f"error: d must be positive, got {args.d}", file=sys.stderr)
        return 2
    census = partner_census(args.d)
    payload = census_to_json(census)
    entries = _partner_entries(args.d)
    for base, extra in zip(payload["labels"], entries):
        base.update(image=extra["image"], coset_level=extra["coset_level"])
    if args.format == "json":
        _print_json(payload)
    elif args.format == "csv":
        header = ["d", "r", "moduli", "fine", "coset_level", "a", "b", "c", "e"]
        rows = [
            [payload["d"], e["r"], e["moduli"], str(e["fine"]).lower(),
             e["coset_level"]] + e["image"]["abce"]
            for e in entries
        ]
        _print_csv(header, rows)
    else:
        print(f"d={args.d}  fm_number={census.fm_number}")
        for e in entries:
            a, b, c, ee = e["image"]["abce"]
            fine = "fine" if e["fine"] else "not fine"
            print(
                f"  {e['moduli']}  r={e['r']}  image level {e['coset_level']}"
                f"  (a,b,c,e)=({a},{b},{c},{ee})  {fine}"
            )
    return 0


# ------------------------------------------------------------- classify


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _cmd_classify(args) -> int:
    try:
        text = _read_input(args.path)
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return 4
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"error: input is not JSON: {exc}", file=sys.stderr)
        return 4

    try:
        if isinstance(obj, dict) and "abce" in obj:
            w = al_from_json(obj)
            if args.d is not None and args.d != w.d:
                raise ValueError(f"--d {args.d} contradicts encoded d={w.d}")
            g = represent(w)
        elif isinstance(obj, (list, tuple)):
            if args.d is None:
                print("error: 3x3 input requires --d", file=sys.stderr)
                return 2
            g = isometry_from_json(obj, args.d)
        else:
            raise ValueError("expected an element object or a 3x3 array")
    except (ValueError, TypeError) as exc:
        if isinstance(exc, K3FMError):
            print(f"error: not classifiable: {exc}", file=sys.stderr)
            return 3
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return 4

    try:
        if not is_isometry(g):
            raise K3FMError("matrix does not preserve the Gram form")
        w = classify_coset(g).s
        record = {
            "s": str(w),
            "fricke": w in (1, g.d),
            "discriminant_unit": str(discriminant_unit(g).u),
            "orientation": is_orientation_preserving(g),
        }
    except K3FMError as exc:
        print(f"error: not classifiable: {exc}", file=sys.stderr)
        return 3

    if args.format == "json":
        _print_json(record)
    elif args.format == "csv":
        header = ["s", "fricke", "discriminant_unit", "orientation"]
        _print_csv(header, [[record["s"], str(record["fricke"]).lower(),
                             record["discriminant_unit"],
                             str(record["orientation"]).lower()]])
    else:
        print(
            f"s={record['s']} fricke={str(record['fricke']).lower()} "
            f"discriminant_unit={record['discriminant_unit']} "
            f"orientation={str(record['orientation']).lower()}"
        )
    return 0


# --------------------------------------------------------------- verify


def _sample_point(rng: random.Random) -> HalfPlanePoint:
    return HalfPlanePoint(rng.uniform(-2.0, 2.0), 0.1 + 1.9 * rng.random())


def _verify_level(d: int, config: VerifyConfig, rng: random.Random) -> dict:
    failures = 0

    report = verify_correspondence(d, config.samples_per_coset, rng)
    failures += len(report.failures)

    census = partner_census(d)
    omega = factorize(d).omega
    formula = 1 if d == 1 else 2 ** (omega - 1)
    coset_count = fricke_coset_count(d)
    census_ok = census.fm_number == coset_count == formula
    failures += 0 if census_ok else 1

    transforms = []
    for r in exact_divisor_values(d):
        n = source_twist(d, r)
        twist_ok = (r + d * n) % (r * r) == 0
        t = induced_transform(d, r)
        level = classify_coset(represent(t.image)).s
        level_ok = level == d // r
        okay = twist_ok and level_ok
        failures += 0 if okay else 1
        transforms.append(
            {
                "r": str(r),
                "twist": str(n),
                "level": str(level),
                "expected_level": str(d // r),
                "ok": okay,
            }
        )

    n_points = min(10, config.samples_per_coset)
    action_max = charge_max = equiv_max = 0.0
    for r in exact_divisor_values(d):
        t = induced_transform(d, r)
        for _ in range(n_points):
            z = _sample_point(rng)
            za = induced_action(d, t.rank, t.n_src, t.n_tgt, z)
            zm = mobius(t.image, z)
            scale = max(1.0, abs(zm.z))
            action_max = max(action_max, abs(za.z - zm.z) / scale)
            charge_max = max(charge_max, charge_product_defect(t, z))
    for s in exact_divisor_values(d):
        w = random_al(d, s, rng)
        for _ in range(n_points):
            equiv_max = max(equiv_max, equivariance_defect(w, _sample_point(rng)))
    analytic_ok = max(action_max, charge_max, equiv_max) < config.tolerance
    failures += 0 if analytic_ok else 1

    return {
        "d": str(d),
        "correspondence": report_to_json(report),
        "census": {
            "fm_number": str(census.fm_number),
            "coset_count": str(coset_count),
            "formula": str(formula),
            "ok": census_ok,
        },
        "transforms": transforms,
        "analytic": {
            "max_action_defect": action_max,
            "max_charge_defect": charge_max,
            "max_equivariance_defect": equiv_max,
            "ok": analytic_ok,
        },
        "failures": failures,
    }


def run_verify(config: VerifyConfig) -> tuple[dict, int]:
    """Run the whole pipeline; deterministic for a fixed config."""
    rng = random.Random(config.seed)
    levels = [
        _verify_level(d, config, rng) for d in range(config.d_min, config.d_max + 1)
    ]
    total = sum(level["failures"] for level in levels)
    report = {
        "config": {
            "d_min": str(config.d_min),
            "d_max": str(config.d_max),
            "samples_per_coset": str(config.samples_per_coset),
            "seed": str(config.seed),
            "tolerance": config.tolerance,
        },
        "levels": levels,
        "total_failures": total,
    }
    return report, 0 if total == 0 else 1


def _cmd_verify(args) -> int:
    config = VerifyConfig(
        d_min=args.d_min,
        d_max=args.d_max,
        samples_per_coset=args.samples,
        seed=args.seed,
        tolerance=args.tol,
        fmt=args.format,
    )
    problem = config.validate()
    if problem is not None:
        print(f"error: {problem}", file=sys.stderr)
        return 2
    report, code = run_verify(config)
    if config.fmt == "json":
        _print_json(report)
    elif config.fmt == "csv":
        header = ["d", "check", "ok", "detail"]
        rows = []
        for level in report["levels"]:
            corr_ok = not level["correspondence"]["failures"]
            rows.append([level["d"], "correspondence", str(corr_ok).lower(),
                         f"failures={len(level['correspondence']['failures'])}"])
            rows.append([level["d"], "census", str(level["census"]["ok"]).lower(),
                         f"fm_number={level['census']['fm_number']}"])
            transforms_ok = all(t["ok"] for t in level["transforms"])
            rows.append([level["d"], "transforms", str(transforms_ok).lower(),
                         f"count={len(level['transforms'])}"])
            rows.append([level["d"], "analytic", str(level["analytic"]["ok"]).lower(),
                         f"max_defect={max(level['analytic']['max_action_defect'], level['analytic']['max_charge_defect'], level['analytic']['max_equivariance_defect'])!r}"])
        _print_csv(header, rows)
    else:
        for level in report["levels"]:
            status = "ok" if level["failures"] == 0 else f"{level['failures']} failures"
            worst = max(
                level["analytic"]["max_action_defect"],
                level["analytic"]["max_charge_defect"],
                level["analytic"]["max_equivariance_defect"],
            )
            print(f"d={level['d']}: {status} (worst analytic defect {worst!r})")
        print(f"total failures: {report['total_failures']}")
    return code


# ----------------------------------------------------------------- main


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3fm",
        description=(
            "Exact Atkin-Lehner coset algebra and derived-partner invariants "
            "of degree-2d polarized K3 surfaces."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="census table over a range of d")
    p_table.add_argument("--d-min", type=int, default=1)
    p_table.add_argument("--d-max", type=int, default=50)
    p_table.add_argument("--format", choices=_FORMATS, default="csv")
    p_table.set_defaults(func=_cmd_table)

    p_partners = sub.add_parser("partners", help="partner census for one d")
    p_partners.add_argument("--d", type=int, required=True)
    p_partners.add_argument("--format", choices=_FORMATS, default="json")
    p_partners.set_defaults(func=_cmd_partners)

    p_classify = sub.add_parser(
        "classify", help="classify a 2x2 element or 3x3 matrix from JSON"
    )
    p_classify.add_argument("path", nargs="?", default=None,
                            help="input file, or - for stdin (default)")
    p_classify.add_argument("--d", type=int, default=None,
                            help="level, required for bare 3x3 input")
    p_classify.add_argument("--format", choices=_FORMATS, default="json")
    p_classify.set_defaults(func=_cmd_classify)

    p_verify = sub.add_parser("verify", help="run the verification pipeline")
    p_verify.add_argument("--d-min", type=int, default=1)
    p_verify.add_argument("--d-max", type=int, default=50)
    p_verify.add_argument("--samples", type=int, default=50)
    p_verify.add_argument("--seed", type=int, default=1)
    p_verify.add_argument("--tol", type=float, default=1e-9)
    p_verify.add_argument("--format", choices=_FORMATS, default="json")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
