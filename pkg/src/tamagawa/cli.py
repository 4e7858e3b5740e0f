"""Command-line front end: local reduction data, identity verification, and
batch runs over curve files.  Reports are JSON by default (stable field
order, no timestamps) with a CSV option for the order tables.

Exit codes: 0 success, 2 parse/usage error, 3 singular curve, 4 undecided
(precision ceiling reached somewhere).
"""

from __future__ import annotations

import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import click

from .curves import SingularCurveError, WeierstrassCurve, parse_ainvs
from .euler import local_data_for_bad_primes, verify_main_theorem
from .lmfdb import FIXTURE_DIR_ENV, OracleNotFoundError, fetch_curve
from .padic import PrecisionExhausted
from .tate import tate_local

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SINGULAR = 3
EXIT_UNDECIDED = 4


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _resolve_curve(curve: str | None, label: str | None, fixtures: str | None) -> tuple[WeierstrassCurve, str | None]:
    if (curve is None) == (label is None):
        raise click.UsageError("provide exactly one of --curve or --label")
    if curve is not None:
        try:
            return parse_ainvs(curve), None
        except SingularCurveError:
            raise
        except ValueError as exc:
            raise click.UsageError(str(exc)) from exc
    try:
        record = fetch_curve(label, fixtures_dir=fixtures)
    except OracleNotFoundError as exc:
        raise click.UsageError(str(exc)) from exc
    except OSError as exc:
        raise click.ClickException(f"label lookup failed (no fixture, network unreachable): {exc}") from exc
    return record.curve(), label


@click.group()
def main() -> None:
    """Local arithmetic of elliptic curves over Q and order-identity checks."""


@main.command("localdata")
@click.option("--curve", "curve_spec", help='five comma-separated integers "a1,a2,a3,a4,a6"')
@click.option("--label", help="curve label resolved through the fixture cache")
@click.option("--prime", "prime", type=int, help="single prime to analyze")
@click.option("--all-bad", "all_bad", is_flag=True, help="every prime of bad reduction")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--fixtures", envvar=FIXTURE_DIR_ENV, default=None, help="fixture cache directory")
def cmd_localdata(curve_spec, label, prime, all_bad, fmt, fixtures) -> None:
    """Per-prime reduction data (Kodaira type, f, c, component groups)."""
    try:
        curve, _ = _resolve_curve(curve_spec, label, fixtures)
        if prime is None and not all_bad:
            raise click.UsageError("provide --prime or --all-bad")
        if prime is not None:
            rows = [tate_local(curve, prime).serialize()]
        else:
            rows = [data.serialize() for _, data in sorted(local_data_for_bad_primes(curve).items())]
    except SingularCurveError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_SINGULAR)
    if fmt == "json":
        click.echo(_dump_json(rows))
    else:
        click.echo(_localdata_csv(rows), nl=False)


def _fmt_group(factors: list[int]) -> str:
    return "x".join(str(d) for d in factors) if factors else "1"


def _localdata_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["prime", "kodaira", "vdelta", "f", "c", "phi_geom", "phi_arith", "split", "m"])
    for r in rows:
        writer.writerow(
            [r["prime"], r["kodaira"], r["vdelta"], r["f"], r["c"],
             _fmt_group(r["phi_geom"]), _fmt_group(r["phi_arith"]),
             "" if r["split"] is None else str(r["split"]).lower(), r["m"]]
        )
    return buf.getvalue()


_CHECK_VERDICTS = {
    "euler": ("euler_characteristic_is_one",),
    "main-theorem": ("main_identity", "square_chain_identity"),
    "all": ("euler_characteristic_is_one", "main_identity", "square_chain_identity", "local_identities"),
}


@main.command("verify")
@click.option("--curve", "curve_spec", help='five comma-separated integers "a1,a2,a3,a4,a6"')
@click.option("--label", help="curve label resolved through the fixture cache")
@click.option("-p", "p", type=click.Choice(["3", "5", "7"]), required=True)
@click.option("--check", "check", type=click.Choice(sorted(_CHECK_VERDICTS)), default="all")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--fixtures", envvar=FIXTURE_DIR_ENV, default=None, help="fixture cache directory")
def cmd_verify(curve_spec, label, p, check, fmt, fixtures) -> None:
    """Verify the Euler-characteristic and product identities for one curve."""
    try:
        curve, lbl = _resolve_curve(curve_spec, label, fixtures)
        ledger = verify_main_theorem(curve, int(p), label=lbl)
    except SingularCurveError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_SINGULAR)
    except PrecisionExhausted as exc:
        click.echo(f"undecided: {exc}", err=True)
        sys.exit(EXIT_UNDECIDED)
    record = ledger.to_record()
    if fmt == "json":
        click.echo(_dump_json(record))
    else:
        click.echo(_orders_csv(record["places"]), nl=False)
    if ledger.undecided:
        sys.exit(EXIT_UNDECIDED)
    requested = _CHECK_VERDICTS[check]
    if not all(ledger.verdicts.get(k) is True for k in requested):
        sys.exit(1)


def _orders_csv(places: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["place", "torsion", "kummer", "phi_p", "relaxed", "restricted", "tt_p"])
    for o in places:
        writer.writerow([o["place"], o["torsion"], o["kummer"], o["phi_p"], o["relaxed"], o["restricted"], o["tt_p"]])
    return buf.getvalue()


def _batch_worker(args: tuple[int, tuple[int, int, int, int, int], str | None, int]) -> tuple[int, dict]:
    index, ainvs, label, p = args
    try:
        curve = WeierstrassCurve(*ainvs)
        ledger = verify_main_theorem(curve, p, label=label)
    except SingularCurveError as exc:
        return index, {"index": index, "label": label, "curve": list(ainvs), "status": "failed-parse", "error": str(exc)}
    except PrecisionExhausted as exc:
        return index, {"index": index, "label": label, "curve": list(ainvs), "status": "undecided", "error": str(exc)}
    record = ledger.to_record()
    record["index"] = index
    if ledger.undecided:
        record["status"] = "undecided"
    elif ledger.passed:
        record["status"] = "passed"
    else:
        record["status"] = "failed"
    return index, record


@main.command("batch")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), required=True,
              help='CSV lines "a1,a2,a3,a4,a6[,label]"')
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.option("-p", "p", type=click.Choice(["3", "5", "7"]), required=True)
@click.option("--jobs", type=int, default=1, show_default=True, help="parallel workers (across curves)")
def cmd_batch(input_path, out_path, p, jobs) -> None:
    """Run the verification over a curve file and write a JSON report."""
    p = int(p)
    tasks: list[tuple[int, tuple[int, int, int, int, int] | None, str | None, int]] = []
    parse_failures: dict[int, dict] = {}
    with open(input_path, "r", encoding="utf-8") as fh:
        index = 0
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [s.strip() for s in line.split(",")]
            label = None
            if len(parts) == 6:
                label = parts[5]
                parts = parts[:5]
            if len(parts) != 5:
                parse_failures[index] = {"index": index, "label": label, "line": line,
                                         "status": "failed-parse", "error": "expected 5 integers"}
                index += 1
                continue
            try:
                ainvs = tuple(int(s) for s in parts)
            except ValueError:
                parse_failures[index] = {"index": index, "label": label, "line": line,
                                         "status": "failed-parse", "error": "non-integer coefficient"}
                index += 1
                continue
            tasks.append((index, ainvs, label, p))
            index += 1

    results: dict[int, dict] = dict(parse_failures)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for idx, record in pool.map(_batch_worker, tasks):
                results[idx] = record
    else:
        for task in tasks:
            idx, record = _batch_worker(task)
            results[idx] = record

    rows = [results[i] for i in sorted(results)]
    counts = {"passed": 0, "failed": 0, "undecided": 0}
    for row in rows:
        status = row["status"]
        if status == "passed":
            counts["passed"] += 1
        elif status == "undecided":
            counts["undecided"] += 1
        else:
            counts["failed"] += 1
    report = {"p": p, "summary": counts, "rows": rows}
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(_dump_json(report) + "\n")
    click.echo(f"{counts['passed']} passed, {counts['failed']} failed, {counts['undecided']} undecided")
    if counts["failed"]:
        sys.exit(1)
    if counts["undecided"]:
        sys.exit(EXIT_UNDECIDED)


if __name__ == "__main__":
    main()
