"""Command-line front end: evaluate, scan, verify and emit figure data."""
from __future__ import annotations

import argparse
import sys
from dataclasses import asdict
from typing import List, Optional, Sequence, TextIO

from pydantic import ValidationError

from . import fekete_szego, persistence, regions
from .errors import ToolkitError
from .models import (
    ExtremalQuery,
    PhiQuery,
    RegionQuery,
    RegionSample,
    RegionSet,
    ScanQuery,
    ThresholdsQuery,
    VerifyQuery,
)
from .numeric_core import pole_from_p
from .utils import fmt9, fmt_fixed9, get_logger, setup_logging
from .verify import Verifier

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

GRAMMAR = """\
usage:
  thresholds (--P <f> | --p <f>)
  phi (--P <f> | --p <f>) --mu <f> [--oracle [--grid <n>]]
  scan-thresholds --P-min <f> --P-max <f> --step <f> [--out <path>]
  region [--p <f>] --set omega|wp|cardioid|circle [--samples <n>] [--out <path>] [--svg <path>]
  extremal --p <f> --zeta <re>,<im> [--order <n>]
  verify --suite quadmax|phi|rep|bodies|regions|all [--samples <n>] [--seed <u64>] [--json]
global: --log-level DEBUG|INFO|WARNING|ERROR (before the command)
negative --zeta values need the --zeta=<re>,<im> form
"""

log = get_logger("cli")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="python -m app", add_help=True)
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pole_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--P", dest="P", type=float, default=None)
        p.add_argument("--p", dest="p", type=float, default=None)

    th = sub.add_parser("thresholds")
    pole_flags(th)

    phi = sub.add_parser("phi")
    pole_flags(phi)
    phi.add_argument("--mu", type=float, required=True)
    phi.add_argument("--oracle", action="store_true")
    phi.add_argument("--grid", type=int, default=401)

    scan = sub.add_parser("scan-thresholds")
    scan.add_argument("--P-min", dest="P_min", type=float, required=True)
    scan.add_argument("--P-max", dest="P_max", type=float, required=True)
    scan.add_argument("--step", type=float, required=True)
    scan.add_argument("--out", default=None)

    region = sub.add_parser("region")
    region.add_argument("--p", type=float, default=None)
    region.add_argument("--set", dest="kind", choices=[s.value for s in RegionSet], required=True)
    region.add_argument("--samples", type=int, default=512)
    region.add_argument("--out", default=None)
    region.add_argument("--svg", default=None)

    ext = sub.add_parser("extremal")
    ext.add_argument("--p", type=float, required=True)
    ext.add_argument("--zeta", required=True)
    ext.add_argument("--order", type=int, default=8)

    ver = sub.add_parser("verify")
    ver.add_argument("--suite", required=True)
    ver.add_argument("--samples", type=int, default=1000)
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--json", dest="json_output", action="store_true")
    return parser


def _complex_text(z: complex) -> str:
    return f"{fmt9(z.real)} {fmt9(z.imag)}"


def _oracle_angular(grid: int) -> int:
    return max(256, 1 << (2 * grid - 1).bit_length())


def cmd_thresholds(args, out: TextIO) -> int:
    q = ThresholdsQuery(P=args.P, p=args.p)
    pp = q.pole()
    th = fekete_szego.thresholds(pp)
    fields = [
        ("P", th.P),
        ("p", pp.p),
        ("mu1", th.mu1),
        ("mu1prime", th.mu1prime),
        ("mu0minus", th.mu0minus),
        ("mu0plus", th.mu0plus),
        ("mu2", th.mu2),
        ("mu3minus", th.mu3minus),
        ("mu3plus", th.mu3plus),
        ("mu4minus", th.mu4minus),
        ("mu4", th.mu4),
        ("muA", th.muA),
        ("muB", th.muB),
        ("muF", th.muF),
        ("muG", th.muG),
        ("P_star", th.P_star),
        ("P_2", th.P_2),
        ("p_star", th.p_star),
        ("p_2", th.p_2),
    ]
    for name, value in fields:
        out.write(f"{name}={fmt9(value)}\n")
    return EXIT_OK


def cmd_phi(args, out: TextIO) -> int:
    q = PhiQuery(P=args.P, p=args.p, mu=args.mu, oracle=args.oracle, grid=args.grid)
    pp = q.pole()
    value, branch = fekete_szego.phi_closed(pp, q.mu)
    out.write(f"{fmt_fixed9(value)} {branch.value}\n")
    out.write(f"proof_region={fekete_szego.branch_regions(pp, q.mu).value}\n")
    if q.oracle:
        angular = _oracle_angular(q.grid)
        s = fekete_szego.extremal_pair(pp, q.mu, q.grid, angular)
        out.write(f"oracle={fmt_fixed9(fekete_szego.phi_oracle(pp, q.mu, q.grid, angular))}\n")
        out.write(f"sigma0={_complex_text(s.sigma0)}\n")
        out.write(f"sigma1={_complex_text(s.sigma1)}\n")
    return EXIT_OK


def cmd_scan(args, out: TextIO) -> int:
    q = ScanQuery(P_min=args.P_min, P_max=args.P_max, step=args.step, out=args.out)
    rows = fekete_szego.scan_thresholds(q.P_min, q.P_max, q.step)
    if q.out is None:
        out.write(persistence.thresholds_csv(rows))
    else:
        persistence.save_thresholds(q.out, rows)
        out.write(f"rows={len(rows)} out={q.out}\n")
    return EXIT_OK


def region_samples(q: RegionQuery) -> List[RegionSample]:
    """Only the requested set; figure overlays go to the SVG alone."""
    pp = pole_from_p(q.p) if q.p is not None else None
    return [regions.sample_set(q.kind, pp, q.samples)]


def _overlays(q: RegionQuery) -> List[RegionSample]:
    layers = []
    if q.kind is RegionSet.wp:
        layers.append(regions.omega_boundary(pole_from_p(q.p), q.samples))
    if q.kind is not RegionSet.cardioid:
        layers.append(regions.cardioid_boundary(q.samples))
    if q.kind is not RegionSet.circle:
        layers.append(regions.unit_circle(q.samples))
    return layers


def cmd_region(args, out: TextIO) -> int:
    q = RegionQuery(p=args.p, set=args.kind, samples=args.samples, out=args.out, svg=args.svg)
    samples = region_samples(q)
    if q.out is None:
        out.write(persistence.region_csv(samples))
    else:
        persistence.save_region(q.out, samples)
        out.write(f"points={sum(len(s) for s in samples)} out={q.out}\n")
    if q.svg is not None:
        persistence.save_svg(q.svg, _overlays(q) + samples)
        out.write(f"svg={q.svg}\n")
    return EXIT_OK


def _parse_zeta(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--zeta expects <re>,<im>, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise UsageError(f"--zeta expects two numbers, got {text!r}") from None


def cmd_extremal(args, out: TextIO) -> int:
    re_, im_ = _parse_zeta(args.zeta)
    q = ExtremalQuery(p=args.p, zeta_re=re_, zeta_im=im_, order=args.order)
    pp = pole_from_p(q.p)
    for n in range(1, q.order + 1):
        out.write(f"A{n}={_complex_text(regions.a_n_extremal(pp, q.zeta, n))}\n")
    out.write(f"lambda1={_complex_text(regions.lambda1_extremal(pp, q.zeta))}\n")
    out.write(f"hankel={_complex_text(regions.hankel_extremal(pp, q.zeta))}\n")
    return EXIT_OK


def cmd_verify(args, out: TextIO) -> int:
    q = VerifyQuery(suite=args.suite, samples=args.samples, seed=args.seed, json_output=args.json_output)
    reports = Verifier(samples=q.samples, seed=q.seed).run(q.suite)
    if q.json_output:
        out.write(persistence.dumps_json([asdict(r) for r in reports]) + "\n")
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            out.write(
                f"suite={r.name} samples={r.samples} max_deviation={fmt9(r.max_deviation)} "
                f"tolerance={fmt9(r.tolerance)} {status}\n"
            )
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


COMMANDS = {
    "thresholds": cmd_thresholds,
    "phi": cmd_phi,
    "scan-thresholds": cmd_scan,
    "region": cmd_region,
    "extremal": cmd_extremal,
    "verify": cmd_verify,
}


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
    except UsageError as exc:
        err.write(f"error: {exc}\n{GRAMMAR}")
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)
    setup_logging(args.log_level)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ValidationError, ToolkitError) as exc:
        log.info("command_rejected", extra={"command": args.command, "error": type(exc).__name__})
        err.write(f"error: {exc}\n{GRAMMAR}")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
