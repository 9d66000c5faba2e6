"""Command-line front end.

    radial-ansatz spectrum [--config FILE] [--molecule NAME] --n-max N --l-max L --dims 3,4
                           [--verify] [--format csv|json] [--hbar X]
    radial-ansatz solve --potential KIND [parameters] --n N --l L --dim D
                        [--wavefunction r_min:r_max:steps]
    radial-ansatz verify

Exit status: 0 success, 1 usage or config error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import logging
import sys

import numpy as np

from . import ansatz, spectra, verification
from .config import ConfigError, MoleculeConfig, demo_configs, parse_config
from .core import (Family, PhysicalConstants, QuantumState, ReducedProblem, make_anharmonic,
                   make_coulomb, make_harmonic_inverse_square, make_kratzer_fues,
                   make_modified_kratzer, make_pseudoharmonic, make_raw)

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2
COLUMNS = ("molecule", "D", "n", "l", "E_analytic", "E_generic", "E_oracle", "rel_err",
           "norm_check", "residual")

log = logging.getLogger("radial_ansatz")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(value)
    return format(float(value), ".12g")


def _json_number(value):
    if value is None or isinstance(value, (int, np.integer)):
        return value
    return float(format(float(value), ".12g"))


def row_values(row: spectra.SpectrumRow) -> tuple:
    return (row.molecule, row.dim, row.n, row.ell, row.e_analytic, row.e_generic, row.e_oracle,
            row.rel_err, row.norm_check, row.residual)


def write_table(rows, fmt_name: str, out) -> None:
    if fmt_name == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow([fmt(v) if not isinstance(v, str) else v for v in row_values(row)])
    else:
        doc = {"columns": list(COLUMNS),
               "rows": [{k: (v if isinstance(v, str) else _json_number(v))
                         for k, v in zip(COLUMNS, row_values(row))} for row in rows]}
        json.dump(doc, out, indent=2)
        out.write("\n")


def parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise UsageError(f"--dims expects comma-separated integers, got {text!r}") from None
    if not dims or any(d < 2 for d in dims):
        raise UsageError(f"--dims entries must be integers >= 2, got {text!r}")
    return dims


def run_spectrum(configs: list[MoleculeConfig], n_max: int, ell_max: int, dims, verify: bool,
                 fmt_name: str = "csv", hbar: float | None = None, out=None, workers: int = 1) -> int:
    out = out or sys.stdout
    if n_max < 0 or ell_max < 0:
        raise UsageError(f"--n-max and --l-max must be >= 0, got {n_max}, {ell_max}")
    if fmt_name not in ("csv", "json"):
        raise UsageError(f"unknown format {fmt_name!r}")
    rows = []
    for cfg in configs:
        if hbar is not None:
            cfg = dataclasses.replace(cfg, hbar=hbar)
        req = spectra.SpectrumRequest(cfg.to_potential(), n_max, ell_max, tuple(dims),
                                      cfg.constants(), cfg.name)
        rows.extend(spectra.build_table(req, verify, workers=workers).rows)
    write_table(rows, fmt_name, out)
    failed = [row for row in rows if not row.passed]
    for row in failed:
        print(f"{row.molecule} D={row.dim} n={row.n} l={row.ell}: {row.status}", file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise UsageError(f"potential {args.potential!r} needs {flags}")
    return [getattr(args, n) for n in names]


def potential_from_args(args, constants: PhysicalConstants):
    kind = args.potential
    if kind == "pseudoharmonic":
        return make_pseudoharmonic(*_require(args, "De", "re"))
    if kind == "kratzer":
        return make_kratzer_fues(*_require(args, "De", "re"))
    if kind == "modified-kratzer":
        return make_modified_kratzer(*_require(args, "De", "re"))
    if kind == "coulomb":
        return make_coulomb(*_require(args, "A"))
    if kind == "harmonic":
        omega, = _require(args, "omega")
        return make_harmonic_inverse_square(omega, args.g or 0.0, constants)
    if kind == "anharmonic":
        return make_anharmonic(*_require(args, "B"))
    family, a, b, c = _require(args, "family", "a", "b", "c")
    return make_raw(Family(family), a, b, c)


def parse_wavefunction_range(text: str):
    try:
        lo, hi, steps = text.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError:
        raise UsageError(f"--wavefunction expects r_min:r_max:steps, got {text!r}") from None
    if not (0 < lo < hi) or steps < 2:
        raise UsageError("--wavefunction needs 0 < r_min < r_max and steps >= 2")
    return np.linspace(lo, hi, steps)


def run_solve(args, out=None) -> int:
    out = out or sys.stdout
    constants = PhysicalConstants(hbar=args.hbar, mu=args.mu)
    pot = potential_from_args(args, constants)
    state = QuantumState(args.n, args.l, args.dim)
    problem = ReducedProblem.for_state(pot, state, constants)
    sol = ansatz.solve_state(problem, state)
    doc = {
        "potential": {"origin": pot.label, "family": pot.family.value,
                      "a": pot.a, "b": pot.b, "c": pot.c, **pot.params},
        "state": {"n": state.p, "l": state.ell, "D": state.dim, "eta": state.eta},
        "delta": sol.delta,
        "alpha": sol.alpha,
        "energy": sol.energy,
        "printed_energy": spectra.printed_energy(pot, constants, state.p, state.ell, state.dim),
        "coeffs": list(sol.coeffs),
        "norm_mode": sol.norm_mode,
    }
    if args.wavefunction:
        r = parse_wavefunction_range(args.wavefunction)
        doc["wavefunction"] = [[float(x), float(y)] for x, y in zip(r, sol(r))]
    json.dump(doc, out, indent=2)
    out.write("\n")
    return EXIT_OK


def run_verify(selection=None, out=None) -> int:
    out = out or sys.stdout
    results = verification.run_checks(selection)
    for result in results:
        print(result.line(), file=out)
    ok = all(r.passed for r in results)
    print("verification " + ("passed" if ok else "FAILED"), file=out)
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="radial-ansatz", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", help="energy table for configured molecules")
    sp.add_argument("--config", help="JSON molecule file (default: built-in demo)")
    sp.add_argument("--molecule", help="only this molecule from the config")
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--l-max", type=int, required=True)
    sp.add_argument("--dims", default="3")
    sp.add_argument("--verify", action="store_true", help="add oracle columns and checks")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--hbar", type=float)
    sp.add_argument("--workers", type=int, default=1)

    so = sub.add_parser("solve", help="closed-form eigenpair of one state")
    so.add_argument("--potential", required=True,
                    choices=("pseudoharmonic", "kratzer", "modified-kratzer", "coulomb",
                             "harmonic", "anharmonic", "raw"))
    for name in ("De", "re", "A", "omega", "g", "B", "a", "b", "c"):
        so.add_argument(f"--{name}", type=float)
    so.add_argument("--family", choices=[f.value for f in Family])
    so.add_argument("--mu", type=float, default=1.0)
    so.add_argument("--hbar", type=float, default=1.0)
    so.add_argument("--n", type=int, required=True)
    so.add_argument("--l", type=int, required=True)
    so.add_argument("--dim", type=int, default=3)
    so.add_argument("--wavefunction", metavar="R_MIN:R_MAX:STEPS")

    ve = sub.add_parser("verify", help="run the acceptance checks")
    ve.add_argument("--only", help="comma-separated check numbers (default: all)")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "spectrum":
            configs = parse_config(args.config) if args.config else demo_configs()
            if args.molecule:
                configs = [c for c in configs if c.name == args.molecule]
                if not configs:
                    raise UsageError(f"no molecule named {args.molecule!r}")
            if args.hbar is not None and not args.hbar > 0:
                raise UsageError("--hbar must be positive")
            return run_spectrum(configs, args.n_max, args.l_max, parse_dims(args.dims),
                                args.verify, args.format, args.hbar, workers=args.workers)
        if args.command == "solve":
            return run_solve(args)
        selection = None
        if args.only:
            selection = [s.strip() for s in args.only.split(",")]
            unknown = [s for s in selection if s not in verification.CHECKS]
            if unknown:
                raise UsageError(f"unknown checks {unknown}")
        return run_verify(selection)
    except (UsageError, ConfigError, ValueError) as exc:
        print(f"radial-ansatz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
