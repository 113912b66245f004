"""Command-line front end: spectra, reference-table reproduction, curve
data for plots, and cross-method comparisons.

Subcommands
    spectrum   solve one parameter set with one or more methods
    table      rerun a published benchmark table and report deviations
    curves     emit CSV data behind the potential / wavefunction /
               centrifugal-error figures
    compare    per-level agreement between methods

Exit codes: 0 success, 1 invalid input, 2 non-convergence (or failed
table reproduction), 3 methods disagree beyond tolerance.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from importlib import resources

import numpy as np

from .fd import GridSpec, fd_spectrum
from .hdm import HdmConfig, spectrum_hdm
from .potentials import (
    PotentialSpec,
    centrifugal_error,
    map_to_basis,
    nmax_bound,
    potential_value,
    t_matrix_size_cap,
)
from .spectrum import Spectrum
from .tra import closed_form_spectrum, spectrum_tra
from .waves import eval_radial, parity_extend

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_UNCONVERGED = 2
EXIT_DISAGREE = 3

_METHOD_CHOICES = ("tra", "hdm", "closed_form", "oracle", "all")

_SPECTRUM_DEFAULTS = {
    "geometry": None,
    "v0": 0.0,
    "v1": None,
    "v2": None,
    "lam": "sqrt2",
    "ell": 0,
    "parity": None,
    "method": "hdm",
    "n": None,
    "levels": 10,
    "sizes": "20,30,40,50,60",
    "basis_nu_margin": 1.0,
    "tol": 1e-9,
    "grid_points": 4001,
    "x_min": None,
    "x_max": None,
    "centrifugal": None,
    "format": "csv",
    "output": None,
}


def parse_length_scale(text) -> float:
    """Accept decimals and sqrtN tokens ('sqrt2' -> 2**0.5)."""
    if isinstance(text, (int, float)):
        return float(text)
    t = str(text).strip().lower()
    if t.startswith("sqrt"):
        return math.sqrt(float(t[4:]))
    return float(t)


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        if math.isnan(value):
            return ""
        return f"{value:.12g}"
    return str(value)


def _emit(rows: list[dict], fieldnames: list[str], fmt: str, output: str | None) -> None:
    if fmt == "json":
        payload = []
        for row in rows:
            clean = {}
            for key in fieldnames:
                val = row.get(key)
                if isinstance(val, (np.floating, np.integer, np.bool_)):
                    val = val.item()
                if isinstance(val, float) and math.isnan(val):
                    val = None
                clean[key] = val
            payload.append(clean)
        text = json.dumps(payload, indent=2) + "\n"
        if output:
            with open(output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return
    target = open(output, "w", newline="", encoding="utf-8") if output else sys.stdout
    try:
        writer = csv.writer(target)
        writer.writerow(fieldnames)
        for row in rows:
            writer.writerow([_fmt(row.get(key, "")) for key in fieldnames])
    finally:
        if output:
            target.close()


def _spec_from_config(cfg: dict) -> PotentialSpec:
    lam = parse_length_scale(cfg["lam"])
    geometry = {"3d": "radial3d", "1d": "line1d"}.get(cfg["geometry"], cfg["geometry"])
    if cfg["v1"] is None or cfg["v2"] is None:
        raise ValueError("v1 and v2 are required")
    if geometry == "radial3d":
        return PotentialSpec.radial(
            v0=float(cfg["v0"]), v1=float(cfg["v1"]), v2=float(cfg["v2"]),
            lam=lam, ell=int(cfg["ell"]),
        )
    return PotentialSpec.line(
        v1=float(cfg["v1"]), v2=float(cfg["v2"]), lam=lam, parity=cfg["parity"],
    )


def _parse_sizes(value) -> tuple[int, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(int(v) for v in value)
    return tuple(int(tok) for tok in str(value).split(",") if tok.strip())


def _run_method(method: str, spec: PotentialSpec, cfg: dict) -> Spectrum:
    levels = int(cfg["levels"])
    if method == "tra":
        n = cfg["n"]
        if n is None:
            n = t_matrix_size_cap(map_to_basis(spec))
        return spectrum_tra(spec, int(n))
    if method == "hdm":
        hdm_cfg = HdmConfig(
            basis_nu_margin=float(cfg["basis_nu_margin"]),
            sizes=_parse_sizes(cfg["sizes"]),
            convergence_tol=float(cfg["tol"]),
        )
        return spectrum_hdm(spec, hdm_cfg, levels)
    if method == "closed_form":
        energies = np.array([closed_form_spectrum(spec, i) for i in range(levels)])
        order = np.argsort(energies, kind="stable")
        e_sorted = energies[order]
        eps = 2.0 * e_sorted / spec.lam**2
        return Spectrum(
            eps=eps, energies=e_sorted, method="closed_form",
            basis_size=levels, err_est=np.zeros(levels),
            converged=np.ones(levels, dtype=bool),
        )
    if method == "oracle":
        centrifugal = cfg["centrifugal"]
        if centrifugal is None:
            centrifugal = "approximated_3_2" if (spec.geometry == "radial3d" and spec.ell > 0) else "none"
        grid = GridSpec(
            points=int(cfg["grid_points"]),
            x_min=cfg["x_min"], x_max=cfg["x_max"],
            centrifugal=centrifugal,
        )
        want = levels
        if spec.geometry == "line1d" and spec.parity is not None:
            want = 2 * levels  # parities interleave on the full line
        spectrum = fd_spectrum(spec, grid, want)
        if want != levels:
            offset = 0 if spec.parity == "even" else 1
            pick = slice(offset, offset + 2 * levels, 2)
            spectrum = Spectrum(
                eps=spectrum.eps[pick], energies=spectrum.energies[pick],
                method="fd_oracle", basis_size=spectrum.basis_size,
                err_est=spectrum.err_est[pick], converged=spectrum.converged[pick],
            )
        return spectrum
    raise ValueError(f"unknown method {method!r}")


def _spectrum_rows(results: dict[str, Spectrum], levels: int):
    fieldnames = ["n"]
    for name in results:
        fieldnames += [f"E_{name}", f"err_{name}", f"converged_{name}"]
    rows = []
    for i in range(levels):
        row = {"n": i}
        for name, sp in results.items():
            if i < len(sp):
                row[f"E_{name}"] = sp.energies[i]
                row[f"err_{name}"] = sp.err_est[i]
                row[f"converged_{name}"] = bool(sp.converged[i])
        rows.append(row)
    return rows, fieldnames


def _resolve_config(args: argparse.Namespace, defaults: dict) -> dict:
    cfg = dict(defaults)
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - set(defaults)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    for key in defaults:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def cmd_spectrum(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args, _SPECTRUM_DEFAULTS)
    if getattr(args, "dump_config", None):
        with open(args.dump_config, "w", encoding="utf-8") as fh:
            json.dump(cfg, fh, indent=2, sort_keys=True)
            fh.write("\n")
    spec = _spec_from_config(cfg)
    if cfg["method"] == "all":
        methods = ["hdm", "oracle"]
        try:
            cap = t_matrix_size_cap(map_to_basis(spec))
        except ValueError:
            cap = 0
        if cap >= int(cfg["levels"]):
            methods.insert(0, "tra")
        if spec.v2 == 0:
            methods.append("closed_form")
    else:
        methods = [cfg["method"]]
    results = {m: _run_method(m, spec, cfg) for m in methods}
    levels = min(int(cfg["levels"]), min(len(sp) for sp in results.values()))
    rows, fieldnames = _spectrum_rows(results, levels)
    _emit(rows, fieldnames, cfg["format"], cfg["output"])
    unconverged = [
        name for name, sp in results.items() if not bool(np.all(sp.converged[:levels]))
    ]
    for name in unconverged:
        print(f"warning: {name} levels not all converged to tolerance", file=sys.stderr)
    return EXIT_UNCONVERGED if unconverged else EXIT_OK


def _load_reference() -> dict:
    with resources.files("coshwell").joinpath("reference_tables.json").open(
        "r", encoding="utf-8"
    ) as fh:
        return json.load(fh)


def cmd_table(args: argparse.Namespace) -> int:
    ref = _load_reference()["tables"].get(str(args.table_id))
    if ref is None:
        raise ValueError(f"unknown table id {args.table_id}")
    spec = _spec_from_config({**_SPECTRUM_DEFAULTS, **ref["spec"]})
    sizes = _parse_sizes(args.sizes) if args.sizes else tuple(ref["sizes"])
    levels = len(ref["energies"])
    columns: dict[int, np.ndarray] = {}
    for n in sizes:
        if ref["method"] == "tra":
            sp = spectrum_tra(spec, int(n))
        else:
            sp = spectrum_hdm(spec, HdmConfig(sizes=(int(n),)), levels)
        columns[n] = sp.energies[:levels]
    final = columns[sizes[-1]]
    fieldnames = ["n"] + [f"E_{n}x{n}" for n in sizes] + ["reference", "deviation"]
    rows = []
    ok = True
    for i in range(levels):
        row = {"n": i, "reference": ref["energies"][i]}
        for n in sizes:
            if i < columns[n].size:
                row[f"E_{n}x{n}"] = columns[n][i]
        dev = abs(final[i] - ref["energies"][i]) if i < final.size else math.nan
        row["deviation"] = dev
        if not dev <= ref["tolerances"][i]:
            ok = False
        rows.append(row)
    _emit(rows, fieldnames, args.format, args.output)
    if not ok:
        print(
            f"table {args.table_id}: deviations exceed tolerance at the largest size",
            file=sys.stderr,
        )
        return EXIT_UNCONVERGED
    return EXIT_OK


def _curves_potential(args) -> tuple[list[dict], list[str]]:
    geometry = {"3d": "radial3d", "1d": "line1d"}.get(args.geometry, args.geometry) or "radial3d"
    lam = parse_length_scale(args.lam if args.lam is not None else 1.0)
    rows = []
    if geometry == "radial3d":
        v0 = args.v0 if args.v0 is not None else 1.0
        v1 = args.v1 if args.v1 is not None else -50.0
        v2 = args.v2 if args.v2 is not None else 10.0
        ells = [int(t) for t in (args.ell_values or "0,1,2,3").split(",")]
        lo = args.x_min if args.x_min is not None else 0.05
        hi = args.x_max if args.x_max is not None else 4.0
        x = np.linspace(lo, hi, args.points)
        for ell in ells:
            spec = PotentialSpec.radial(v0=v0, v1=v1, v2=v2, lam=lam, ell=ell)
            v = potential_value(spec, x, centrifugal="exact" if ell else "none")
            rows += [
                {"coordinate": xi, "value": vi, "series": f"ell={ell}"}
                for xi, vi in zip(x, v)
            ]
    else:
        v2 = args.v2 if args.v2 is not None else 10.0
        hi = args.x_max if args.x_max is not None else 4.0
        lo = args.x_min if args.x_min is not None else -hi
        x = np.linspace(lo, hi, args.points)
        if args.v1 is not None:
            series = [(f"v1={_fmt(args.v1)}", args.v1)]
        else:
            # well depths parametrized as v1 = -(v^2 - 1/4)/4
            series = []
            for tok in (args.v_values or "2,4,6").split(","):
                v = float(tok)
                series.append((f"v={_fmt(v)}", -(v * v - 0.25) / 4.0))
        for label, v1 in series:
            spec = PotentialSpec.line(v1=v1, v2=v2, lam=lam)
            vals = potential_value(spec, x)
            rows += [
                {"coordinate": xi, "value": vi, "series": label}
                for xi, vi in zip(x, vals)
            ]
    return rows, ["coordinate", "value", "series"]


def _curves_wavefunction(args) -> tuple[list[dict], list[str]]:
    lam = parse_length_scale(args.lam if args.lam is not None else "sqrt2")
    v1 = args.v1 if args.v1 is not None else -100.0
    v2 = args.v2 if args.v2 is not None else 5.0
    states = args.states
    hi = args.x_max if args.x_max is not None else 5.0
    half = np.linspace(0.0, hi, max(args.points // 2, 64))
    sector: list[tuple[float, str, float]] = []
    for parity in ("even", "odd"):
        spec = PotentialSpec.line(v1=v1, v2=v2, lam=lam, parity=parity)
        sp = spectrum_hdm(spec, HdmConfig(), levels=max(2, (states + 1) // 2))
        sector += [(e, parity, eps) for e, eps in zip(sp.energies, sp.eps)]
    sector.sort()
    rows = []
    for idx, (energy, parity, eps) in enumerate(sector[:states]):
        spec = PotentialSpec.line(v1=v1, v2=v2, lam=lam, parity=parity)
        if potential_value(spec, hi) < energy:
            print(
                f"warning: x_max = {hi} is inside the classical region of state {idx}",
                file=sys.stderr,
            )
        sample = eval_radial(spec, eps, nmax_bound(spec) + 1, half, normalize=False)
        full = parity_extend(sample, parity)
        print(
            f"state {idx}: parity={parity} E={_fmt(energy)} nodes={full.node_count}",
            file=sys.stderr,
        )
        rows += [
            {"coordinate": x, "value": v, "series": f"n={idx}"}
            for x, v in zip(full.coordinates, full.values)
        ]
    return rows, ["coordinate", "value", "series"]


def _curves_centrifugal(args) -> tuple[list[dict], list[str]]:
    lam = parse_length_scale(args.lam if args.lam is not None else 1.0)
    lo = args.x_min if args.x_min is not None else 0.02 / lam
    hi = args.x_max if args.x_max is not None else 0.2 / lam
    r = np.geomspace(lo, hi, args.points)
    err = np.abs(centrifugal_error(lam, r))
    slope = np.polyfit(np.log(r), np.log(err), 1)[0]
    print(f"fitted log-log slope: {slope:.4f}", file=sys.stderr)
    rows = [{"coordinate": ri, "value": ei} for ri, ei in zip(r, err)]
    return rows, ["coordinate", "value"]


def cmd_curves(args: argparse.Namespace) -> int:
    if args.kind == "potential":
        rows, fields = _curves_potential(args)
    elif args.kind == "wavefunction":
        rows, fields = _curves_wavefunction(args)
    else:
        rows, fields = _curves_centrifugal(args)
    _emit(rows, fields, args.format, args.output)
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    cfg = _resolve_config(args, {**_SPECTRUM_DEFAULTS, "levels": 5})
    spec = _spec_from_config(cfg)
    methods = [m.strip() for m in args.methods.split(",")]
    if len(methods) < 2:
        raise ValueError("compare needs at least two methods")
    results = {m: _run_method(m, spec, cfg) for m in methods}
    levels = min(int(cfg["levels"]), min(len(sp) for sp in results.values()))
    fieldnames = ["n"] + [f"E_{m}" for m in methods] + ["max_spread"]
    rows = []
    worst = (0.0, "", -1)
    for i in range(levels):
        row = {"n": i}
        vals = {}
        for m in methods:
            row[f"E_{m}"] = results[m].energies[i]
            vals[m] = results[m].energies[i]
        spread = 0.0
        for a in methods:
            for b in methods:
                d = abs(vals[a] - vals[b])
                if d > spread:
                    spread = d
                if d > worst[0]:
                    worst = (d, f"{a} vs {b}", i)
        row["max_spread"] = spread
        rows.append(row)
    _emit(rows, fieldnames, cfg["format"], cfg["output"])
    if worst[0] > args.tolerance:
        print(
            f"methods disagree: |dE| = {worst[0]:.3e} for {worst[1]} at level {worst[2]} "
            f"(tolerance {args.tolerance:.1e})",
            file=sys.stderr,
        )
        return EXIT_DISAGREE
    return EXIT_OK


def _add_potential_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--geometry", choices=("3d", "1d", "radial3d", "line1d"))
    p.add_argument("--v0", type=float)
    p.add_argument("--v1", type=float)
    p.add_argument("--v2", type=float)
    p.add_argument("--lambda", dest="lam", metavar="LAM",
                   help="inverse length scale; accepts sqrtN tokens like sqrt2")
    p.add_argument("--ell", type=int)
    p.add_argument("--parity", choices=("even", "odd"))


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="tridiagonal matrix size (default: the basis cap)")
    p.add_argument("--levels", type=int)
    p.add_argument("--sizes", help="comma-separated HDM ladder, e.g. 20,30,40,50")
    p.add_argument("--basis-nu-margin", dest="basis_nu_margin", type=float)
    p.add_argument("--tol", type=float, help="per-level convergence tolerance")
    p.add_argument("--grid-points", dest="grid_points", type=int)
    p.add_argument("--x-min", dest="x_min", type=float)
    p.add_argument("--x-max", dest="x_max", type=float)
    p.add_argument("--centrifugal", choices=("none", "exact", "approximated_3_2"))


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coshwell",
        description="Bound states of hyperbolic confining wells",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="solve one parameter set")
    _add_potential_flags(sp)
    sp.add_argument("--method", choices=_METHOD_CHOICES)
    _add_solver_flags(sp)
    _add_output_flags(sp)
    sp.add_argument("--config", help="JSON config file; explicit flags override")
    sp.add_argument("--dump-config", dest="dump_config", help="write the resolved config as JSON")
    sp.set_defaults(func=cmd_spectrum, format=None)

    tb = sub.add_parser("table", help="reproduce a published benchmark table")
    tb.add_argument("table_id", type=int, choices=range(1, 6))
    tb.add_argument("--sizes")
    _add_output_flags(tb)
    tb.set_defaults(func=cmd_table)

    cv = sub.add_parser("curves", help="emit curve data for the figures")
    cv.add_argument("kind", choices=("potential", "wavefunction", "centrifugal_error"))
    _add_potential_flags(cv)
    cv.add_argument("--ell-values", dest="ell_values", help="comma list for 3d potential series")
    cv.add_argument("--v-values", dest="v_values",
                    help="comma list of v for 1d series with v1 = -(v^2 - 1/4)/4")
    cv.add_argument("--states", type=int, default=4)
    cv.add_argument("--points", type=int, default=401)
    cv.add_argument("--x-min", dest="x_min", type=float)
    cv.add_argument("--x-max", dest="x_max", type=float)
    _add_output_flags(cv)
    cv.set_defaults(func=cmd_curves)

    cp = sub.add_parser("compare", help="cross-method agreement report")
    _add_potential_flags(cp)
    cp.add_argument("--methods", required=True, help="comma list, e.g. tra,hdm,oracle")
    cp.add_argument("--tolerance", type=float, default=1e-5)
    _add_solver_flags(cp)
    _add_output_flags(cp)
    cp.add_argument("--config", help="JSON config file; explicit flags override")
    cp.set_defaults(func=cmd_compare, format=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
