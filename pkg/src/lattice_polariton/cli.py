"""Command-line front end: parameter parsing, figure presets, CSV output.

Every command writes one CSV dataset and prints a short summary of the key
scalars (transfer rate, couplings, Rabi splitting, spectral peaks).  The
``figure`` presets pin the per-figure resonance conventions, so they reject
an explicit cavity frequency.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .exciton import mode_couplings
from .params import (
    MAGIC_ANGLE_RAD,
    ConfigError,
    InvalidParameterError,
    SystemParams,
    params_from_dict,
    transfer_parameter,
    validate,
)
from .polariton import (
    ModelVariant,
    collective_coupling_noninteracting,
    generalized_rabi,
    superradiant_coupling,
    superradiant_energy,
    two_mode_doublet,
    vacuum_rabi_vs_N,
)
from .spectra import (
    DEFAULT_GRID_POINTS,
    DEFAULT_GRID_SPAN_HZ,
    DampingSet,
    SpectrumTrace,
    default_grid,
    peak_find,
    sweep,
)

FIGURE_IDS = ("3a", "3b", "4a", "4b", "5", "6", "7a", "7b")

_MODEL_BY_FLAG = {
    "two-mode": ModelVariant.TWO_MODE_SUPERRADIANT,
    "multimode": ModelVariant.FULL_MULTIMODE,
    "noninteracting": ModelVariant.NONINTERACTING_COLLECTIVE,
}


@dataclass(frozen=True)
class RunSpec:
    """One resolved CLI invocation."""

    command: str                 # dispersion | couplings | polariton | spectrum |
                                 # rabi-vs-n | rabi-vs-theta | figure
    params: SystemParams
    variant: ModelVariant
    out_path: Path
    figure_id: str | None = None
    grid_points: int | None = None
    grid_span_hz: float | None = None
    envelope_exact: bool = False


def parse_config(config_path: str | Path | None = None, **overrides) -> SystemParams:
    """Merge defaults, an optional JSON file, and explicit overrides.

    Overrides use the JSON schema keys (``num_sites``, ``theta_rad``,
    ``cavity_frequency_hz``, ...) and win over file values, which win over
    the built-in reference defaults.
    """
    data: dict = {}
    if config_path is not None:
        try:
            data = json.loads(Path(config_path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON in {config_path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"parameter file {config_path} must hold a JSON object")
    data.update({k: v for k, v in overrides.items() if v is not None})
    return params_from_dict(data)


def _fmt(value: float) -> str:
    return f"{value:.11e}"


def _write_csv(
    path: Path, header: list[str], rows: list[list], comments: tuple[str, ...] | list[str] = ()
) -> None:
    with open(path, "w", newline="") as handle:
        for line in comments:
            handle.write(f"# {line}\n")
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [cell if isinstance(cell, (str, int)) else _fmt(cell) for cell in row]
            )


def _log_site_counts(max_sites: int) -> list[int]:
    """Logarithmically spaced site counts from 1 to max_sites."""
    raw = np.rint(np.geomspace(1, max_sites, 61)).astype(int)
    return sorted(set(raw.tolist()))


def _exciton_rows(params: SystemParams) -> tuple[list[str], list[list]]:
    header = ["k", "energy_shift_hz", "coupling_hz", "coupling_sq_hz2", "class", "oscillator_fraction"]
    rows = []
    for mode in mode_couplings(params):
        rows.append(
            [
                mode.k,
                mode.energy_hz - params.atom_frequency_hz,
                mode.coupling_hz,
                mode.coupling_hz**2,
                mode.kind.value,
                mode.oscillator_fraction,
            ]
        )
    return header, rows


def _doublet_sweep(
    params: SystemParams, span_hz: float, points: int
) -> list[tuple[float, object]]:
    """Doublets over a symmetric detuning sweep of the cavity frequency."""
    exciton_hz = superradiant_energy(params)
    results = []
    for delta in np.linspace(-span_hz, span_hz, points):
        cavity_hz = exciton_hz + 2.0 * delta
        shifted = replace(params, cavity_frequency_hz=cavity_hz)
        doublet = two_mode_doublet(cavity_hz, exciton_hz, superradiant_coupling(shifted))
        results.append((float(delta), doublet))
    return results


def _spectrum_trace(spec: RunSpec) -> SpectrumTrace:
    damping = DampingSet.from_params(spec.params)
    grid = None
    if spec.grid_points is not None or spec.grid_span_hz is not None:
        grid = default_grid(
            spec.params,
            spec.variant,
            points=spec.grid_points or DEFAULT_GRID_POINTS,
            span_hz=spec.grid_span_hz or DEFAULT_GRID_SPAN_HZ,
        )
    return sweep(spec.params, damping, spec.variant, grid, spec.envelope_exact)


def _spectrum_csv(spec: RunSpec, trace: SpectrumTrace) -> None:
    comments = [
        f"peak, {_fmt(p.location_hz)}, {_fmt(p.height)}, {_fmt(p.fwhm_hz)}" for p in trace.peaks
    ]
    rows = [
        [nu, nu - trace.center_hz, t, r]
        for nu, t, r in zip(trace.frequencies_hz, trace.transmission, trace.reflection)
    ]
    _write_csv(spec.out_path, ["nu_hz", "nu_shift_hz", "transmission", "reflection"], rows, comments)


def _summary(params: SystemParams, variant: ModelVariant, trace: SpectrumTrace | None) -> list[str]:
    transfer = transfer_parameter(params)
    coupling = superradiant_coupling(params)
    collective = collective_coupling_noninteracting(params)
    if variant is ModelVariant.NONINTERACTING_COLLECTIVE:
        omega0 = 2.0 * collective
    else:
        omega0 = 2.0 * coupling
    lines = [
        f"dipole-dipole transfer rate: {transfer:.6e} Hz",
        f"superradiant cavity coupling: {coupling:.6e} Hz",
        f"collective coupling (noninteracting): {collective:.6e} Hz",
        f"vacuum Rabi splitting ({variant.value}): {omega0:.6e} Hz",
    ]
    for warning in validate(params):
        lines.append(f"warning: {warning}")
    if trace is not None:
        lines.append("transmission peaks (location_hz, height, fwhm_hz):")
        for peak in trace.peaks:
            lines.append(f"  {peak.location_hz:.6e}  {peak.height:.4e}  {peak.fwhm_hz:.4e}")
        dips = peak_find(trace.frequencies_hz, -trace.reflection)
        lines.append("reflection dips (location_hz, depth):")
        for dip in dips:
            lines.append(f"  {dip.location_hz:.6e}  {-dip.height:.4e}")
    return lines


def run(spec: RunSpec) -> int:
    """Execute a resolved RunSpec: write its CSV dataset, print a summary."""
    params = spec.params
    trace = None

    if spec.command in ("dispersion", "couplings") or spec.figure_id in ("3a", "3b"):
        header, rows = _exciton_rows(params)
        _write_csv(spec.out_path, header, rows)

    elif spec.command == "polariton" or spec.figure_id in ("4a", "4b"):
        span = spec.grid_span_hz or 1.0e8
        points = spec.grid_points or 401
        sweep_rows = _doublet_sweep(params, span, points)
        if spec.figure_id == "4a":
            header = ["delta_hz", "upper_shift_hz", "lower_shift_hz"]
            exciton_hz = superradiant_energy(params)
            rows = [
                [d, dbl.upper_hz - exciton_hz, dbl.lower_hz - exciton_hz]
                for d, dbl in sweep_rows
            ]
        elif spec.figure_id == "4b":
            header = [
                "delta_hz",
                "exciton_weight_upper",
                "photon_weight_upper",
                "exciton_weight_lower",
                "photon_weight_lower",
            ]
            rows = [
                [
                    d,
                    dbl.exciton_weight_upper,
                    dbl.photon_weight_upper,
                    dbl.exciton_weight_lower,
                    dbl.photon_weight_lower,
                ]
                for d, dbl in sweep_rows
            ]
        else:
            header = [
                "delta_hz",
                "upper_shift_hz",
                "lower_shift_hz",
                "exciton_weight_upper",
                "photon_weight_upper",
                "exciton_weight_lower",
                "photon_weight_lower",
            ]
            exciton_hz = superradiant_energy(params)
            rows = [
                [
                    d,
                    dbl.upper_hz - exciton_hz,
                    dbl.lower_hz - exciton_hz,
                    dbl.exciton_weight_upper,
                    dbl.photon_weight_upper,
                    dbl.exciton_weight_lower,
                    dbl.photon_weight_lower,
                ]
                for d, dbl in sweep_rows
            ]
        _write_csv(spec.out_path, header, rows)

    elif spec.command == "spectrum" or spec.figure_id == "5":
        trace = _spectrum_trace(spec)
        _spectrum_csv(spec, trace)

    elif spec.command == "rabi-vs-n" or spec.figure_id == "6":
        counts = _log_site_counts(params.num_sites)
        interacting = vacuum_rabi_vs_N(params, counts, ModelVariant.TWO_MODE_SUPERRADIANT)
        collective = vacuum_rabi_vs_N(params, counts, ModelVariant.NONINTERACTING_COLLECTIVE)
        rows = [
            [n, omega_i, omega_c]
            for (n, omega_i), (_, omega_c) in zip(interacting, collective)
        ]
        _write_csv(spec.out_path, ["N", "omega0_int_hz", "omega0_nonint_hz"], rows)

    elif spec.command == "rabi-vs-theta" or spec.figure_id == "7a":
        points = spec.grid_points or 181
        thetas = np.linspace(0.0, math.pi / 2.0, points)
        rows = []
        for theta in thetas:
            omega_i = generalized_rabi(params, theta, params.num_sites, ModelVariant.TWO_MODE_SUPERRADIANT)
            omega_c = generalized_rabi(
                params, theta, params.num_sites, ModelVariant.NONINTERACTING_COLLECTIVE
            )
            rows.append([float(theta), omega_i, omega_c])
        _write_csv(spec.out_path, ["theta_rad", "omega_int_hz", "omega_nonint_hz"], rows)

    elif spec.figure_id == "7b":
        counts = _log_site_counts(params.num_sites)
        rows = []
        for n in counts:
            rows.append(
                [
                    n,
                    generalized_rabi(params, 0.0, n, ModelVariant.TWO_MODE_SUPERRADIANT),
                    generalized_rabi(params, MAGIC_ANGLE_RAD, n, ModelVariant.TWO_MODE_SUPERRADIANT),
                    generalized_rabi(params, math.pi / 2.0, n, ModelVariant.TWO_MODE_SUPERRADIANT),
                    generalized_rabi(params, 0.0, n, ModelVariant.NONINTERACTING_COLLECTIVE),
                ]
            )
        header = [
            "N",
            "omega_int_theta0_hz",
            "omega_int_magic_hz",
            "omega_int_theta90_hz",
            "omega_nonint_hz",
        ]
        _write_csv(spec.out_path, header, rows)

    else:
        raise ValueError(f"unhandled command {spec.command!r}")

    for line in _summary(params, spec.variant, trace):
        print(line)
    print(f"wrote: {spec.out_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON parameter file")
    common.add_argument("--out", metavar="PATH", help="output CSV path")
    common.add_argument(
        "--model",
        choices=sorted(_MODEL_BY_FLAG),
        default="two-mode",
        help="model variant (default: two-mode)",
    )
    common.add_argument("--num-sites", type=int, help="number of lattice sites")
    common.add_argument("--theta-deg", type=float, help="dipole angle in degrees")
    common.add_argument("--nu-c-hz", type=float, help="explicit cavity frequency in Hz")
    common.add_argument("--grid-points", type=int, help="sweep grid size")
    common.add_argument("--grid-span-hz", type=float, help="sweep half-span in Hz")
    common.add_argument(
        "--envelope",
        choices=("exact", "flat"),
        default="flat",
        help="beam envelope for the multimode model (default: flat)",
    )

    parser = argparse.ArgumentParser(
        prog="lattice-polariton",
        description="Collective excitons of a finite atomic chain in a cavity: "
        "dispersion, couplings, polariton doublets, Rabi splittings, and spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("dispersion", parents=[common], help="exciton mode energies")
    sub.add_parser("couplings", parents=[common], help="exciton-photon couplings")
    sub.add_parser("polariton", parents=[common], help="polariton doublet vs detuning")
    sub.add_parser("spectrum", parents=[common], help="transmission/reflection spectrum")
    sub.add_parser("rabi-vs-n", parents=[common], help="vacuum Rabi splitting vs atom number")
    sub.add_parser("rabi-vs-theta", parents=[common], help="generalized Rabi splitting vs angle")
    fig = sub.add_parser("figure", parents=[common], help="named figure presets")
    fig.add_argument("id", nargs="?", choices=FIGURE_IDS, help="figure preset id")
    fig.add_argument("--figure", dest="figure_flag", choices=FIGURE_IDS, help="figure preset id")
    return parser


def _build_spec(args: argparse.Namespace) -> RunSpec:
    figure_id = None
    if args.command == "figure":
        figure_id = args.id or args.figure_flag
        if figure_id is None:
            raise ConfigError("figure preset requires an id (e.g. `figure 5`)")
        if args.id and args.figure_flag and args.id != args.figure_flag:
            raise ConfigError("conflicting figure ids given")
        if args.nu_c_hz is not None:
            raise ConfigError(
                "figure presets own the resonance convention; --nu-c-hz is not allowed"
            )

    overrides = {
        "num_sites": args.num_sites,
        "cavity_frequency_hz": args.nu_c_hz,
    }
    if args.theta_deg is not None:
        overrides["theta_rad"] = math.radians(args.theta_deg)
    params = parse_config(args.config, **overrides)

    if figure_id is not None and params.cavity_frequency_hz is not None:
        raise ConfigError(
            "figure presets own the resonance convention; remove cavity_frequency_hz "
            "from the parameter file"
        )

    if args.out:
        out_path = Path(args.out)
    elif figure_id is not None:
        out_path = Path(f"fig{figure_id}.csv")
    else:
        out_path = Path(f"{args.command}.csv")

    return RunSpec(
        command=args.command,
        params=params,
        variant=_MODEL_BY_FLAG[args.model],
        out_path=out_path,
        figure_id=figure_id,
        grid_points=args.grid_points,
        grid_span_hz=args.grid_span_hz,
        envelope_exact=(args.envelope == "exact"),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = _build_spec(args)
    except (ConfigError, InvalidParameterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return run(spec)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, InvalidParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
