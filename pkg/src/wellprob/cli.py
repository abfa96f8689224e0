"""Command-line frontend writing plain-CSV data files.

Commands: classical, eigensolve, momentum, table1, sweep, bounce-sim.
Exit codes: 0 success, 2 bad configuration or unsupported regime,
3 numerical failure.  All floats are written with 17 significant digits
and LF line endings so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .classical import (classical_momentum_density, classical_position_density,
                        measurement_histogram, momentum_delta_masses,
                        sample_measurements, trajectory)
from .compare import plateau_height, v0_sweep
from .config import RunConfig, apply_overrides, parse_file
from .errors import (AiryOverflowError, ConfigError, NumericalError, RegimeError,
                     ResolutionError, SupportError, WellProbError)
from .model import PotentialKind, PotentialSpec, bouncer, classical_state, closed_court
from .quantum import (EigenLevel, eigenstate_closed_court, eigenstate_infinite_well,
                      infinite_well_energy, momentum_transform, nearest_level, spectrum)

# Reference closed-court parameters being reproduced: (v0, a, E, p-, p+, dp)
# with hbar = 2m = 1.  Note the quoted (6, 25) row is internally inconsistent:
# its p- does not equal p+ - dp (nor sqrt(E - V0)); deviations are reported
# against the quoted numbers as-is.
TABLE1_ROWS = (
    (10.0, 25.0, 10.066, 0.257, 3.173, 2.916),
    (6.0, 25.0, 10.073, 2.108, 3.174, 1.156),
    (2.0, 25.0, 10.105, 2.847, 3.179, 0.332),
)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _write_csv(path: Path, header, rows) -> Path:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def _outdir(cfg: RunConfig) -> Path:
    d = Path(cfg.output.directory)
    d.mkdir(parents=True, exist_ok=True)
    return d


def _require_energy(cfg: RunConfig) -> float:
    if cfg.task.energy is None:
        raise ConfigError("task.energy is required for this command")
    return cfg.task.energy


def _select_level(cfg: RunConfig, spec: PotentialSpec) -> EigenLevel:
    t = cfg.task
    if spec.kind is PotentialKind.INFINITE_WELL:
        if t.index is None or t.parity not in ("even", "odd"):
            raise ConfigError("infinite well needs task.index and task.parity=even|odd")
        return EigenLevel(energy=infinite_well_energy(spec, t.index, t.parity),
                          parity=t.parity, index=t.index, residual=0.0)
    if spec.kind is PotentialKind.CLOSED_COURT:
        if t.energy is not None:
            return nearest_level(spec, t.energy, search_width=t.search_width)
        raise ConfigError("closed court needs task.energy to select a state")
    raise ConfigError("no quantum states for this potential kind in this artifact")


def cmd_classical(cfg: RunConfig) -> list[Path]:
    spec = cfg.spec()
    energy = _require_energy(cfg)
    out = _outdir(cfg)
    written = []
    state = classical_state(spec, energy)

    pos = classical_position_density(spec, energy, n_points=cfg.task.n_points)
    written.append(_write_csv(out / "classical_position.csv", ("x", "density"),
                              zip(pos.grid, pos.values)))
    meta = [("energy", energy), ("tau", state.tau), ("period", state.period),
            ("p_minus", state.p_minus), ("p_plus", state.p_plus),
            ("delta_p", state.delta_p),
            ("turning_lo", state.turning_points[0]),
            ("turning_hi", state.turning_points[1]),
            ("position_omitted_mass", pos.omitted_mass)]
    written.append(_write_csv(out / "classical_meta.csv", ("key", "value"), meta))

    if spec.kind is PotentialKind.INFINITE_WELL:
        written.append(_write_csv(out / "classical_momentum_delta.csv",
                                  ("p", "mass"), momentum_delta_masses(spec, energy)))
    else:
        mom = classical_momentum_density(spec, energy, n_points=cfg.task.n_points)
        written.append(_write_csv(out / "classical_momentum.csv", ("p", "density"),
                                  zip(mom.grid, mom.values)))

    if cfg.task.n_bins:
        for variable in ("position", "momentum"):
            hist = measurement_histogram(spec, energy, cfg.task.n_bins, variable,
                                         max(cfg.task.n_draws, 0) or 1, cfg.task.seed)
            written.append(_write_csv(
                out / f"histogram_{variable}.csv", ("bin_lo", "bin_hi", "mass"),
                zip(hist.bin_edges[:-1], hist.bin_edges[1:], hist.bin_mass)))
    if cfg.task.n_draws > 0:
        draws = sample_measurements(spec, energy, cfg.task.n_draws, cfg.task.seed)
        written.append(_write_csv(out / "draws.csv", ("t", "position", "momentum"),
                                  zip(draws.times, draws.positions, draws.momenta)))
    return written


def cmd_eigensolve(cfg: RunConfig) -> list[Path]:
    spec = cfg.spec()
    t = cfg.task
    out = _outdir(cfg)
    e_max = t.e_max if t.e_max is not None else 12.0
    parities = ("even", "odd") if t.parity == "both" else (t.parity,)
    levels: list[EigenLevel] = []
    if spec.kind is PotentialKind.CLOSED_COURT:
        levels = [lv for lv in spectrum(spec, e_max) if lv.parity in parities]
    elif spec.kind is PotentialKind.INFINITE_WELL:
        for parity in parities:
            n = 1
            while infinite_well_energy(spec, n, parity) <= e_max:
                levels.append(EigenLevel(energy=infinite_well_energy(spec, n, parity),
                                         parity=parity, index=n, residual=0.0))
                n += 1
        levels.sort(key=lambda lv: lv.energy)
    else:
        raise ConfigError("eigensolve supports the well potentials only")
    written = [_write_csv(_outdir(cfg) / "eigenvalues.csv",
                          ("index", "parity", "energy", "residual"),
                          [(lv.index, lv.parity, lv.energy, lv.residual) for lv in levels])]

    wants_state = (t.index is not None and t.parity in ("even", "odd")) or (
        spec.kind is PotentialKind.CLOSED_COURT and t.energy is not None)
    if wants_state:
        if spec.kind is PotentialKind.INFINITE_WELL:
            state = eigenstate_infinite_well(spec, t.index, t.parity, n_grid=t.n_grid)
        else:
            if t.index is not None and t.parity in ("even", "odd"):
                roots = [lv for lv in levels if lv.parity == t.parity and lv.index == t.index]
                if not roots:
                    raise ConfigError(f"no {t.parity} level #{t.index} below e_max={e_max}")
                level = roots[0]
            else:
                level = _select_level(cfg, spec)
            state = eigenstate_closed_court(spec, level.energy, level.parity,
                                            n_grid=t.n_grid, index=level.index)
        written.append(_write_csv(out / "wavefunction.csv", ("x", "psi", "density"),
                                  zip(state.grid, state.psi, state.psi ** 2)))
    return written


def cmd_momentum(cfg: RunConfig) -> list[Path]:
    spec = cfg.spec()
    t = cfg.task
    out = _outdir(cfg)
    level = _select_level(cfg, spec)
    if spec.kind is PotentialKind.INFINITE_WELL:
        state = eigenstate_infinite_well(spec, level.index, level.parity, n_grid=t.n_grid)
    else:
        state = eigenstate_closed_court(spec, level.energy, level.parity,
                                        n_grid=t.n_grid, index=level.index)
    wave = momentum_transform(state, n_points=t.n_points)
    written = []
    if spec.kind is PotentialKind.CLOSED_COURT:
        overlay = classical_momentum_density(spec, level.energy, grid=wave.grid).values
    else:
        overlay = np.zeros_like(wave.grid)
        written.append(_write_csv(out / "classical_momentum_delta.csv", ("p", "mass"),
                                  momentum_delta_masses(spec, level.energy)))
    written.insert(0, _write_csv(
        out / "momentum_wavefunction.csv",
        ("p", "phi_re", "phi_im", "density", "classical_density"),
        zip(wave.grid, wave.phi.real, wave.phi.imag, wave.density, overlay)))
    meta = [("energy", level.energy), ("parity", level.parity), ("index", level.index),
            ("residual", level.residual), ("hbar", spec.constants.hbar)]
    written.append(_write_csv(out / "momentum_meta.csv", ("key", "value"), meta))
    return written


def cmd_table1(cfg: RunConfig) -> list[Path]:
    rows = []
    for v0, a, e_ref, pm_ref, pp_ref, dp_ref in TABLE1_ROWS:
        spec = closed_court(a=a, v0=v0, hbar=1.0, mass=0.5)
        level = nearest_level(spec, e_ref, search_width=cfg.task.search_width)
        st = classical_state(spec, level.energy)
        rows.append((v0, a, level.energy, level.parity, level.index,
                     st.p_minus, st.p_plus, st.delta_p, spec.constants.hbar / a,
                     e_ref, pm_ref, pp_ref, dp_ref,
                     abs(level.energy - e_ref), abs(st.p_minus - pm_ref),
                     abs(st.p_plus - pp_ref), abs(st.delta_p - dp_ref)))
    header = ("v0", "a", "energy", "parity", "index", "p_minus", "p_plus",
              "delta_p", "hbar_over_a", "energy_ref", "p_minus_ref", "p_plus_ref",
              "delta_p_ref", "dev_energy", "dev_p_minus", "dev_p_plus", "dev_delta_p")
    return [_write_csv(_outdir(cfg) / "table1.csv", header, rows)]


def cmd_sweep(cfg: RunConfig) -> list[Path]:
    t = cfg.task
    a = cfg.potential.a if cfg.potential.a is not None else 25.0
    e_target = t.e_target if t.e_target is not None else 10.0
    v0_list = t.v0_list if t.v0_list else (10.0, 6.0, 2.0)
    reports = v0_sweep(a=a, hbar=cfg.constants.hbar, mass=cfg.constants.mass,
                       e_target=e_target, v0_list=v0_list,
                       search_width=t.search_width)
    rows = []
    for v0, rep in zip(v0_list, reports):
        plateau = plateau_height(rep) if rep.delta_p_classical == rep.delta_p_classical else float("nan")
        rows.append((v0, rep.energy, rep.parity, rep.index, rep.window,
                     rep.l2_gap_position, rep.support_mass_momentum,
                     rep.delta_p_classical, plateau, rep.delta_p_intrinsic,
                     rep.classical_unreliable, rep.flag))
    header = ("v0", "energy", "parity", "index", "window", "l2_gap_position",
              "support_mass_momentum", "delta_p_classical", "plateau_height",
              "delta_p_intrinsic", "classical_unreliable", "flag")
    return [_write_csv(_outdir(cfg) / "sweep.csv", header, rows)]


def cmd_bounce_sim(cfg: RunConfig) -> list[Path]:
    if cfg.potential.kind is None:
        spec = bouncer(mass=1.0, g=1.0, hbar=cfg.constants.hbar)
    else:
        spec = cfg.spec()
        if spec.kind is not PotentialKind.BOUNCER:
            raise ConfigError("bounce-sim needs a bouncer potential")
    t = cfg.task
    energy = t.energy if t.energy is not None else 2.0
    n_bins = t.n_bins if t.n_bins else 25
    n_draws = t.n_draws if t.n_draws > 0 else 1000
    out = _outdir(cfg)
    state = classical_state(spec, energy)
    times = np.linspace(0.0, state.period, 801)
    z, p = trajectory(spec, energy, times)
    written = [_write_csv(out / "bounce_trajectory.csv", ("t", "z", "p"),
                          zip(times, z, p))]
    for variable in ("position", "momentum"):
        hist = measurement_histogram(spec, energy, n_bins, variable, n_draws, t.seed)
        written.append(_write_csv(
            out / f"bounce_histogram_{variable}.csv", ("bin_lo", "bin_hi", "mass"),
            zip(hist.bin_edges[:-1], hist.bin_edges[1:], hist.bin_mass)))
    draws = sample_measurements(spec, energy, n_draws, t.seed)
    written.append(_write_csv(out / "bounce_draws.csv", ("t", "z", "p"),
                              zip(draws.times, draws.positions, draws.momenta)))
    return written


_COMMANDS = {
    "classical": cmd_classical,
    "eigensolve": cmd_eigensolve,
    "momentum": cmd_momentum,
    "table1": cmd_table1,
    "sweep": cmd_sweep,
    "bounce-sim": cmd_bounce_sim,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wellprob",
        description="Classical and quantum probability densities for 1D wells "
                    "(bouncer, infinite well, linear well with walls)")
    parser.add_argument("--version", action="version", version=f"wellprob {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "classical": "classical densities, projection histograms, measurement draws",
        "eigensolve": "bound-state energies and a selected wavefunction",
        "momentum": "momentum-space wavefunction with classical overlay",
        "table1": "one-shot reproduction of the closed-court parameter table",
        "sweep": "classical/quantum comparison along decreasing V0",
        "bounce-sim": "bouncer trajectory, histograms, and random measurements",
    }
    for name in _COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--config", metavar="PATH", help="INI run configuration")
        p.add_argument("--out", metavar="DIR", help="output directory")
        p.add_argument("--seed", metavar="N", type=int, help="random seed override")
        p.add_argument("--format", metavar="FMT", help="output format (csv)")
        p.add_argument("--set", metavar="SECTION.KEY=VALUE", action="append",
                       default=[], help="override one config key (repeatable)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = parse_file(args.config) if args.config else RunConfig()
        overrides = list(args.set)
        if args.out:
            overrides.append(f"output.directory={args.out}")
        if args.seed is not None:
            overrides.append(f"task.seed={args.seed}")
        if args.format:
            overrides.append(f"output.format={args.format}")
        cfg = apply_overrides(cfg, overrides)
        written = _COMMANDS[args.command](cfg)
    except (ConfigError, RegimeError, SupportError, ResolutionError) as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, AiryOverflowError) as exc:
        print(f"error: numerical: {exc}", file=sys.stderr)
        return 3
    except WellProbError as exc:
        print(f"error: numerical: {exc}", file=sys.stderr)
        return 3
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
