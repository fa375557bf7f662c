"""Grid sweeps over the coupling plane and phase-boundary bisection.

A sweep walks a rectangular grid of the configuration's two active
couplings (for the Xi configuration these are literally mu12 and mu23;
for Lambda and V the grid drives the corresponding active pair), runs the
variational minimizer at every point (warm-started along rows of
increasing first coupling), optionally solves the exact ground state and
fidelities, and writes one CSV row per point plus a JSON metadata sidecar.
Identical configs and seeds produce byte-identical CSV files, serial or
parallel.
"""

from __future__ import annotations

import csv
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .exact import coherent_vs_quantum, ground_state, neighbor_fidelity_scan
from .gt import IrrepSpec, generators_for
from .model import CONFIGURATIONS, ModelParams, build_hamiltonian, derive_gaps
from .variational import MinimizeOptions, minimize

__all__ = ["GridSpec", "SweepConfig", "run_sweep", "critical_bisect", "CSV_COLUMNS"]

CSV_COLUMNS = [
    "mu12",
    "mu23",
    "irrep",
    "config",
    "var_energy",
    "var_nphot",
    "var_jz1",
    "var_jz2",
    "phase",
    "exact_energy",
    "n_max",
    "f_coh_q",
    "f_qq_h",
    "f_qq_v",
    "qpt_h",
    "qpt_v",
    "spread",
]


class ConfigError(ValueError):
    """Invalid sweep configuration (maps to exit code 2 in the CLI)."""


@dataclass(frozen=True)
class GridSpec:
    """Inclusive linspace grids for the two active couplings."""

    mu12_min: float = 0.0
    mu12_max: float = 1.5
    mu12_steps: int = 41
    mu23_min: float = 0.0
    mu23_max: float = 1.5
    mu23_steps: int = 41

    def __post_init__(self):
        if self.mu12_steps < 2 or self.mu23_steps < 2:
            raise ConfigError("grid needs at least 2 steps per axis")
        if min(self.mu12_min, self.mu12_max, self.mu23_min, self.mu23_max) < 0:
            raise ConfigError("coupling ranges must be nonnegative")
        if self.mu12_max < self.mu12_min or self.mu23_max < self.mu23_min:
            raise ConfigError("grid max must be >= min")

    @property
    def axis1(self) -> np.ndarray:
        return np.linspace(self.mu12_min, self.mu12_max, self.mu12_steps)

    @property
    def axis2(self) -> np.ndarray:
        return np.linspace(self.mu23_min, self.mu23_max, self.mu23_steps)


@dataclass(frozen=True)
class SweepConfig:
    """Everything one reproducible sweep needs."""

    irreps: tuple[IrrepSpec, ...]
    omega1: float
    omega2: float
    Omega: float
    configuration: str = "xi"
    grid: GridSpec = field(default_factory=GridSpec)
    n_max: int = 100
    exact: bool = True
    qpt_delta: float = 1e-3
    minimizer: MinimizeOptions = field(default_factory=MinimizeOptions)
    out_dir: str = "."
    threads: int = 1
    label: str = "sweep"

    def __post_init__(self):
        if not self.irreps:
            raise ConfigError("at least one irrep required")
        if self.configuration not in CONFIGURATIONS:
            raise ConfigError(f"unknown configuration {self.configuration!r}")
        if self.n_max < 0 or self.threads < 1:
            raise ConfigError("n_max must be >= 0 and threads >= 1")

    @classmethod
    def from_dict(cls, raw: dict) -> "SweepConfig":
        data = dict(raw)
        try:
            if "levels" in data:
                w1, w2 = derive_gaps(data.pop("levels"))
                # explicit gaps take precedence over levels
                data.setdefault("omega1", w1)
                data.setdefault("omega2", w2)
            irreps = data.pop("irreps", None) or [data.pop("irrep")]
            parsed = tuple(
                IrrepSpec.parse(i) if isinstance(i, str) else IrrepSpec(*i) for i in irreps
            )
            grid = GridSpec(**data.pop("grid", {}))
            minimizer = MinimizeOptions(**data.pop("minimizer", {}))
            return cls(irreps=parsed, grid=grid, minimizer=minimizer, **data)
        except ConfigError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad sweep config: {exc}") from exc

    @classmethod
    def from_file(cls, path: str | Path) -> "SweepConfig":
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if path.suffix in (".toml", ".tml"):
            try:
                import tomllib
            except ModuleNotFoundError:  # python < 3.11
                import tomli as tomllib
            try:
                raw = tomllib.loads(text)
            except tomllib.TOMLDecodeError as exc:
                raise ConfigError(f"invalid TOML in {path}: {exc}") from exc
        else:
            try:
                raw = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
        return cls.from_dict(raw)

    def base_params(self) -> ModelParams:
        return ModelParams(
            omega1=self.omega1, omega2=self.omega2, Omega=self.Omega, config=self.configuration
        )


def _point_params(base: ModelParams, mu1: float, mu2: float) -> ModelParams:
    ax1, ax2 = base.active_axes
    return base.at(**{ax1: float(mu1), ax2: float(mu2)})


def _row_worker(args: tuple) -> tuple[int, list[dict], list]:
    """One row (fixed second coupling), warm-started along the first axis."""
    row_index, mu2, axis1_list, irrep_tuple, cfg_core = args
    irrep = IrrepSpec(*irrep_tuple)
    gens = generators_for(irrep)
    base = ModelParams(
        omega1=cfg_core["omega1"],
        omega2=cfg_core["omega2"],
        Omega=cfg_core["Omega"],
        config=cfg_core["configuration"],
    )
    opts = MinimizeOptions(**cfg_core["minimizer"])
    do_exact = cfg_core["exact"]
    n_max = cfg_core["n_max"]

    records, solutions = [], []
    warm = None
    for mu1 in axis1_list:
        params = _point_params(base, mu1, mu2)
        var = minimize(params, gens, opts, warm_start=warm)
        warm = var.params_min
        rec = {
            "var_energy": var.energy,
            "var_nphot": var.photon_number,
            "var_jz1": var.jz1,
            "var_jz2": var.jz2,
            "phase": var.phase,
            "spread": var.spread,
        }
        if do_exact:
            sol = ground_state(build_hamiltonian(params, gens, n_max))
            rec["exact_energy"] = sol.energy
            rec["n_max"] = sol.n_max
            rec["f_coh_q"] = coherent_vs_quantum(var, sol, gens)
            solutions.append(sol)
        records.append(rec)
    return (row_index, records, solutions)


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def run_sweep(config: SweepConfig) -> tuple[Path, Path]:
    """Run the sweep and write `<label>.csv` and `<label>.meta.json`.

    Returns the two paths.  Record order is deterministic: irreps in
    config order, then row-major over (second coupling, first coupling).
    """
    t_start = time.perf_counter()
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{config.label}.csv"
    meta_path = out_dir / f"{config.label}.meta.json"

    axis1 = [float(v) for v in config.grid.axis1]
    axis2 = [float(v) for v in config.grid.axis2]
    cfg_core = {
        "omega1": config.omega1,
        "omega2": config.omega2,
        "Omega": config.Omega,
        "configuration": config.configuration,
        "minimizer": asdict(config.minimizer),
        "exact": config.exact,
        "n_max": config.n_max,
    }

    all_rows = []
    for irrep in config.irreps:
        tasks = [
            (i, mu2, axis1, irrep.as_tuple(), cfg_core) for i, mu2 in enumerate(axis2)
        ]
        if config.threads > 1:
            with ProcessPoolExecutor(max_workers=config.threads) as pool:
                row_results = list(pool.map(_row_worker, tasks))
        else:
            row_results = [_row_worker(t) for t in tasks]
        row_results.sort(key=lambda r: r[0])

        records = [recs for _, recs, _ in row_results]
        if config.exact:
            grid_solutions = [sols for _, _, sols in row_results]
            scans = {
                "h": neighbor_fidelity_scan(grid_solutions, "horizontal", config.qpt_delta),
                "v": neighbor_fidelity_scan(grid_solutions, "vertical", config.qpt_delta),
            }
            for key, recs in scans.items():
                for r in recs:
                    records[r.row][r.col][f"f_qq_{key}"] = r.f_qq
                    records[r.row][r.col][f"qpt_{key}"] = r.marker

        for i, mu2 in enumerate(axis2):
            for j, mu1 in enumerate(axis1):
                rec = records[i][j]
                row = {
                    "mu12": mu1,
                    "mu23": mu2,
                    "irrep": str(irrep),
                    "config": config.configuration,
                    "var_energy": rec["var_energy"],
                    "var_nphot": rec["var_nphot"],
                    "var_jz1": rec["var_jz1"],
                    "var_jz2": rec["var_jz2"],
                    "phase": rec["phase"],
                    "exact_energy": rec.get("exact_energy"),
                    "n_max": rec.get("n_max"),
                    "f_coh_q": rec.get("f_coh_q"),
                    "f_qq_h": rec.get("f_qq_h", math.nan if config.exact else None),
                    "f_qq_v": rec.get("f_qq_v", math.nan if config.exact else None),
                    "qpt_h": rec.get("qpt_h", False if config.exact else None),
                    "qpt_v": rec.get("qpt_v", False if config.exact else None),
                    "spread": rec["spread"],
                }
                all_rows.append(row)

    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in all_rows:
            writer.writerow([_format(row[c]) for c in CSV_COLUMNS])

    meta = {
        "package": "su3dicke",
        "version": __version__,
        "python": sys.version.split()[0],
        "numpy": np.__version__,
        "scipy": __import__("scipy").__version__,
        "seed": config.minimizer.seed,
        "qpt_delta": config.qpt_delta,
        "minimizer": asdict(config.minimizer),
        "grid": asdict(config.grid),
        "irreps": [str(i) for i in config.irreps],
        "configuration": config.configuration,
        "omega1": config.omega1,
        "omega2": config.omega2,
        "Omega": config.Omega,
        "n_max": config.n_max,
        "exact": config.exact,
        "threads": config.threads,
        "rows_written": len(all_rows),
        "wall_time_s": round(time.perf_counter() - t_start, 3),
    }
    meta_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return csv_path, meta_path


def critical_bisect(
    params: ModelParams,
    gens,
    axis: str,
    fixed_value: float,
    lo: float = 0.0,
    hi: float = 1.5,
    width: float = 1e-4,
    opts: MinimizeOptions = MinimizeOptions(),
) -> float:
    """Bisect the phase boundary along one grid axis at the given width.

    `axis` is "mu12" (first active coupling) or "mu23" (second); the other
    coupling is pinned at `fixed_value`.  Raises ValueError when both
    bracket ends report the same phase.  The minimizer of the most recent
    super-radiant point warm-starts later evaluations.
    """
    ax1, ax2 = params.active_axes
    if axis == "mu12":
        moving, fixed = ax1, ax2
    elif axis == "mu23":
        moving, fixed = ax2, ax1
    else:
        raise ValueError(f"axis must be 'mu12' or 'mu23', got {axis!r}")

    warm = None

    def phase_at(value: float):
        nonlocal warm
        point = params.at(**{moving: float(value), fixed: float(fixed_value)})
        res = minimize(point, gens, opts, warm_start=warm)
        if res.phase != "Normal":
            warm = res.params_min
        return res.phase

    phase_lo = phase_at(lo)
    phase_hi = phase_at(hi)
    if phase_lo == phase_hi:
        raise ValueError(
            f"degenerate bracket: phase {phase_lo} at both {moving}={lo} and {moving}={hi}"
        )
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if phase_at(mid) == phase_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
