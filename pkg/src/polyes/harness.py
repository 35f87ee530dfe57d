"""Manufactured-solution convergence studies and entropy-conservation runs."""

from __future__ import annotations

import csv
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from typing import List, Optional

import numpy as np

from .dgsem import (
    CartesianMesh,
    DgSolution,
    InadmissibleStateError,
    dg_residual,
    dg_rhs,
    entropy_residual,
    l2_error,
)
from .equations import EquationOfState
from .fluxes import ec_flux, es_flux
from .timeint import TimeIntegratorConfig, cfl_timestep, integrate

log = logging.getLogger(__name__)

FLUX_PAIRS = {"ec_ec": (ec_flux, ec_flux), "ec_es": (ec_flux, es_flux)}
EXPERIMENTS = ("convergence", "entropy")


class ConfigError(ValueError):
    pass


class SolverFailure(RuntimeError):
    def __init__(self, n_el, cause):
        self.n_el = n_el
        super().__init__(f"solver failed on the {n_el}x{n_el} mesh: {cause}")


# -- test problems -----------------------------------------------------------

TWO_PI = 2.0 * np.pi


def _h(x, y, t):
    return 8.0 + np.cos(TWO_PI * x) * np.sin(TWO_PI * y) * np.cos(TWO_PI * t)


def manufactured_state(x, y, t):
    """``[h, h/2, 3h/2]`` with ``h = 8 + cos(2 pi x) sin(2 pi y) cos(2 pi t)``."""
    h = _h(np.asarray(x, dtype=float), np.asarray(y, dtype=float), t)
    return np.stack([h, 0.5 * h, 1.5 * h])


def manufactured_source(x, y, t, eos: EquationOfState):
    """Source making :func:`manufactured_state` an exact solution."""
    return _source_on_grid(x, y, eos)(t)


def _source_on_grid(x, y, eos: EquationOfState):
    # spatial factors are fixed for a run; only the time factors change per stage
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    cxsy = np.cos(TWO_PI * x) * np.sin(TWO_PI * y)
    sxsy = np.sin(TWO_PI * x) * np.sin(TWO_PI * y)
    cxcy = np.cos(TWO_PI * x) * np.cos(TWO_PI * y)

    def at(t):
        ct, st = np.cos(TWO_PI * t), np.sin(TWO_PI * t)
        h_t = -TWO_PI * st * cxsy
        h_x = -TWO_PI * ct * sxsy
        h_y = TWO_PI * ct * cxcy
        if eos.is_isothermal:
            b = eos.c**2
        else:
            b = eos.kappa * eos.gamma * (8.0 + ct * cxsy) ** (eos.gamma - 1.0)
        return np.stack(
            [
                h_t + 0.5 * h_x + 1.5 * h_y,
                0.5 * h_t + (0.25 + b) * h_x + 0.75 * h_y,
                1.5 * h_t + 0.75 * h_x + (2.25 + b) * h_y,
            ]
        )

    return at


def discontinuous_ic(x, y):
    """``[1.2, 0.1, 0]`` where ``x <= y``, else ``[1.0, 0.2, -0.4]``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    upper = x <= y
    return np.stack(
        [
            np.where(upper, 1.2, 1.0),
            np.where(upper, 0.1, 0.2),
            np.where(upper, 0.0, -0.4),
        ]
    )


# -- configuration -----------------------------------------------------------


@dataclass
class RunConfig:
    experiment: str = "convergence"
    eos: str = "isothermal"
    gamma: float = 1.4
    kappa: float = 0.5
    c: float = 1.0
    n: int = 3
    mesh: List[int] = field(default_factory=lambda: [4, 8, 16, 32])
    cfl: float = 1.0
    tfinal: Optional[float] = None
    flux: Optional[str] = None
    out: Optional[str] = None
    jobs: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.experiment!r}")
        if self.eos not in ("isothermal", "polytropic"):
            raise ConfigError(f"unknown equation of state {self.eos!r}")
        if self.flux is not None and self.flux not in FLUX_PAIRS:
            raise ConfigError(f"unknown flux choice {self.flux!r}")
        if not self.mesh or any(m < 1 for m in self.mesh):
            raise ConfigError(f"mesh sizes must be positive, got {self.mesh}")
        if any(b <= a for a, b in zip(self.mesh, self.mesh[1:])):
            raise ConfigError(f"mesh sizes must be strictly increasing, got {self.mesh}")
        if not 1 <= self.n <= 15:
            raise ConfigError(f"polynomial degree must lie in [1, 15], got {self.n}")
        if self.jobs < 1:
            raise ConfigError("jobs must be positive")
        try:
            TimeIntegratorConfig(self.cfl, self.final_time)
            self.equation_of_state()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def final_time(self) -> float:
        if self.tfinal is not None:
            return self.tfinal
        return 1.0 if self.experiment == "convergence" else 0.5

    @property
    def flux_choice(self) -> str:
        if self.flux is not None:
            return self.flux
        return "ec_es" if self.experiment == "convergence" else "ec_ec"

    def equation_of_state(self) -> EquationOfState:
        if self.eos == "isothermal":
            return EquationOfState.isothermal(self.c)
        return EquationOfState.polytropic(self.kappa, self.gamma)


_CASTS = {"gamma": float, "kappa": float, "c": float, "n": int, "cfl": float,
          "tfinal": float, "jobs": int}


def parse_value(key, text):
    text = text.strip()
    try:
        if key == "mesh":
            return [int(v) for v in text.replace(" ", "").split(",") if v]
        if key in _CASTS:
            return _CASTS[key](text)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {text!r}") from exc
    return text


def read_config_file(path) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    names = {f.name for f in fields(RunConfig)}
    values = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, text = (s.strip() for s in line.split("=", 1))
        if key not in names:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = parse_value(key, text)
    return values


def make_config(file_values: Optional[dict] = None, **overrides) -> RunConfig:
    values = dict(file_values or {})
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


# -- runs --------------------------------------------------------------------


@dataclass(frozen=True)
class EocRow:
    n_el: int
    error: float
    eoc: Optional[float] = None


@dataclass(frozen=True)
class EntropyRow:
    n_el: int
    max_abs_ist: float
    max_ist: float
    steps: int


def _solver_setup(cfg: RunConfig, n_el: int, initial):
    eos = cfg.equation_of_state()
    mesh = CartesianMesh.square(n_el)
    return DgSolution.from_function(mesh, cfg.n, eos, initial)


def convergence_error(cfg: RunConfig, n_el: int) -> float:
    """L2 density error of one manufactured-solution run on an ``n_el``^2 mesh."""
    sol = _solver_setup(cfg, n_el, lambda x, y: manufactured_state(x, y, 0.0))
    vol, surf = FLUX_PAIRS[cfg.flux_choice]
    source_at = _source_on_grid(*sol.coordinates, sol.eos)

    def rhs(u, t):
        return dg_rhs(sol.copy(u), vol, surf, lambda *_: source_at(t), t)

    def timestep(u, t):
        return cfl_timestep(sol.copy(u), cfg.cfl)

    try:
        u, t, steps = integrate(sol.u, rhs, 0.0, cfg.final_time, timestep)
    except InadmissibleStateError as exc:
        raise SolverFailure(n_el, exc) from exc
    final = sol.copy(u)
    final.t = t
    err = float(l2_error(final, manufactured_state, t)[0])
    log.info("convergence n_el=%d steps=%d error=%.3e", n_el, steps, err)
    return err


def eoc_table(n_els, errors) -> List[EocRow]:
    rows = []
    for k, (n, e) in enumerate(zip(n_els, errors)):
        eoc = None
        if k > 0:
            ratio = n / n_els[k - 1]
            eoc = math.log(errors[k - 1] / e) / math.log(ratio)
        rows.append(EocRow(n, e, eoc))
    return rows


def _sweep(func, cfg: RunConfig):
    if cfg.jobs > 1 and len(cfg.mesh) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(func, [cfg] * len(cfg.mesh), cfg.mesh))
    return [func(cfg, n) for n in cfg.mesh]


def run_convergence(cfg: RunConfig) -> List[EocRow]:
    if cfg.experiment != "convergence":
        raise ConfigError("run_convergence needs experiment=convergence")
    errors = _sweep(convergence_error, cfg)
    return eoc_table(cfg.mesh, errors)


def entropy_history(cfg: RunConfig, n_el: int):
    """``IS_t`` at every step of a discontinuous-IC run; returns ``(times, values)``."""
    sol = _solver_setup(cfg, n_el, discontinuous_ic)
    vol, surf = FLUX_PAIRS[cfg.flux_choice]
    times, values = [], []

    def rhs(u, t):
        return dg_rhs(sol.copy(u), vol, surf)

    def timestep(u, t):
        return cfl_timestep(sol.copy(u), cfg.cfl)

    def record(u, t, step):
        s = sol.copy(u)
        times.append(t)
        values.append(entropy_residual(s, dg_residual(s, vol, surf)))

    try:
        integrate(sol.u, rhs, 0.0, cfg.final_time, timestep, callback=record)
    except InadmissibleStateError as exc:
        raise SolverFailure(n_el, exc) from exc
    return np.array(times), np.array(values)


def entropy_row(cfg: RunConfig, n_el: int) -> EntropyRow:
    _, ist = entropy_history(cfg, n_el)
    log.info("entropy n_el=%d max|IS_t|=%.3e", n_el, np.max(np.abs(ist)))
    return EntropyRow(n_el, float(np.max(np.abs(ist))), float(np.max(ist)), len(ist) - 1)


def run_entropy(cfg: RunConfig) -> List[EntropyRow]:
    if cfg.experiment != "entropy":
        raise ConfigError("run_entropy needs experiment=entropy")
    return _sweep(entropy_row, cfg)


def run(cfg: RunConfig):
    if cfg.experiment == "convergence":
        return run_convergence(cfg)
    return run_entropy(cfg)


# -- output ------------------------------------------------------------------


def _sci(v):
    return "" if v is None else f"{v:.15e}"


def write_csv(rows, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if rows and isinstance(rows[0], EocRow):
            writer.writerow(["n_el", "error", "eoc"])
            for r in rows:
                writer.writerow([r.n_el, _sci(r.error), _sci(r.eoc)])
        else:
            writer.writerow(["n_el", "max_abs_ISt"])
            for r in rows:
                writer.writerow([r.n_el, _sci(r.max_abs_ist)])


def format_table(rows, cfg: RunConfig) -> str:
    head = f"{cfg.experiment}: {cfg.equation_of_state()}, N={cfg.n}, flux={cfg.flux_choice}"
    lines = [head]
    if rows and isinstance(rows[0], EocRow):
        lines.append(f"{'N_el':>6}  {'L2 error of rho':>15}  {'EOC':>5}")
        for r in rows:
            eoc = "---" if r.eoc is None else f"{r.eoc:.1f}"
            lines.append(f"{r.n_el:>6}  {r.error:>15.1E}  {eoc:>5}")
    else:
        lines.append(f"{'N_el':>6}  {'max |IS_t|':>12}")
        for r in rows:
            lines.append(f"{r.n_el:>6}  {r.max_abs_ist:>12.1E}")
    return "\n".join(lines)


__all__ = [
    "ConfigError",
    "EntropyRow",
    "EocRow",
    "RunConfig",
    "SolverFailure",
    "convergence_error",
    "discontinuous_ic",
    "entropy_history",
    "eoc_table",
    "format_table",
    "make_config",
    "manufactured_source",
    "manufactured_state",
    "read_config_file",
    "run",
    "run_convergence",
    "run_entropy",
    "write_csv",
]
