"""Scenario evaluation and the CSV / plot-script / report writers."""
from __future__ import annotations

import os
import sys
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..ermakov import WeakModBranch, weakmod_amplitude_squared
from ..geometry import (
    ParabolicSlit,
    ParaxialWarning,
    RectAperture,
    ShiftedPair,
    parabolic_amplitude_sq,
    parabolic_phase,
    parabolic_wavefunction,
    rect_wavefunction,
    shifted_diff,
    shifted_sum,
)
from ..moddiff import BranchPair, decompose_pair, integrate_difference
from ..phase import phase_profile, wavefunction_direct
from ..spectral import bessel_j, decompose, truncation_order
from .config import ScenarioConfig
from .report import emit_report
from .verify import run_checks

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_CONFIG = 2
EXIT_IO = 3

MIN_SLIT_ORDER = 8


@dataclass
class Table:
    """Column names plus equal-length columns; ``flags`` lists validity failures."""

    columns: list[str]
    data: list[np.ndarray]
    flags: list[str] = field(default_factory=list)
    plots: list[tuple[int, int]] = field(default_factory=list)
    surface: bool = False


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def format_csv(table: Table) -> str:
    lines = [",".join(table.columns)]
    for row in zip(*table.data):
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def format_plot_script(table: Table, csv_name: str, title: str) -> str:
    """gnuplot-style script drawing the table's default column pairs on one canvas."""
    lines = [
        f"# plot script for {csv_name}",
        'set datafile separator ","',
        "set key autotitle columnhead",
        f'set title "{title}"',
        f'set xlabel "{table.columns[0]}"',
    ]
    if table.surface:
        lines.append(f'splot "{csv_name}" using 1:2:5 with pm3d')
    else:
        parts = [f'"{csv_name}" using {a}:{b} with lines' if j == 0
                 else f'"" using {a}:{b} with lines'
                 for j, (a, b) in enumerate(table.plots)]
        lines.append("plot " + ", \\\n     ".join(parts))
    return "\n".join(lines) + "\n"


def _branch(cfg: ScenarioConfig) -> WeakModBranch:
    p = cfg.params
    negative = bool(p.get("negative_current", False))
    return WeakModBranch.from_constraint(float(p["A"]), float(p["eps"]), float(p["k"]),
                                         S0=float(p.get("S0", 0.0)), hbar=cfg.constants.hbar,
                                         negative_current=negative)


def branch_table(cfg: ScenarioConfig) -> Table:
    b = _branch(cfg)
    x = cfg.grid.samples
    exact = phase_profile(b, cfg.grid, "exact-quadrature", cfg.quad_tol).S_values
    first = phase_profile(b, cfg.grid, "first-order").S_values
    psi = wavefunction_direct(b, x)
    return Table(["x", "R2", "S_exact", "S_first_order", "re_psi", "im_psi"],
                 [x, weakmod_amplitude_squared(b, x), exact, first, psi.real, psi.imag],
                 plots=[(1, 2), (1, 3), (1, 4)])


def spectrum_table(cfg: ScenarioConfig) -> Table:
    d = decompose(_branch(cfg), cfg.tol)
    return Table(["n", "C_n", "abs2_C_n"], [d.orders, d.coeffs, d.coeffs ** 2],
                 plots=[(1, 2), (1, 3)])


def difference_table(cfg: ScenarioConfig) -> Table:
    p = cfg.params
    pair = BranchPair(float(p["E1"]), float(p["E2"]), float(p["C1"]), float(p["C2"]),
                      float(p["k1"]), float(p["k2"]), cfg.constants)
    C = p.get("C")
    params = decompose_pair(pair, float(p["A"]), float(p["eps"]),
                            None if C is None else float(C))
    sol = integrate_difference(params, float(p["rho0"]), float(p["rho0_prime"]), cfg.grid)
    return Table(["x", "rho", "rho_prime", "dS"],
                 [cfg.grid.samples, sol.rho, sol.rho_prime, sol.dS],
                 flags=list(sol.flags), plots=[(1, 2), (1, 4)])


def shifted_table(cfg: ScenarioConfig) -> Table:
    pair = ShiftedPair(decompose(_branch(cfg), cfg.tol), float(cfg.params["a"]))
    x = cfg.grid.samples
    Psi, Chi = shifted_sum(pair, x), shifted_diff(pair, x)
    return Table(["x", "re_Psi", "im_Psi", "re_X", "im_X", "abs2_Psi", "abs2_X"],
                 [x, Psi.real, Psi.imag, Chi.real, Chi.imag, np.abs(Psi) ** 2, np.abs(Chi) ** 2],
                 plots=[(1, 6), (1, 7)])


def aperture_table(cfg: ScenarioConfig) -> Table:
    p = cfg.params
    ap = RectAperture(float(p["L"]), int(p["u"]), int(p["v"]), float(p["eps_x"]),
                      float(p["eps_y"]),
                      None if p.get("A_x") is None else float(p["A_x"]),
                      None if p.get("A_y") is None else float(p["A_y"]),
                      cfg.constants)
    gx = cfg.grid.samples
    gy = (cfg.grid_y or cfg.grid).samples
    X, Y = np.meshgrid(gx, gy, indexing="ij")
    psi = rect_wavefunction(ap, X, Y, cfg.tol).ravel()
    return Table(["x", "y", "re_psi", "im_psi", "intensity"],
                 [X.ravel(), Y.ravel(), psi.real, psi.imag, np.abs(psi) ** 2],
                 surface=True)


def slit_table(cfg: ScenarioConfig) -> Table:
    p = cfg.params
    eps = float(p["eps_kx"])
    N = p.get("N")
    if N is None:
        N = max(MIN_SLIT_ORDER, truncation_order(lambda n: bessel_j(n, 0.25 * eps), cfg.tol))
    slit = ParabolicSlit(float(p["R_curv"]), float(p["k_x"]), float(p["k_y"]),
                         float(p["A_kx"]), eps, int(N), cfg.constants.hbar)
    x = cfg.grid.samples
    flags = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ParaxialWarning)
        R2 = parabolic_amplitude_sq(slit, x)
        S = parabolic_phase(slit, x)
        psi = parabolic_wavefunction(slit, x)
    if any(issubclass(w.category, ParaxialWarning) for w in caught):
        flags.append("paraxial-window")
    return Table(["x", "R2_eff", "S_eff", "re_psi_eff", "im_psi_eff", "intensity"],
                 [x, R2, S, psi.real, psi.imag, np.abs(psi) ** 2],
                 flags=flags, plots=[(1, 2), (1, 6)])


BUILDERS = {
    "branch": branch_table,
    "spectrum": spectrum_table,
    "difference": difference_table,
    "shifted": shifted_table,
    "aperture": aperture_table,
    "slit": slit_table,
}


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def run_scenario(cfg: ScenarioConfig, prefix: str, quiet: bool = False) -> int:
    """Evaluate ``cfg`` and write ``<prefix>.csv`` and ``<prefix>.plot``.

    ``verify`` writes ``<prefix>.report.txt`` instead. Returns the exit status:
    0 on success, 1 when a validity flag or check fails, 3 when an output
    file cannot be written.
    """
    if cfg.kind == "verify":
        report = run_checks(cfg.tol)
        text = emit_report(report)
        try:
            _write(prefix + ".report.txt", text)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return EXIT_IO
        if not quiet:
            sys.stdout.write(text)
        return EXIT_OK if report.passed else EXIT_NUMERIC

    table = BUILDERS[cfg.kind](cfg)
    csv_name = os.path.basename(prefix) + ".csv"
    try:
        _write(prefix + ".csv", format_csv(table))
        _write(prefix + ".plot", format_plot_script(table, csv_name, cfg.kind))
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    if table.flags:
        print(f"validity flags raised: {', '.join(table.flags)}", file=sys.stderr)
        return EXIT_NUMERIC
    if not quiet:
        print(f"wrote {prefix}.csv and {prefix}.plot")
    return EXIT_OK
