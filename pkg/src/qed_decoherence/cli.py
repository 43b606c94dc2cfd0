"""Command-line front end.

    qed-decoherence <command> [--config FILE] [--key value ...] [--out PATH]

Commands: scan (time series of every observable), figure (data grids behind
the four standard plots), timescales (characteristic-time table), verify
(oracle suite; exit code is the acceptance authority), rho (density-matrix
grid at one time).

CSV output is deterministic: UTF-8, comma separated, one header row, `#`
comment lines carrying the fully resolved configuration, scientific notation
with a configurable number of significant figures. Exit codes: 0 ok, 1 usage,
2 domain error, 3 verification failure, 4 I/O.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import config as cfg
from . import densmat, field, observables, oracle
from .decoherence import DecoherenceFactors, log_sinhc, log_sqrt_one_plus_sq
from .densmat import GaussianPacket
from .params import DomainError, ModelParams, validity_bound, validity_window

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VERIFY = 3
EXIT_IO = 4

FIG3_ALPHA = 150.0   # coupling for the fig3 parameter set: tau_vac = e^pi / Omega


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """One resolved CLI invocation: physical parameters, command, time grid,
    output destination, and CSV precision."""

    params: ModelParams
    command: str
    resolved: dict
    out: str | None = None
    sigfigs: int = 12
    t_min_s: float | None = None
    t_max_s: float | None = None
    t_points: int = 61
    t_scale: str = "log"
    # per-command extras
    which: str | None = None
    plot_script: str | None = None
    rep: str = "p"
    t_s: float | None = None
    points: int = 41
    span: float = 4.0

    def __post_init__(self):
        if self.sigfigs < 2:
            raise DomainError("sigfigs must be >= 2")
        if self.t_points < 2:
            raise DomainError("t-points must be >= 2")
        for bound in (self.t_min_s, self.t_max_s):
            if bound is not None and bound <= 0.0:
                raise DomainError("t-grid bounds must be positive")

    @classmethod
    def from_args(cls, params: ModelParams, resolved: dict, args) -> "RunConfig":
        fields = ("out", "sigfigs", "t_min_s", "t_max_s", "t_points", "t_scale",
                  "which", "plot_script", "rep", "t_s", "points", "span")
        kw = {f: getattr(args, f) for f in fields if getattr(args, f, None) is not None}
        return cls(params=params, command=args.command, resolved=resolved, **kw)


def _fmt(value, sigfigs: int) -> str:
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if isinstance(value, str):
        return value
    v = float(value)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.{sigfigs - 1}e}"


def write_csv(out, comments: list[str], header: list[str], rows, sigfigs: int) -> None:
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v, sigfigs) for v in row))
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _time_grid(config: RunConfig) -> np.ndarray:
    params = config.params
    t_min = config.t_min_s if config.t_min_s is not None else params.seconds(1e-3)
    t_max = config.t_max_s if config.t_max_s is not None else params.seconds(1e6)
    if not t_max > t_min:
        raise DomainError("need 0 < t-min-s < t-max-s")
    if config.t_scale == "log":
        return np.geomspace(t_min, t_max, config.t_points)
    return np.linspace(t_min, t_max, config.t_points)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

SCAN_COLUMNS = [
    "t_s", "t_omega", "gamma_vac", "gamma_th", "gamma", "phi", "delta_p", "l_p",
    "s_lin", "mean_q", "mean_v", "delta_m_over_m0", "delta_r", "delta_r_free",
    "l_r", "n_photons", "e_field", "valid",
]

SCAN_UNITS = (
    "units: t_s [s]; t_omega [Omega t]; gamma_*, phi [1/(m0 c)^2]; delta_p, l_p "
    "[m0 c]; mean_q [m]; mean_v [m/s]; delta_r*, l_r [m]; n_photons at p_bar = "
    "|p0|; e_field (mean cloud energy) [J]; valid = t <= min(tau_d, tau_0)"
)


def cmd_scan(config: RunConfig) -> int:
    params = config.params
    t_grid = _time_grid(config)
    bound = validity_bound(params)
    p_bar = params.p0_mag
    rows = []
    for t in t_grid:
        f = DecoherenceFactors.at_time(params, float(t))
        s = observables.snapshot(params, float(t))
        rows.append([
            t, f.t, f.gamma_vac, f.gamma_th, f.gamma, f.phi,
            s.delta_p_t, s.l_p, s.s_lin, s.mean_q[0], s.mean_v[0],
            s.delta_m / params.mass0, s.delta_r_t, s.delta_r_free, s.l_r,
            field.mean_photon_number(params, p_bar, float(t)),
            field.mean_field_energy(params, p_bar, float(t)),
            int(t <= bound),
        ])
    comments = ["qed-decoherence scan", SCAN_UNITS,
                *cfg.provenance_lines(config.resolved)]
    write_csv(config.out, comments, SCAN_COLUMNS, rows, config.sigfigs)
    return EXIT_OK


_FIG_ALPHAS = (1.0, 10.0, 30.0, 100.0, 300.0, 1000.0)
_FIG_ZETAS = (1e-4, 1e-3, 1e-2, 1e-1, 1.0)


def _figure_rows(which: str, params: ModelParams, user_set: frozenset[str]):
    """Figure data grids; each figure's standard parameters act as defaults
    that explicit config/CLI settings override."""
    taus = np.geomspace(1e-3, 1e6, 181)
    if which == "fig1":
        # vacuum vs thermal decoherence exponents as a function of zeta, T = 300 K
        p1 = params if "temperature_K" in user_set else params.with_overrides(
            temperature=300.0)
        header = ["t_s", "t_omega", "zeta", "gamma_vac_pp", "gamma_th_pp"]
        rows = []
        for zeta in _FIG_ZETAS:
            for tau in taus:
                x = math.pi * tau / p1.theta
                rows.append([p1.seconds(tau), tau, zeta,
                             zeta * log_sqrt_one_plus_sq(tau), zeta * log_sinhc(x)])
        return header, rows, p1
    if which == "fig2":
        # vacuum suppression vs time and coupling at |p - p'| = 0.1 m0 c
        header = ["t_omega", "alpha", "exp_neg_gamma_vac_pp"]
        dp2 = (params.delta_p if "delta_p_over_m0c" in user_set else 0.1) ** 2
        rows = []
        for a in _FIG_ALPHAS:
            scale = 2.0 * a / (3.0 * math.pi) * dp2
            for tau in taus:
                rows.append([tau, a, math.exp(-scale * log_sqrt_one_plus_sq(tau))])
        return header, rows, params
    if which == "fig3":
        overrides = {}
        if "alpha" not in user_set:
            overrides["alpha"] = FIG3_ALPHA
        if "p0_over_m0c" not in user_set:
            overrides["p0"] = (0.0, 0.0, 0.0)
            overrides["v0"] = None
        if "delta_p_over_m0c" not in user_set:
            overrides["delta_p"] = 0.1
        p3 = params.with_overrides(**overrides) if overrides else params
        packet = GaussianPacket.from_params(p3, dims=1)
        t_dec = oracle.fig3_time(p3)
        grid = np.linspace(p3.p0[0] - 4.0 * packet.delta_p,
                           p3.p0[0] + 4.0 * packet.delta_p, 81)
        header = ["t_label", "t_s", "p_over_m0c", "p_prime_over_m0c", "rho_abs_normalized"]
        rows = []
        for label, t in (("initial", 0.0), ("3tau_vac", t_dec)):
            f = DecoherenceFactors.at_time(p3, t)
            m = np.abs(densmat.rho_p_matrix(grid, packet, f)) / packet.norm
            for i, p in enumerate(grid):
                for j, pp in enumerate(grid):
                    rows.append([label, t, p, pp, m[i, j]])
        return header, rows, p3
    if which == "fig4":
        header = ["t_s", "t_omega", "alpha", "s_lin"]
        rows = []
        for a in _FIG_ALPHAS:
            pa = params.with_overrides(alpha=a)
            for tau in taus:
                rows.append([pa.seconds(tau), tau, a,
                             observables.linear_entropy(pa, pa.seconds(tau))])
        return header, rows, params
    raise DomainError(f"unknown figure id {which!r} (expected fig1|fig2|fig3|fig4)")


_PLOT_SCRIPT = """\
#!/usr/bin/env python3
# Generic plotting sidecar: reads only the CSV written next to it.
import sys
import matplotlib.pyplot as plt
import numpy as np

path = sys.argv[1] if len(sys.argv) > 1 else {csv!r}
rows = np.genfromtxt(path, delimiter=",", names=True, comments="#", dtype=None,
                     encoding="utf-8")
names = rows.dtype.names
x = rows[names[1]] if names[0].endswith("label") or names[0] == "t_s" else rows[names[0]]
y = rows[names[-1]]
plt.figure()
try:
    plt.xscale("log")
except Exception:
    pass
plt.plot(np.asarray(x, dtype=float), np.asarray(y, dtype=float), ".", ms=2)
plt.xlabel(names[1])
plt.ylabel(names[-1])
plt.title(path)
plt.tight_layout()
plt.show()
"""


def cmd_figure(config: RunConfig) -> int:
    user_set = frozenset(k for k in cfg.CONFIG_KEYS
                         if config.resolved.get(k) != cfg.DEFAULTS[k])
    header, rows, used = _figure_rows(config.which, config.params, user_set)
    comments = [f"qed-decoherence figure {config.which}",
                f"alpha = {used.alpha!r}, omega_cut_rad_s = {used.omega_cut!r}, "
                f"temperature_K = {used.temperature!r}, delta_p_over_m0c = {used.delta_p!r}",
                *cfg.provenance_lines(config.resolved)]
    write_csv(config.out, comments, header, rows, config.sigfigs)
    if config.plot_script is not None:
        csv_name = str(config.out) if config.out else "figure.csv"
        Path(config.plot_script).write_text(_PLOT_SCRIPT.format(csv=csv_name),
                                            encoding="utf-8")
    return EXIT_OK


def cmd_timescales(config: RunConfig) -> int:
    params = config.params
    ts = validity_window(params)
    rows = [
        ("tau_F (thermal time)", ts.tau_F),
        ("tau_0 (dipole bound)", ts.tau_0),
        ("tau_d (spreading bound)", ts.tau_d),
        ("tau_p (vac->thermal crossover, exact)", ts.tau_p),
        ("tau_p (root of ln(Omega t) = t/tau_F)", ts.tau_p_log_eq),
        ("tau_vac (at dp = delta_p)", ts.tau_vac),
        ("tau_th (at dp = delta_p)", ts.tau_th),
    ]
    lines = [f"{'quantity':44s} {'seconds':>16s} {'Omega t':>16s}"]
    for name, val in rows:
        tau = val * params.omega_cut if math.isfinite(val) else val
        lines.append(f"{name:44s} {_fmt(val, 8):>16s} {_fmt(tau, 8):>16s}")
    if math.isinf(ts.tau_vac) and math.isfinite(ts.tau_vac_log):
        lines.append(f"{'  ln(tau_vac / s) (overflow-safe)':44s} "
                     f"{_fmt(ts.tau_vac_log, 8):>16s} {'':>16s}")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if config.out:
        write_csv(config.out,
                  ["qed-decoherence timescales", *cfg.provenance_lines(config.resolved)],
                  ["quantity", "seconds", "t_omega"],
                  [[n, v, v * params.omega_cut if math.isfinite(v) else math.inf]
                   for n, v in rows], config.sigfigs)
    return EXIT_OK


def verification_reports(params: ModelParams, n_points: int = 25):
    """The standard verification sweep: log grid Omega t in [1e-3, 1e6] at the
    caller's parameters, plus the transform oracle at the fixed fig3 reference
    set (the transform grid resolution is tuned to that set; the frequency
    oracles are what track the caller's configuration)."""
    t_grid = [params.seconds(tau) for tau in np.geomspace(1e-3, 1e6, n_points)]
    fig3_params = cfg.build_params(dict(cfg.DEFAULTS)).with_overrides(
        alpha=FIG3_ALPHA, p0=(0.0, 0.0, 0.0), delta_p=0.1, v0=None)
    return oracle.run_all(params, t_grid, include_transform=True,
                          transform_params=fig3_params)


def cmd_verify(config: RunConfig) -> int:
    reports = verification_reports(config.params)
    width = max(len(r.quantity) for r in reports)
    sys.stdout.write(f"{'quantity':{width}s}  {'closed':>14s}  {'oracle':>14s}  "
                     f"{'rel_err':>10s}  {'tol':>8s}  result\n")
    for r in reports:
        sys.stdout.write(
            f"{r.quantity:{width}s}  {_fmt(r.closed_form, 7):>14s}  "
            f"{_fmt(r.oracle, 7):>14s}  {_fmt(r.rel_err, 3):>10s}  "
            f"{_fmt(r.tolerance, 2):>8s}  {'PASS' if r.passed else 'FAIL'}"
            + (f"  [{r.detail}]" if r.detail and not r.passed else "") + "\n"
        )
    failed = [r.quantity for r in reports if not r.passed]
    if config.out:
        write_csv(config.out,
                  ["qed-decoherence verify", *cfg.provenance_lines(config.resolved)],
                  ["quantity", "closed_form", "oracle", "abs_err", "rel_err",
                   "tolerance", "panels", "passed", "detail"],
                  [[r.quantity, r.closed_form, r.oracle, r.abs_err, r.rel_err,
                    r.tolerance, r.panels, int(r.passed), r.detail] for r in reports],
                  config.sigfigs)
    if failed:
        sys.stdout.write(f"FAILED: {', '.join(failed)}\n")
        return EXIT_VERIFY
    sys.stdout.write("all oracle checks passed\n")
    return EXIT_OK


def cmd_rho(config: RunConfig) -> int:
    params = config.params
    if config.t_s is None:
        raise DomainError("rho requires --t-s")
    packet = GaussianPacket.from_params(params, dims=1)
    factors = DecoherenceFactors.at_time(params, config.t_s)
    n = config.points
    if config.rep == "p":
        half = config.span * packet.delta_p
        grid = np.linspace(packet.p0[0] - half, packet.p0[0] + half, n)
        matrix = densmat.rho_p_matrix(grid, packet, factors)
        a_name, b_name = "p_over_m0c", "p_prime_over_m0c"
    else:
        w = densmat.width_t(packet, factors)
        center = float(densmat.mean_displacement_vec(packet, factors)[0])
        half = config.span * w / math.sqrt(3.0)
        grid = np.linspace(center - half, center + half, n)
        matrix = densmat.rho_r_matrix(grid, packet, factors)
        a_name, b_name = "q_mc_over_hbar", "q_prime_mc_over_hbar"
    rows = []
    for i, a in enumerate(grid):
        for j, b in enumerate(grid):
            v = matrix[i, j]
            rows.append([config.t_s, a, b, v.real, v.imag, abs(v)])
    comments = [f"qed-decoherence rho --rep {config.rep} --t-s {config.t_s!r}",
                "momentum in m0 c, displacement in hbar/(m0 c)",
                *cfg.provenance_lines(config.resolved)]
    write_csv(config.out, comments, ["t_s", a_name, b_name, "re", "im", "abs"],
              rows, config.sigfigs)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="qed-decoherence",
                     description="Decoherence dynamics of a charged Gaussian wave "
                                 "packet in the thermal electromagnetic field.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", type=str, default=None, help="key=value config file")
        p.add_argument("--out", type=str, default=None, help="output CSV path")
        p.add_argument("--sigfigs", type=int, default=12,
                       help="significant figures in CSV output")
        for key in cfg.CONFIG_KEYS:
            p.add_argument(f"--{key.replace('_', '-')}", dest=key, type=float,
                           default=None, help=f"override {key}")

    p_scan = sub.add_parser("scan", help="time series of all closed-form quantities")
    add_common(p_scan)
    p_scan.add_argument("--t-min-s", type=float, default=None)
    p_scan.add_argument("--t-max-s", type=float, default=None)
    p_scan.add_argument("--t-points", type=int, default=61)
    p_scan.add_argument("--t-scale", choices=("log", "linear"), default="log")

    p_fig = sub.add_parser("figure", help="data grid behind a standard figure")
    p_fig.add_argument("which", choices=("fig1", "fig2", "fig3", "fig4"))
    add_common(p_fig)
    p_fig.add_argument("--plot-script", type=str, default=None,
                       help="optionally write a matplotlib sidecar script here")

    p_ts = sub.add_parser("timescales", help="characteristic-time table")
    add_common(p_ts)

    p_ver = sub.add_parser("verify", help="run every oracle against its closed form")
    add_common(p_ver)

    p_rho = sub.add_parser("rho", help="density-matrix grid at one time")
    add_common(p_rho)
    p_rho.add_argument("--rep", choices=("p", "r"), default="p")
    p_rho.add_argument("--t-s", type=float, required=True, help="time in seconds")
    p_rho.add_argument("--points", type=int, default=41)
    p_rho.add_argument("--span", type=float, default=4.0,
                       help="half-width in packet widths")

    return parser


_COMMANDS = {
    "scan": cmd_scan,
    "figure": cmd_figure,
    "timescales": cmd_timescales,
    "verify": cmd_verify,
    "rho": cmd_rho,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    try:
        overrides = {key: getattr(args, key) for key in cfg.CONFIG_KEYS}
        resolved = cfg.resolve(args.config, overrides)
        params = cfg.build_params(resolved)
        config = RunConfig.from_args(params, resolved, args)
        return _COMMANDS[config.command](config)
    except DomainError as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
