"""Independent numerical verification of every closed form.

Each analytic result in decoherence/field/densmat has exactly one oracle
counterpart here: adaptive quadrature of the defining frequency integral
(in cutoff units w = omega/Omega, tau = Omega t, theta = hbar Omega/k_B T),
or, for the coordinate-space density matrix, a direct double Fourier
transform evaluated as plain trapezoid double sums so the phase conventions
stay manifestly identical to the analytic transform.

The oracles never call the closed forms they check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import decoherence, densmat, field as fieldmod, observables
from .decoherence import DecoherenceFactors
from .densmat import GaussianPacket
from .params import DomainError, ModelParams
from .quadrature import (
    QuadratureError,
    QuadratureSpec,
    QuadResult,
    adaptive,
    oscillatory,
    trapezoid_weights,
)

DEFAULT_SPEC = QuadratureSpec()


class GridResolutionError(RuntimeError):
    """Transform grid failed the doubling-stability detector."""


# ---------------------------------------------------------------------------
# integrands (cutoff units, vectorized over node arrays)
# ---------------------------------------------------------------------------

def _one_minus_cos(x):
    """1 - cos(x) as 2 sin^2(x/2): no cancellation at small x, exact recurrence zeros."""
    return 2.0 * np.sin(0.5 * x) ** 2


def _cothm1(x):
    """coth(x) - 1 = 2/(e^{2x} - 1) for x > 0; 0 at x = +inf."""
    with np.errstate(over="ignore"):
        return 2.0 / np.expm1(2.0 * np.asarray(x, dtype=float))


def small_omega_series(kind: str, ell: float, tau: float, theta: float = math.inf) -> float:
    """Leading behavior of each integrand on [0, ell], ell << min(1/tau, 1/theta, 1).

    vac / photon:  integrand e^-w (1-cos w tau)/w ~ w tau^2/2 (1 - w):
                   tau^2 ell^2/4 - tau^2 ell^3/6
    phase:         e^-w (w tau - sin w tau)/w ~ w^2 tau^3/6 (1 - w):
                   tau^3 ell^3/18 - tau^3 ell^4/24
    thermal:       extra factor coth(theta w/2) - 1 ~ 2/(theta w) - 1:
                   tau^2 ell/theta - (tau^2/2 + tau^2/theta) ell^2/2
    total:         vac + thermal (coth = 1 + (coth - 1), exact split)
    field:         e^-w (1-cos w tau) ~ w^2 tau^2/2 (1 - w):
                   tau^2 ell^3/6 - tau^2 ell^4/8
    """
    t2 = tau * tau
    if kind in ("vac", "photon"):
        return t2 * ell * ell * (0.25 - ell / 6.0)
    if kind == "phase":
        return tau * t2 * ell**3 * (1.0 / 18.0 - ell / 24.0)
    if kind == "thermal":
        if math.isinf(theta):
            return 0.0
        return t2 * ell / theta - (0.5 * t2 + t2 / theta) * ell * ell / 2.0
    if kind == "total":
        return small_omega_series("vac", ell, tau) + small_omega_series(
            "thermal", ell, tau, theta
        )
    if kind == "field":
        return t2 * ell**3 * (1.0 / 6.0 - ell / 8.0)
    raise DomainError(f"unknown series kind {kind!r}")


def _geometric_breakpoints(a: float, b: float) -> tuple[float, ...]:
    """Decade points between a and b (pre-resolves widely separated scales)."""
    if a <= 0.0 or b <= a:
        return ()
    lo = math.ceil(math.log10(a))
    hi = math.floor(math.log10(b))
    return tuple(10.0**k for k in range(lo, hi + 1) if a < 10.0**k < b)


def _thermal_breakpoints(theta: float, a: float, b: float) -> tuple[float, ...]:
    if math.isinf(theta):
        return ()
    return tuple(p for p in (0.2 / theta, 2.0 / theta, 20.0 / theta, 200.0 / theta)
                 if a < p < b)


def _halfperiod_breakpoints(tau: float, a: float, b: float,
                            max_points: int = 80) -> tuple[float, ...]:
    """Panel boundaries at the oscillation half periods (used below the
    cycle-summation threshold, where a handful of periods still deserve
    aligned panels)."""
    if tau <= 2.0:
        return ()
    h = math.pi / tau
    return tuple(a + k * h for k in range(1, max_points) if a + k * h < b)


def _quad_one_minus_cos_over_w(tau: float, weight, theta: float,
                               kind: str, spec: QuadratureSpec) -> QuadResult:
    """integral_0^wmax dw e^-w weight(w) (1 - cos w tau)/w with the split policy.

    weight(w) is 1 (vacuum/photon), coth(theta w/2) - 1 (thermal), or
    coth(theta w/2) (total).
    """
    if tau <= 0.0:
        raise DomainError("oracle quadratures need t > 0")
    wmax = spec.cutoff_multiple
    ell = 1e-6 * min(1.0 / tau, 1.0 / theta if not math.isinf(theta) else 1.0, 1.0)
    head = QuadResult(value=small_omega_series(kind, ell, tau, theta), error=0.0, panels=0)

    def combined(w):
        return np.exp(-w) * weight(w) * _one_minus_cos(w * tau) / w

    def envelope(w):
        return np.exp(-w) * weight(w) / w

    if tau <= spec.oscillation_threshold:
        brk = (_geometric_breakpoints(ell, wmax) + _thermal_breakpoints(theta, ell, wmax)
               + _halfperiod_breakpoints(tau, ell, wmax) + (1.0, 5.0, 20.0))
        body = adaptive(combined, ell, wmax, spec, breakpoints=brk)
        result = head + body
    else:
        # combined form through the first ~10 periods (the 1/w envelope is too
        # steep there for clean cycle sums), then the 1 - cos split with
        # epsilon-accelerated cycle summation of the cosine part
        wc = min(1.0, 20.0 * math.pi / tau)
        brk_head = _geometric_breakpoints(ell, wc) + _thermal_breakpoints(theta, ell, wc)
        near = adaptive(combined, ell, wc, spec, breakpoints=brk_head)
        brk_body = _geometric_breakpoints(wc, wmax) + _thermal_breakpoints(theta, wc, wmax) + (
            1.0, 5.0, 20.0
        )
        smooth = adaptive(envelope, wc, wmax, spec, breakpoints=brk_body)
        osc = oscillatory(envelope, tau, wc, wmax, "cos", spec)
        result = head + near + smooth + (-osc)
    # analytic bound on the discarded tail, never added to the value
    if kind in ("vac", "photon"):
        tail_weight = 1.0
    else:
        tail_weight = float(np.max(np.abs(np.atleast_1d(weight(np.array([wmax]))))))
    result.tail_bound = 2.0 * tail_weight * math.exp(-wmax) / wmax
    return result


def quad_gamma_vac(tau: float, spec: QuadratureSpec = DEFAULT_SPEC) -> QuadResult:
    """integral dw e^-w (1-cos w tau)/w; closed form ln sqrt(1 + tau^2)."""
    return _quad_one_minus_cos_over_w(tau, lambda w: 1.0, math.inf, "vac", spec)


def quad_photon(tau: float, spec: QuadratureSpec = DEFAULT_SPEC) -> QuadResult:
    """Same frequency integral as the vacuum factor; closed form ln(1 + tau^2)/2."""
    return _quad_one_minus_cos_over_w(tau, lambda w: 1.0, math.inf, "photon", spec)


def quad_gamma_th(tau: float, theta: float, spec: QuadratureSpec = DEFAULT_SPEC) -> QuadResult:
    """integral dw e^-w (coth(theta w/2) - 1)(1-cos w tau)/w, the full thermal
    integrand without the k_B T << hbar Omega simplification; compared against
    ln[sinh(x)/x] at x = pi tau / theta which is only that limit."""
    if theta <= 0.0:
        raise DomainError("theta must be positive (T > 0)")
    if math.isinf(theta):
        return QuadResult(0.0, 0.0, 0)
    return _quad_one_minus_cos_over_w(
        tau, lambda w: _cothm1(0.5 * theta * w), theta, "thermal", spec
    )


def quad_gamma_total(tau: float, theta: float, spec: QuadratureSpec = DEFAULT_SPEC) -> QuadResult:
    """Full spectral-density reconstruction: integral of J(w)(1-cos w tau)
    coth(theta w/2)/w^2 with the (p-p')^2 prefactor divided out."""
    if math.isinf(theta):
        return quad_gamma_vac(tau, spec)
    weight = lambda w: 1.0 + _cothm1(0.5 * theta * w)
    return _quad_one_minus_cos_over_w(tau, weight, theta, "total", spec)


def quad_phase(tau: float, spec: QuadratureSpec = DEFAULT_SPEC) -> QuadResult:
    """integral dw e^-w (w tau - sin w tau)/w; closed form tau - arctan tau."""
    if tau <= 0.0:
        raise DomainError("oracle quadratures need t > 0")
    wmax = spec.cutoff_multiple
    ell = 1e-6 * min(1.0 / tau, 1.0)
    head = QuadResult(small_omega_series("phase", ell, tau), 0.0, 0)

    def combined(w):
        wt = w * tau
        return np.exp(-w) * (wt - np.sin(wt)) / w

    if tau <= spec.oscillation_threshold:
        body = adaptive(combined, ell, wmax, spec,
                        breakpoints=_geometric_breakpoints(ell, wmax)
                        + _halfperiod_breakpoints(tau, ell, wmax) + (1.0, 5.0, 20.0))
        result = head + body
    else:
        wc = min(1.0, 20.0 * math.pi / tau)
        near = adaptive(combined, ell, wc, spec, breakpoints=_geometric_breakpoints(ell, wc))
        linear = adaptive(lambda w: tau * np.exp(-w), wc, wmax, spec,
                          breakpoints=(1.0, 5.0, 20.0))
        osc = oscillatory(lambda w: np.exp(-w) / w, tau, wc, wmax, "sin", spec)
        result = head + near + linear + (-osc)
    result.tail_bound = tau * math.exp(-wmax)
    return result


def quad_field_energy(tau: float, spec: QuadratureSpec = DEFAULT_SPEC) -> QuadResult:
    """integral dw e^-w (1-cos w tau); closed form tau^2/(1 + tau^2) (times Omega in SI)."""
    if tau <= 0.0:
        raise DomainError("oracle quadratures need t > 0")
    wmax = spec.cutoff_multiple

    def combined(w):
        return np.exp(-w) * _one_minus_cos(w * tau)

    if tau <= spec.oscillation_threshold:
        result = adaptive(combined, 0.0, wmax, spec,
                          breakpoints=_halfperiod_breakpoints(tau, 0.0, wmax)
                          + (1.0, 5.0, 20.0))
    else:
        smooth = adaptive(lambda w: np.exp(-w), 0.0, wmax, spec, breakpoints=(1.0, 5.0, 20.0))
        osc = oscillatory(lambda w: np.exp(-w), tau, 0.0, wmax, "cos", spec)
        result = smooth + (-osc)
    result.tail_bound = 2.0 * math.exp(-wmax)
    return result


def quad_photon_continuum(tau: float, v0: float = 0.0, n_angular: int = 40,
                          spec: QuadratureSpec = DEFAULT_SPEC) -> QuadResult:
    """Angular + frequency continuum sum of the per-mode occupation.

    (3/4) integral_-1^1 dmu (1-mu^2) K(tau (1 - v0 mu)) with K the photon
    frequency integral; the coupling geometry (1 - mu^2) is the polarization
    sum for p_bar along the motion. Reduces to the closed form at first order
    in v0 (the linear angular term integrates to zero), so v0 must be small
    for a tight comparison: residual O(v0^2).
    """
    if not 0.0 <= v0 < 1.0:
        raise DomainError("v0 must be in [0, 1)")
    mu, wts = np.polynomial.legendre.leggauss(n_angular)
    total = 0.0
    err = 0.0
    panels = 0
    for m, w in zip(mu, wts):
        inner = quad_photon(tau * (1.0 - v0 * m), spec)
        total += w * 0.75 * (1.0 - m * m) * inner.value
        err += w * 0.75 * (1.0 - m * m) * inner.error
        panels += inner.panels
    return QuadResult(value=total, error=abs(err), panels=panels)


# ---------------------------------------------------------------------------
# double Fourier transform oracle (1-D grids)
# ---------------------------------------------------------------------------

def fourier_rho_r(packet: GaussianPacket, factors: DecoherenceFactors,
                  p_grid: np.ndarray, q_grid: np.ndarray) -> np.ndarray:
    """rho_r(q, q') = (1/2 pi) sum_ij w_i w_j rho_p(p_i, p_j) e^{i(p_i r - p_j r')}.

    Plain trapezoid double sum (vectorized as matrix sandwiches, which changes
    nothing about the quadrature rule). q values are displacements; the
    absolute positions r = q + r0 carry the transform phases so the packet's
    own r0 phase cancels exactly as in the analytic calculation.
    """
    if packet.dims != 1:
        raise DomainError("transform oracle is 1-D")
    p = np.asarray(p_grid, dtype=float)
    rho = densmat.rho_p_matrix(p, packet, factors)
    w = trapezoid_weights(p)
    r = np.asarray(q_grid, dtype=float) + packet.r0[0]
    E = np.exp(1j * np.outer(r, p)) * w
    return (E @ rho @ E.conj().T) / (2.0 * math.pi)


def default_transform_grids(packet: GaussianPacket, factors: DecoherenceFactors,
                            n_p: int = 1024, n_q: int = 201,
                            p_halfspan_widths: float = 6.0) -> tuple[np.ndarray, np.ndarray]:
    """Grids per the oracle policy: p symmetric about p0 spanning >= 8 delta_p
    total (default 12), q centered on <q>_t within the packet's +-6 delta_r(t)."""
    p0 = packet.p0[0]
    p_grid = np.linspace(p0 - p_halfspan_widths * packet.delta_p,
                         p0 + p_halfspan_widths * packet.delta_p, n_p)
    center = float(densmat.mean_displacement_vec(packet, factors)[0])
    half = 10.0 * packet.d * math.sqrt(densmat.z_factor(packet, factors))  # = 5.77 delta_r(t)
    q_grid = np.linspace(center - half, center + half, n_q)
    return p_grid, q_grid


def transform_consistency(packet: GaussianPacket, factors: DecoherenceFactors,
                          n_p: int = 1024, n_q: int = 201,
                          stability_tol: float = 1e-7) -> dict:
    """Compare the transform oracle against the closed-form rho_r on a grid.

    Returns peak-relative max deviation plus the grid-doubling stability; the
    stability detector raises GridResolutionError when the quadrature grid is
    underresolved.
    """
    p_grid, q_grid = default_transform_grids(packet, factors, n_p=n_p, n_q=n_q)
    numeric = fourier_rho_r(packet, factors, p_grid, q_grid)
    p2 = np.linspace(p_grid[0], p_grid[-1], 2 * n_p)
    numeric2 = fourier_rho_r(packet, factors, p2, q_grid)
    peak = float(np.max(np.abs(numeric2)))
    stability = float(np.max(np.abs(numeric2 - numeric))) / peak
    if stability > stability_tol:
        raise GridResolutionError(
            f"transform unstable under grid doubling: {stability:.3g} > {stability_tol:g} "
            f"(n_p = {n_p}); refine the momentum grid"
        )
    closed = densmat.rho_r_matrix(q_grid, packet, factors)
    deviation = float(np.max(np.abs(numeric2 - closed))) / peak
    return {
        "max_deviation_over_peak": deviation,
        "stability_over_peak": stability,
        "peak": peak,
        "n_p": n_p,
        "n_q": n_q,
    }


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class OracleReport:
    """Per-quantity comparison record."""

    quantity: str
    closed_form: float
    oracle: float
    abs_err: float
    rel_err: float
    tolerance: float
    panels: int
    passed: bool
    detail: str = ""

    @classmethod
    def compare(cls, quantity: str, closed: float, oracle_val: float, tolerance: float,
                panels: int, detail: str = "", abs_floor: float = 1e-13) -> "OracleReport":
        abs_err = abs(closed - oracle_val)
        rel_err = abs_err / abs(closed) if closed != 0.0 else math.inf
        passed = abs_err <= max(tolerance * abs(closed), abs_floor)
        return cls(quantity, closed, oracle_val, abs_err,
                   rel_err if closed != 0.0 else abs_err, tolerance, panels, passed, detail)


# quantity -> (closed-form home, declared tolerance); coverage is asserted in tests
ORACLE_CHECKS = {
    "gamma_vac": ("decoherence.gamma_vac_factor", 1e-8),
    "gamma_th": ("decoherence.gamma_th_factor", 1e-3),
    "gamma_total_spectral": ("decoherence.spectral_density -> Gamma", 1e-6),
    "phase_xi": ("decoherence.xi / phase_factor interaction part", 1e-8),
    "photon_number": ("field.mean_photon_number", 1e-8),
    "photon_continuum": ("field.mode_occupation continuum sum", 1e-6),
    "field_energy": ("field.mean_field_energy", 1e-8),
    "factor2_identity": ("field.mean_photon_number = 2 Gamma_vac pbar^2", 1e-12),
    "field_mass_identity": ("field.mean_field_energy = (pbar^2/2m0)(2 dm/m0)", 1e-12),
    "rho_r_transform": ("densmat.rho_r", 1e-6),
}


def thermal_tolerance(theta: float, base: float) -> float:
    """Approximation-limited tolerance for the k_B T << hbar Omega closed forms.

    Their relative deviation from the full-coth integral scales like 10/theta
    (1e-3 at the theta = 1e4 anchor); below that the quadrature floor applies.
    The closed forms stop being meaningful references for theta < ~100, where
    the assumption itself is flagged.
    """
    if math.isinf(theta):
        return base
    return min(0.5, max(base, 10.0 / theta))


def _worst(reports: list[OracleReport]) -> OracleReport:
    worst = max(reports, key=lambda r: (not r.passed, r.rel_err if math.isfinite(r.rel_err) else r.abs_err))
    worst.passed = all(r.passed for r in reports)
    worst.panels = sum(r.panels for r in reports)
    return worst


def run_all(params: ModelParams, t_grid_seconds, spec: QuadratureSpec = DEFAULT_SPEC,
            include_transform: bool = False,
            transform_params: ModelParams | None = None) -> list[OracleReport]:
    """Every oracle against its closed form, aggregated to one worst-case
    report per quantity. Per-quantity failures are collected, never raised."""
    taus = [params.tau(float(t)) for t in t_grid_seconds]
    theta = params.theta
    scale = decoherence.coupling_scale(params.alpha)
    p_bar = params.p0_mag if params.p0_mag > 0.0 else params.delta_p
    reports: list[OracleReport] = []

    def gather(quantity, closed_fn, quad_fn, tol, grid, detail=""):
        rows = []
        for tau in grid:
            try:
                res = quad_fn(tau)
                rows.append(OracleReport.compare(
                    quantity, closed_fn(tau), res.value, tol, res.panels,
                    detail=detail or f"worst over {len(grid)}-point grid"))
            except (QuadratureError, DomainError) as exc:
                rows.append(OracleReport(quantity, math.nan, math.nan, math.inf,
                                         math.inf, tol, 0, False, f"error: {exc}"))
        reports.append(_worst(rows))

    gather("gamma_vac", decoherence.log_sqrt_one_plus_sq,
           lambda tau: quad_gamma_vac(tau, spec), ORACLE_CHECKS["gamma_vac"][1], taus)
    gather("phase_xi", decoherence.tau_minus_arctan,
           lambda tau: quad_phase(tau, spec), ORACLE_CHECKS["phase_xi"][1], taus)
    gather("photon_number", lambda tau: math.log1p(tau * tau) / 2.0,
           lambda tau: quad_photon(tau, spec), ORACLE_CHECKS["photon_number"][1], taus)
    gather("field_energy", decoherence.lorentz_weight,
           lambda tau: quad_field_energy(tau, spec), ORACLE_CHECKS["field_energy"][1], taus)
    if params.temperature > 0.0:
        gather("gamma_th",
               lambda tau: decoherence.log_sinhc(math.pi * tau / theta),
               lambda tau: quad_gamma_th(tau, theta, spec),
               thermal_tolerance(theta, 1e-7), taus,
               detail=f"k_BT << hbar Omega form at theta = {theta:.3g}")
        gather("gamma_total_spectral",
               lambda tau: decoherence.log_sqrt_one_plus_sq(tau)
               + decoherence.log_sinhc(math.pi * tau / theta),
               lambda tau: quad_gamma_total(tau, theta, spec),
               thermal_tolerance(theta, ORACLE_CHECKS["gamma_total_spectral"][1]), taus)
    else:
        gather("gamma_total_spectral", decoherence.log_sqrt_one_plus_sq,
               lambda tau: quad_gamma_total(tau, theta, spec),
               ORACLE_CHECKS["gamma_total_spectral"][1], taus,
               detail="T = 0: coth = 1 branch")

    # angular + frequency continuum: small v0 keeps the O(v0^2) residual
    # below the declared tolerance
    v0c = min(params.v0, 1e-4)
    cont_taus = taus[:: max(1, len(taus) // 5)]
    gather("photon_continuum", lambda tau: math.log1p(tau * tau) / 2.0,
           lambda tau: quad_photon_continuum(tau, v0c, spec=spec),
           ORACLE_CHECKS["photon_continuum"][1], cont_taus,
           detail=f"v0 = {v0c:g}, 40-node angular rule")

    # cross-module identity routes
    rows = []
    for t in t_grid_seconds:
        n = fieldmod.mean_photon_number(params, p_bar, float(t))
        rows.append(OracleReport.compare(
            "factor2_identity", n,
            2.0 * decoherence.gamma_vac_factor(params, float(t)) * p_bar**2,
            ORACLE_CHECKS["factor2_identity"][1], 0, detail=f"p_bar = {p_bar:g}"))
    reports.append(_worst(rows))
    rows = []
    for t in t_grid_seconds:
        ef = fieldmod.mean_field_energy(params, p_bar, float(t))
        kin = params.energy_si(0.5 * p_bar**2)
        ident = kin * 2.0 * observables.mass_shift(params, float(t)) / params.mass0
        rows.append(OracleReport.compare(
            "field_mass_identity", ef, ident,
            ORACLE_CHECKS["field_mass_identity"][1], 0))
    reports.append(_worst(rows))

    if include_transform:
        tp = transform_params if transform_params is not None else params
        reports.extend(transform_reports(tp, spec))
    return reports


def fig3_time(params: ModelParams) -> float:
    """t = 3 tau_vac at dp = delta_p, the decohered panel of the density-matrix figure."""
    from .params import vacuum_decoherence_time

    tau_vac, _ = vacuum_decoherence_time(params, params.delta_p)
    return 3.0 * tau_vac


def transform_reports(params: ModelParams, spec: QuadratureSpec = DEFAULT_SPEC,
                      n_p: int = 1024) -> list[OracleReport]:
    """Transform-consistency reports at t = 0 and t = 3 tau_vac."""
    packet = GaussianPacket.from_params(params, dims=1)
    out = []
    for label, t in (("t=0", 0.0), ("t=3tau_vac", fig3_time(params))):
        factors = DecoherenceFactors.at_time(params, t)
        try:
            res = transform_consistency(packet, factors, n_p=n_p)
            out.append(OracleReport(
                quantity="rho_r_transform", closed_form=0.0,
                oracle=res["max_deviation_over_peak"],
                abs_err=res["max_deviation_over_peak"],
                rel_err=res["max_deviation_over_peak"],
                tolerance=ORACLE_CHECKS["rho_r_transform"][1],
                panels=res["n_p"],
                passed=res["max_deviation_over_peak"] <= ORACLE_CHECKS["rho_r_transform"][1],
                detail=f"{label}: peak-relative deviation; stability "
                       f"{res['stability_over_peak']:.2e}",
            ))
        except GridResolutionError as exc:
            out.append(OracleReport("rho_r_transform", math.nan, math.nan, math.inf,
                                    math.inf, ORACLE_CHECKS["rho_r_transform"][1],
                                    n_p, False, f"{label}: {exc}"))
    return out
