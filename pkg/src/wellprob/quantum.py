"""Bound states of the wells and their momentum-space wavefunctions.

The linear well with walls is solved piecewise in Airy functions: on the
right half, psi(x) = C Ai((x - sigma)/rho) + D Bi((x - sigma)/rho) with
rho = (hbar^2 a / (2 m V0))^(1/3) and sigma = E a / V0.  Parity fixes the
condition at the origin (psi = 0 for odd states, psi' = 0 for even states)
and the infinite wall requires psi(a) = 0; eigenvalues are the zeros of the
resulting 2x2 determinant, a cross product of Airy functions.  Only the
regime E > V0 is supported, where both Airy arguments stay in the
oscillatory range.

Momentum-space wavefunctions come from the +i kernel Fourier transform
phi(p) = (2 pi hbar)^(-1/2) int psi(x) exp(+i p x / hbar) dx, evaluated
with a piecewise-quadratic Filon rule whose accuracy is independent of p.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .airy import airy_eval_many
from .classical import DensityCurve, half_period
from .errors import NumericalError, RegimeError, ResolutionError
from .model import PotentialKind, PotentialSpec

_EIGEN_RESIDUAL_TOL = 1e-6  # envelope-normalized determinant at accepted E
_BISECT_ITERS = 64
_SCAN_STEPS_PER_LEVEL = 5  # scan resolution relative to the local spacing pi hbar / tau


class SkippedRootWarning(UserWarning):
    """Bracket scan may have missed eigenvalues (count vs phase-space estimate)."""


@dataclass(frozen=True)
class AiryScales:
    """Length scales of the linear-well solution: rho (Airy unit) and
    sigma = E a / V0 (where the extended ramp would reach the energy)."""

    rho: float
    sigma: float

    @classmethod
    def from_spec(cls, spec: PotentialSpec, energy: float) -> "AiryScales":
        c = spec.constants
        rho = (c.hbar ** 2 * spec.a / (2.0 * c.mass * spec.v0)) ** (1.0 / 3.0)
        return cls(rho=rho, sigma=energy * spec.a / spec.v0)


@dataclass(frozen=True)
class Eigenstate:
    parity: str  # "even" | "odd"
    index: int
    energy: float
    grid: np.ndarray
    psi: np.ndarray
    norm_constant: float
    source: str  # "airy_piecewise" | "infinite_well_analytic"
    spec: PotentialSpec


@dataclass(frozen=True)
class EigenLevel:
    energy: float
    parity: str
    index: int
    residual: float


@dataclass(frozen=True)
class MomentumWavefunction:
    grid: np.ndarray
    phi: np.ndarray
    density: np.ndarray
    hbar: float

    def norm_mass(self) -> float:
        return float(np.trapezoid(self.density, self.grid))


def _simpson_uniform(y: np.ndarray, h: float) -> float:
    n = len(y) - 1
    if n % 2:
        raise ValueError("Simpson rule needs an even interval count")
    return h / 3.0 * float(y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-1:2].sum())


# ---------------------------------------------------------------------------
# eigenvalues of the linear well with walls

def _require_closed_court(spec: PotentialSpec) -> None:
    if spec.kind is not PotentialKind.CLOSED_COURT:
        raise RegimeError("operation is specific to the closed-court potential")
    if spec.v0 <= 0.0:
        raise RegimeError("closed court needs v0 > 0; use infinite_well for v0 = 0")


def _eigencondition(spec: PotentialSpec, energies: np.ndarray, parity: str):
    """Boundary determinant and its envelope scale, vectorized over E."""
    energies = np.asarray(energies, dtype=float)
    c = spec.constants
    rho = (c.hbar ** 2 * spec.a / (2.0 * c.mass * spec.v0)) ** (1.0 / 3.0)
    sigma = energies * spec.a / spec.v0
    z_origin = -sigma / rho
    z_wall = (spec.a - sigma) / rho
    ai1, bi1, aip1, bip1 = airy_eval_many(z_origin)
    ai2, bi2, _, _ = airy_eval_many(z_wall)
    if parity == "odd":
        t1, t2 = ai1 * bi2, ai2 * bi1
    elif parity == "even":
        t1, t2 = aip1 * bi2, ai2 * bip1
    else:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    return t1 - t2, np.abs(t1) + np.abs(t2)


def eigencondition_residual(spec: PotentialSpec, energy: float, parity: str) -> float:
    """|determinant| / envelope at one energy; ~0 at an eigenvalue."""
    val, scale = _eigencondition(spec, np.array([energy]), parity)
    return float(np.abs(val[0]) / max(scale[0], 1e-300))


def _phase_space_count(spec: PotentialSpec, energy: float) -> float:
    """Semiclassical level count below E (both parities)."""
    c = spec.constants
    if energy <= spec.v0:
        return 0.0
    area = (8.0 * spec.a * math.sqrt(2.0 * c.mass) / (3.0 * spec.v0)) * (
        energy ** 1.5 - (energy - spec.v0) ** 1.5)
    return area / (2.0 * math.pi * c.hbar)


def _scan_grid(spec: PotentialSpec, e_min: float, e_max: float) -> np.ndarray:
    """Energy scan whose step tracks the local level spacing pi hbar / tau."""
    c = spec.constants
    pts = [e_min]
    e = e_min
    while e < e_max:
        step = math.pi * c.hbar / (_SCAN_STEPS_PER_LEVEL * half_period(spec, e))
        e = min(e + step, e_max)
        pts.append(e)
    return np.array(pts)


def eigenvalues_closed_court(spec: PotentialSpec, e_max: float, parity: str,
                             e_min: float | None = None) -> np.ndarray:
    """All eigenvalues of one parity in (V0, e_max], sorted ascending.

    Roots of the boundary determinant are bracketed on an energy scan finer
    than the semiclassical level spacing and refined by bisection to
    machine-level relative accuracy.  A warning is raised if the number of
    sign changes disagrees with the phase-space count estimate by more
    than 2 (a bracket may have straddled two roots).
    """
    _require_closed_court(spec)
    lo = spec.v0 * (1.0 + 1e-12) + 1e-300
    if e_min is not None:
        lo = max(lo, e_min)
    if e_max <= lo:
        return np.array([])
    grid = _scan_grid(spec, lo, e_max)
    vals, _ = _eigencondition(spec, grid, parity)
    sign_change = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    left = grid[sign_change]
    right = grid[sign_change + 1]
    f_left = vals[sign_change]
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (left + right)
        f_mid, _ = _eigencondition(spec, mid, parity)
        goes_left = np.sign(f_mid) == np.sign(f_left)
        left = np.where(goes_left, mid, left)
        f_left = np.where(goes_left, f_mid, f_left)
        right = np.where(goes_left, right, mid)
    roots = 0.5 * (left + right)

    expected = 0.5 * (_phase_space_count(spec, e_max) - _phase_space_count(spec, lo))
    if e_min is None and abs(len(roots) - expected) > 2.0:
        warnings.warn(
            f"found {len(roots)} {parity} levels in ({lo:.4g}, {e_max:.4g}] but "
            f"phase-space estimate is {expected:.1f}; scan may have skipped roots",
            SkippedRootWarning)
    return roots


def spectrum(spec: PotentialSpec, e_max: float, e_min: float | None = None) -> list[EigenLevel]:
    """Both parities merged and indexed; also checks even/odd interlacing."""
    levels = []
    for parity in ("even", "odd"):
        for i, e in enumerate(eigenvalues_closed_court(spec, e_max, parity, e_min=e_min)):
            levels.append(EigenLevel(energy=float(e), parity=parity, index=i + 1,
                                     residual=eigencondition_residual(spec, float(e), parity)))
    levels.sort(key=lambda lv: lv.energy)
    parities = [lv.parity for lv in levels]
    if e_min is None and any(a == b for a, b in zip(parities, parities[1:])):
        warnings.warn("even/odd levels do not interlace; a root was likely skipped",
                      SkippedRootWarning)
    return levels


def nearest_level(spec: PotentialSpec, e_target: float, search_width: float = 1.0) -> EigenLevel:
    """The level closest to e_target (searching both parities around it)."""
    lo = max(spec.v0, e_target - search_width)
    levels = spectrum(spec, e_target + search_width, e_min=lo)
    if not levels:
        raise NumericalError(
            f"no eigenvalue within +-{search_width} of E={e_target} (V0={spec.v0})")
    best = min(levels, key=lambda lv: abs(lv.energy - e_target))
    # index from a full count below the found level
    n_below = len(eigenvalues_closed_court(spec, best.energy * (1.0 + 1e-10), best.parity))
    return EigenLevel(energy=best.energy, parity=best.parity,
                      index=max(n_below, 1), residual=best.residual)


# ---------------------------------------------------------------------------
# eigenstates

def eigenstate_closed_court(spec: PotentialSpec, energy: float, parity: str,
                            n_grid: int = 12001, index: int | None = None) -> Eigenstate:
    """Normalized piecewise-Airy eigenstate at a previously located eigenvalue.

    The coefficient pair is the null vector of the origin condition, so odd
    states vanish at x = 0 exactly; the wall value is then proportional to
    the eigencondition residual.  Energies that fail the eigencondition are
    rejected.
    """
    _require_closed_court(spec)
    residual = eigencondition_residual(spec, energy, parity)
    if residual > _EIGEN_RESIDUAL_TOL:
        raise NumericalError(
            f"E={energy!r} is not a {parity} eigenvalue "
            f"(normalized residual {residual:.2e} > {_EIGEN_RESIDUAL_TOL})")
    if n_grid % 2 == 0:
        n_grid += 1  # Simpson normalization needs an even interval count
    scales = AiryScales.from_spec(spec, energy)
    x = np.linspace(-spec.a, spec.a, n_grid)
    z = (np.abs(x) - scales.sigma) / scales.rho
    ai, bi, _, _ = airy_eval_many(z)
    z0 = np.array([-scales.sigma / scales.rho])
    ai0, bi0, aip0, bip0 = airy_eval_many(z0)
    if parity == "odd":
        coef_ai, coef_bi = float(bi0[0]), -float(ai0[0])
    else:
        coef_ai, coef_bi = float(bip0[0]), -float(aip0[0])
    psi = coef_ai * ai + coef_bi * bi
    if parity == "odd":
        psi = np.where(x < 0.0, -psi, psi)
    norm = _simpson_uniform(psi ** 2, x[1] - x[0])
    scale = 1.0 / math.sqrt(norm)
    psi = psi * scale
    if index is None:
        index = len(eigenvalues_closed_court(spec, energy * (1.0 + 1e-10), parity))
    return Eigenstate(parity=parity, index=max(index, 1), energy=float(energy),
                      grid=x, psi=psi, norm_constant=scale,
                      source="airy_piecewise", spec=spec)


def infinite_well_energy(spec: PotentialSpec, n: int, parity: str) -> float:
    """E = hbar^2 k^2 / 2m with k = (n - 1/2) pi / a (even) or n pi / a (odd)."""
    c = spec.constants
    k = ((n - 0.5) if parity == "even" else float(n)) * math.pi / spec.a
    return (c.hbar * k) ** 2 / (2.0 * c.mass)


def eigenstate_infinite_well(spec: PotentialSpec, n: int, parity: str,
                             n_grid: int = 12001) -> Eigenstate:
    """Analytic infinite-well eigenstate of the given parity (n >= 1)."""
    if spec.kind is not PotentialKind.INFINITE_WELL:
        raise RegimeError("eigenstate_infinite_well needs an infinite-well spec")
    if n < 1:
        raise ValueError("state index n must be >= 1")
    if n_grid % 2 == 0:
        n_grid += 1
    x = np.linspace(-spec.a, spec.a, n_grid)
    if parity == "even":
        psi = np.cos((n - 0.5) * math.pi * x / spec.a) / math.sqrt(spec.a)
    elif parity == "odd":
        psi = np.sin(n * math.pi * x / spec.a) / math.sqrt(spec.a)
    else:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    return Eigenstate(parity=parity, index=n, energy=infinite_well_energy(spec, n, parity),
                      grid=x, psi=psi, norm_constant=1.0 / math.sqrt(spec.a),
                      source="infinite_well_analytic", spec=spec)


def position_density(state: Eigenstate) -> DensityCurve:
    """|psi(x)|^2 as a DensityCurve over the well."""
    return DensityCurve(variable="position", grid=state.grid, values=state.psi ** 2,
                        support=((-state.spec.a, state.spec.a),))


# ---------------------------------------------------------------------------
# momentum space

def infinite_well_momentum(spec: PotentialSpec, n: int, parity: str, p) -> np.ndarray:
    """Closed-form infinite-well momentum wavefunction (two shifted sincs)."""
    c = spec.constants
    y = spec.a * np.asarray(p, dtype=float) / c.hbar
    pref = math.sqrt(spec.a / (2.0 * math.pi * c.hbar))

    def sinxx(u):
        return np.sinc(u / math.pi)

    if parity == "even":
        big = (n - 0.5) * math.pi
        return pref * (sinxx(big - y) + sinxx(big + y)) + 0.0j
    big = n * math.pi
    return 1.0j * pref * (sinxx(big - y) - sinxx(big + y))


def default_momentum_grid(state: Eigenstate, n_points: int = 4001) -> np.ndarray:
    """Symmetric grid wide enough that the tail mass is below ~1e-4.

    The wall kink makes |phi|^2 fall off like p^-4, so the window must
    extend well past the classical band; max(8 p_plus, p_plus + 40 hbar/a)
    keeps the Parseval deficit under 1e-4 for every supported state.
    """
    c = state.spec.constants
    p_plus = math.sqrt(2.0 * c.mass * state.energy)
    half_width = max(8.0 * p_plus, p_plus + 40.0 * c.hbar / state.spec.a)
    return np.linspace(-half_width, half_width, n_points)


def _filon_moments(q: np.ndarray, h: float):
    """Panel moments M_j = int_{-h}^{h} s^j exp(i q s) ds for j = 0, 1, 2."""
    theta = q * h
    small = np.abs(theta) < 0.1
    ts = np.where(small, theta, 1.0)  # safe placeholder off-branch
    t2 = ts * ts
    m0_s = 2.0 * h * (1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0)
    m1_s = 2.0 * h * h * ts * (1.0 / 3.0 - t2 / 30.0 + t2 * t2 / 840.0
                               - t2 * t2 * t2 / 45360.0)
    m2_s = 2.0 * h ** 3 * (1.0 / 3.0 - t2 / 10.0 + t2 * t2 / 168.0
                           - t2 * t2 * t2 / 6480.0)
    qq = np.where(small, 1.0, q)
    tb = np.where(small, 1.0, theta)
    sin_t, cos_t = np.sin(tb), np.cos(tb)
    m0_b = 2.0 * sin_t / qq
    m1_b = 2.0 * (sin_t - tb * cos_t) / (qq * qq)
    m2_b = 2.0 * ((tb * tb - 2.0) * sin_t + 2.0 * tb * cos_t) / (qq ** 3)
    m0 = np.where(small, m0_s, m0_b)
    m1 = 1.0j * np.where(small, m1_s, m1_b)
    m2 = np.where(small, m2_s, m2_b)
    return m0, m1, m2


def momentum_transform(state: Eigenstate, p_grid=None, n_points: int = 4001,
                       chunk: int = 256) -> MomentumWavefunction:
    """Oscillation-aware Fourier transform of a sampled eigenstate.

    Each pair of grid intervals forms one Filon panel: psi is interpolated
    quadratically and the oscillatory moments are integrated exactly, so the
    error is set by the spatial grid alone.  The state's grid must still
    resolve the fastest requested oscillation (>= 20 panels per oscillation
    at max |p|), otherwise a :class:`ResolutionError` reports the minimal
    admissible grid.
    """
    spec = state.spec
    c = spec.constants
    if p_grid is None:
        p_grid = default_momentum_grid(state, n_points)
    p_grid = np.asarray(p_grid, dtype=float)
    x = state.grid
    h = x[1] - x[0]
    if not np.allclose(np.diff(x), h, rtol=1e-9):
        raise ValueError("momentum_transform requires a uniform position grid")
    n_int = len(x) - 1
    q_max = float(np.max(np.abs(p_grid))) / c.hbar
    oscillations = q_max * (x[-1] - x[0]) / (2.0 * math.pi)
    n_required = int(math.ceil(20.0 * oscillations))
    if n_int < n_required:
        raise ResolutionError(
            f"position grid too coarse for |p| up to {q_max * c.hbar:.4g}: "
            f"{n_int} intervals < {n_required} (20 panels per oscillation)")
    if n_int % 2:
        raise ValueError("position grid must have an even number of intervals")

    psi = state.psi.astype(float)
    centers = x[1:-1:2]
    f_left, f_center, f_right = psi[0:-2:2], psi[1:-1:2], psi[2::2]
    slope = (f_right - f_left) / (2.0 * h)
    curve = (f_right - 2.0 * f_center + f_left) / (2.0 * h * h)

    q_all = p_grid / c.hbar
    phi = np.empty(len(p_grid), dtype=complex)
    panel_h = h  # local coordinate spans [-h, h] around each center
    for start in range(0, len(q_all), chunk):
        q = q_all[start:start + chunk]
        m0, m1, m2 = _filon_moments(q, panel_h)
        phase = np.exp(1.0j * np.outer(q, centers))
        phi[start:start + chunk] = (m0 * (phase @ f_center)
                                    + m1 * (phase @ slope)
                                    + m2 * (phase @ curve))
    phi /= math.sqrt(2.0 * math.pi * c.hbar)
    return MomentumWavefunction(grid=p_grid, phi=phi,
                                density=np.abs(phi) ** 2, hbar=c.hbar)
