"""Doubly warped product spectra and the constant-scalar-curvature shooting ODE.

The metric dr^2 + phi^2 ds_p^2 + psi^2 ds_q^2 on an interval times a product
of spheres has a curvature operator diagonal in the adapted wedge basis with
five eigenvalue families; the round sphere (phi = sin, psi = cos) forces all
of them to one, which pins the formulas.  A compactly supported bump added to
phi'' drives the radial family negative while leaving the others near one.
The single-warped constant-scalar-curvature profile reduces to a planar ODE
integrated here with fixed-step classical Runge-Kutta and a bisected crossing
event.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .operators import CurvatureOperator
from .tensors import check_dimension, wedge_count, wedge_pairs


@dataclass(frozen=True)
class WarpJet:
    """Radius and 2-jets of both warping functions; positive on the interior."""

    r: float
    phi: float
    dphi: float
    d2phi: float
    psi: float
    dpsi: float
    d2psi: float

    def __post_init__(self):
        if self.phi <= 0 or self.psi <= 0:
            raise ValueError("warping functions must be positive")


def round_jet(r) -> WarpJet:
    """Jet of the unit round sphere profile phi = sin, psi = cos."""
    return WarpJet(
        r=r,
        phi=math.sin(r),
        dphi=math.cos(r),
        d2phi=-math.sin(r),
        psi=math.cos(r),
        dpsi=-math.sin(r),
        d2psi=-math.cos(r),
    )


def dwp_eigenvalues(p, q, jet: WarpJet):
    """Eigenvalue families of the doubly warped curvature operator.

    Returns (value, multiplicity, label) tuples: radial wedges against each
    sphere factor, plane wedges inside each factor, and mixed wedges.  The
    multiplicities total the wedge dimension of the (1+p+q)-space.
    """
    p = int(p)
    q = int(q)
    if p < 2 or q < 2:
        raise ValueError(f"both sphere factors need dimension >= 2, got {p}, {q}")
    return [
        (-jet.d2phi / jet.phi, p, "radial-p"),
        (-jet.d2psi / jet.psi, q, "radial-q"),
        ((1.0 - jet.dphi ** 2) / jet.phi ** 2, p * (p - 1) // 2, "plane-p"),
        ((1.0 - jet.dpsi ** 2) / jet.psi ** 2, q * (q - 1) // 2, "plane-q"),
        (-(jet.dphi * jet.dpsi) / (jet.phi * jet.psi), p * q, "mixed"),
    ]


def dwp_eigenvalue_list(p, q, jet: WarpJet) -> np.ndarray:
    """All wedge eigenvalues with multiplicity, ascending."""
    out = []
    for value, mult, _ in dwp_eigenvalues(p, q, jet):
        out.extend([value] * mult)
    return np.sort(np.array(out))


def dwp_operator(p, q, jet: WarpJet) -> CurvatureOperator:
    """The operator itself, diagonal in the adapted wedge basis.

    Coordinates are ordered radial, then the p-sphere block, then the
    q-sphere block; a decomposable eigenbasis makes the operator Bianchi.
    """
    n = check_dimension(1 + p + q)
    radial_p, radial_q, plane_p, plane_q, mixed = dwp_eigenvalues(p, q, jet)
    diag = np.zeros(wedge_count(n))
    for which, (i, j) in enumerate(wedge_pairs(n)):
        i_block = 0 if i == 0 else (1 if i <= p else 2)
        j_block = 0 if j == 0 else (1 if j <= p else 2)
        if i_block == 0:
            diag[which] = radial_p[0] if j_block == 1 else radial_q[0]
        elif i_block == 1:
            diag[which] = plane_p[0] if j_block == 1 else mixed[0]
        else:
            diag[which] = plane_q[0]
    op = CurvatureOperator(n, np.diag(diag))
    op.certify_bianchi()
    return op


def _smoothstep5(t):
    """Quintic smoothstep on [0, 1]: value, slope, and curvature flat at both ends."""
    t = np.clip(t, 0.0, 1.0)
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t))


def _bump(u):
    """C^2 window supported on [-1, 1] with unit peak."""
    u = np.asarray(u, dtype=float)
    return np.where(np.abs(u) < 1.0, _smoothstep5(1.0 - np.abs(u)), 0.0)


def _smoothstep5_i1(t):
    t = np.clip(t, 0.0, 1.0)
    return t ** 4 * (2.5 + t * (-3.0 + t))


def _bump_i1(u):
    """Integral of the window from -1 to u."""
    u = np.asarray(u, dtype=float)
    half = _smoothstep5_i1(1.0)
    below = _smoothstep5_i1(1.0 + np.minimum(u, 0.0))
    above = 2.0 * half - _smoothstep5_i1(1.0 - np.maximum(u, 0.0))
    return np.where(u <= 0.0, below, above)


def _smoothstep5_i2(t):
    t = np.clip(t, 0.0, 1.0)
    return t ** 5 * (0.5 + t * (-0.5 + t / 7.0))


def _bump_i2(u):
    """Double integral of the window from -1 to u."""
    u = np.asarray(u, dtype=float)
    half = _smoothstep5_i1(1.0)
    below = _smoothstep5_i2(1.0 + np.minimum(u, 0.0))
    up = np.maximum(u, 0.0)
    above = _smoothstep5_i2(1.0) + 2.0 * half * up - (
        _smoothstep5_i2(1.0) - _smoothstep5_i2(1.0 - up)
    )
    return np.where(u <= 0.0, below, above)


@dataclass(frozen=True)
class PerturbedProfile:
    """Round profile with a compactly supported bump added to phi''.

    phi' and phi are recovered by exact integration of the bump, preserving
    phi(0) = 0 and phi'(0) = 1; psi stays cos.  c1_bound is a conservative
    bound on the C^1 distance to sin.
    """

    p: int
    q: int
    amp: float
    center: float
    width: float
    c1_bound: float

    def __call__(self, r) -> WarpJet:
        u = (r - self.center) / self.width
        d2phi = -math.sin(r) + self.amp * float(_bump(u))
        dphi = math.cos(r) + self.amp * self.width * float(_bump_i1(u))
        phi = math.sin(r) + self.amp * self.width ** 2 * float(_bump_i2(u))
        return WarpJet(
            r=r,
            phi=phi,
            dphi=dphi,
            d2phi=d2phi,
            psi=math.cos(r),
            dpsi=-math.sin(r),
            d2psi=-math.cos(r),
        )


def perturbed_profile(p, q, amp, center, width) -> PerturbedProfile:
    """Profile family for the doubly warped sphere with a phi'' bump.

    The bump support [center - width, center + width] must stay inside the
    open interval (0, pi/2).
    """
    amp = float(amp)
    center = float(center)
    width = float(width)
    if width <= 0:
        raise ValueError(f"width must be positive, got {width}")
    if center - width <= 0.0 or center + width >= math.pi / 2.0:
        raise ValueError("bump support must stay inside the open interval (0, pi/2)")
    bound = abs(amp) * width * (width + math.pi / 2.0)
    return PerturbedProfile(
        p=int(p), q=int(q), amp=amp, center=center, width=width, c1_bound=bound
    )


def scal_single_warped(n, rho, drho, d2rho) -> float:
    """Scalar curvature of dr^2 + rho^2 ds_{n-1}^2 from the 2-jet of rho."""
    n = int(n)
    if n < 3:
        raise ValueError(f"dimension must be at least 3, got {n}")
    if rho <= 0:
        raise ValueError(f"the warping function must be positive, got {rho}")
    return -2.0 * (n - 1) * d2rho / rho + (n - 2.0) * (n - 1) * (1.0 - drho ** 2) / rho ** 2


def ode_rhs(n, x, y):
    """Phase-plane field of the constant-scalar-curvature profile equation."""
    return y, -(x * x + 0.5 * (n - 2) * (y * y - 1.0)) / x


@dataclass(frozen=True)
class OdeState:
    t: float
    x: float
    y: float


def _rk4_step(n, x, y, h):
    k1x, k1y = ode_rhs(n, x, y)
    k2x, k2y = ode_rhs(n, x + 0.5 * h * k1x, y + 0.5 * h * k1y)
    k3x, k3y = ode_rhs(n, x + 0.5 * h * k2x, y + 0.5 * h * k2y)
    k4x, k4y = ode_rhs(n, x + h * k3x, y + h * k3y)
    return (
        x + h * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0,
        y + h * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0,
    )


@dataclass(frozen=True)
class ShootResult:
    """Trajectory plus the first return to the axis, when one is found.

    status is "crossed", "no-crossing", or "blow-down"; crossing holds
    (time, x) at the refined axis return.
    """

    states: tuple
    crossing: tuple | None
    status: str


def integrate_warp_ode(n, x0, y0, step, t_max):
    """Fixed-step classical Runge-Kutta integration of the profile ODE.

    Stops early with status "blow-down" if x leaves the positive half plane.
    """
    n = int(n)
    if n < 3:
        raise ValueError(f"dimension must be at least 3, got {n}")
    if step <= 0 or t_max <= 0:
        raise ValueError("step and t_max must be positive")
    if x0 <= 0:
        raise ValueError(f"x must start positive, got {x0}")
    states = [OdeState(0.0, float(x0), float(y0))]
    steps = int(round(t_max / step))
    x, y = float(x0), float(y0)
    for i in range(1, steps + 1):
        x, y = _rk4_step(n, x, y, step)
        if not (x > 0.0) or not math.isfinite(x) or not math.isfinite(y):
            return states, "blow-down"
        states.append(OdeState(i * step, x, y))
    return states, "ok"


def _refine_crossing(n, state: OdeState, h, tol=1e-10, max_iter=200):
    """Bisect the step size until the probe lands on the axis."""
    lo, hi = 0.0, h
    tau = h
    x1, y1 = _rk4_step(n, state.x, state.y, tau)
    for _ in range(max_iter):
        if abs(y1) <= tol:
            break
        tau = 0.5 * (lo + hi)
        x1, y1 = _rk4_step(n, state.x, state.y, tau)
        if y1 > 0.0:
            lo = tau
        else:
            hi = tau
    return state.t + tau, x1, y1


def ode_shoot(n, x0, step=1e-4, t_max=20.0) -> ShootResult:
    """Shoot from (x0, 0) and report the first return to the axis.

    The admissible start has x0^2 at most (n-2)/2; strictly inside, the
    orbit circles the center and returns with a larger radius, which is
    asserted.  Starting at the center itself simply never crosses.
    """
    n = int(n)
    if n < 3:
        raise ValueError(f"dimension must be at least 3, got {n}")
    if x0 <= 0:
        raise ValueError(f"x0 must be positive, got {x0}")
    limit = 0.5 * (n - 2)
    if x0 * x0 > limit * (1.0 + 1e-12):
        raise ValueError(f"x0^2 must be at most (n-2)/2 = {limit}, got {x0 * x0}")
    states = [OdeState(0.0, float(x0), 0.0)]
    x, y = float(x0), 0.0
    steps = int(round(t_max / step))
    # roundoff-level y (a start at the center) must not arm the detector
    armed = 1e-8
    for i in range(1, steps + 1):
        nx, ny = _rk4_step(n, x, y, step)
        if not (nx > 0.0) or not math.isfinite(nx) or not math.isfinite(ny):
            return ShootResult(tuple(states), None, "blow-down")
        if y > armed and ny <= 0.0:
            t_cross, x1, y1 = _refine_crossing(n, states[-1], step)
            states.append(OdeState(t_cross, x1, y1))
            if x1 * x1 <= limit:
                raise AssertionError(
                    f"axis return at x = {x1} did not leave the disk x^2 <= {limit}"
                )
            return ShootResult(tuple(states), (t_cross, x1), "crossed")
        x, y = nx, ny
        states.append(OdeState(i * step, x, y))
    return ShootResult(tuple(states), None, "no-crossing")


def trajectory_scal(n, result_states) -> np.ndarray:
    """Scalar curvature along a trajectory, with the curvature of the profile
    taken from the field itself."""
    out = np.empty(len(result_states))
    for i, state in enumerate(result_states):
        _, dy = ode_rhs(n, state.x, state.y)
        out[i] = scal_single_warped(n, state.x, state.y, dy)
    return out
