"""Constrained leapfrog (RATTLE) for the double spherical pendulum, a
convenience sampler for energy surfaces, and trajectory diagnostics."""

import csv
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .errors import DegenerateSlope, EmptyRegime, NonMorseLevel, ProjectionDivergence
from .mechanics import (
    ConfigPoint,
    PendulumParams,
    PhasePoint,
    RegimeTag,
    classify_energy,
    mass_matrix,
    sorted_critical_values,
)

MAX_ITER = 50
NEWTON_TOL = 1e-12

CSV_COLUMNS = (["time"]
               + [f"{v}{c}" for v in ("q1", "q2", "p1", "p2") for c in "xyz"]
               + ["H", "g1", "g2", "g3", "g4"])


class _System:
    """Array-level kernel; positions and momenta are (2, 3) arrays."""

    def __init__(self, params: PendulumParams):
        self.params = params
        self.Ainv = np.linalg.inv(mass_matrix(params))
        s = params.energy_scale
        self.gradV = np.array([[0.0, 0.0, s * params.k], [0.0, 0.0, s]])
        self.s, self.k = s, params.k

    def potential(self, Q):
        return self.s * (self.k * Q[..., 0, 2] + Q[..., 1, 2])

    def step(self, q, p, dt):
        Ainv = self.Ainv
        h = 0.5 * dt
        pt = p - h * self.gradV
        a = q + dt * (Ainv @ pt)
        # position constraints: q' = a - dt*h * Ainv (lam_j q_j), |q'_i| = 1
        lam = np.zeros(2)
        converged = False
        for _ in range(MAX_ITER):
            qn = a - dt * h * (Ainv @ (lam[:, None] * q))
            F = np.einsum("ij,ij->i", qn, qn) - 1.0
            if converged:
                break
            # once inside the tolerance, one more (quadratically convergent)
            # update takes the residual down to rounding level
            converged = np.max(np.abs(F)) <= NEWTON_TOL
            J = -2 * dt * h * Ainv * (qn @ q.T)
            lam -= np.linalg.solve(J, F)
        else:
            raise ProjectionDivergence(f"position projection did not converge in {MAX_ITER} iterations")
        ph = pt - h * lam[:, None] * q
        # velocity constraints q'_i . (Ainv p')_i = 0, linear in mu
        ps = ph - h * self.gradV
        vs = Ainv @ ps
        b = np.einsum("ij,ij->i", qn, vs)
        M = h * Ainv * (qn @ qn.T)
        mu = np.linalg.solve(M, b)
        return qn, ps - h * mu[:, None] * qn


def _arrays(pt: PhasePoint):
    return np.array([pt.config.q1, pt.config.q2]), np.array([pt.p1, pt.p2])


def _point(q, p):
    return PhasePoint(ConfigPoint(q[0], q[1]), p[0], p[1])


def step(params: PendulumParams, pt: PhasePoint, dt) -> PhasePoint:
    """One time-reversible RATTLE step: half kick, drift, projection onto the
    spheres, half kick, projection of momenta onto the tangent constraints."""
    q, p = _arrays(pt)
    q, p = _System(params).step(q, p, dt)
    return _point(q, p)


@dataclass
class Trajectory:
    times: np.ndarray
    q: np.ndarray           # (N, 2, 3)
    p: np.ndarray           # (N, 2, 3)
    dt: float
    steps: int

    def __len__(self):
        return len(self.times)

    def point(self, i) -> PhasePoint:
        return _point(self.q[i], self.p[i])

    @property
    def points(self) -> List[PhasePoint]:
        return [self.point(i) for i in range(len(self))]


@dataclass
class Diagnostics:
    energy_drift: float
    max_residual: float
    potential_excess: float
    regime: Optional[str]
    energy: float

    def to_dict(self):
        return {"energy_drift": self.energy_drift, "max_residual": self.max_residual,
                "potential_excess": self.potential_excess, "regime": self.regime,
                "energy": self.energy}


def _regime_label(params, h):
    try:
        return str(classify_energy(params, h).tag)
    except DegenerateSlope:
        return None


def simulate(params: PendulumParams, init: PhasePoint, dt, steps):
    if dt <= 0 or steps < 0:
        raise ValueError("need dt > 0 and steps >= 0")
    kern = _System(params)
    q, p = _arrays(init)
    Q = np.empty((steps + 1, 2, 3))
    P = np.empty((steps + 1, 2, 3))
    Q[0], P[0] = q, p
    for i in range(1, steps + 1):
        q, p = kern.step(q, p, dt)
        Q[i], P[i] = q, p
    traj = Trajectory(dt * np.arange(steps + 1), Q, P, dt, steps)
    H, R = _energies_residuals(kern, Q, P)
    h0 = H[0]
    V = kern.potential(Q)
    diag = Diagnostics(
        energy_drift=float(np.max(np.abs(H - h0))),
        max_residual=float(np.max(np.abs(R))),
        potential_excess=float(max(np.max(V - h0), 0.0)),
        regime=_regime_label(params, h0),
        energy=float(h0),
    )
    return traj, diag


def _energies_residuals(kern, Q, P):
    V = kern.Ainv[None] @ P                       # velocities, (N, 2, 3)
    H = 0.5 * np.einsum("nij,nij->n", P, V) + kern.potential(Q)
    R = np.stack([np.einsum("nj,nj->n", Q[:, 0], Q[:, 0]) - 1,
                  np.einsum("nj,nj->n", Q[:, 1], Q[:, 1]) - 1,
                  np.einsum("nj,nj->n", Q[:, 0], V[:, 0]),
                  np.einsum("nj,nj->n", Q[:, 1], V[:, 1])], axis=1)
    return H, R


def sample_phase_point(params: PendulumParams, h, seed=0, batch=4096, max_batches=10000) -> PhasePoint:
    """A point with H = h, deterministic in ``seed``.

    Configurations are uniform on S^2 x S^2 conditioned on V < h (rejection);
    velocities are Gaussian in the tangent planes and rescaled so that the
    kinetic energy is h - V.  This is a convenience measure, not Liouville.
    """
    vals = sorted_critical_values(params)
    if h <= vals[0][0]:
        raise EmptyRegime(f"energy {h} is not above the minimum {vals[0][0]} of V")
    if not params.degenerate and classify_energy(params, h).tag == RegimeTag.CRITICAL:
        raise NonMorseLevel(f"energy {h} is a critical value")
    rng = np.random.default_rng(seed)
    kern = _System(params)
    for _ in range(max_batches):
        z = rng.uniform(-1, 1, size=(batch, 2))
        ok = np.flatnonzero(kern.s * (kern.k * z[:, 0] + z[:, 1]) < h)
        phi = rng.uniform(0, 2 * np.pi, size=(batch, 2))
        if len(ok):
            i = ok[0]
            break
    else:
        raise EmptyRegime(f"no configuration with V < {h} found by rejection sampling")
    r = np.sqrt(1 - z[i] ** 2)
    q = np.stack([r * np.cos(phi[i]), r * np.sin(phi[i]), z[i]], axis=1)
    q /= np.linalg.norm(q, axis=1)[:, None]
    v = rng.standard_normal((2, 3))
    v -= np.einsum("ij,ij->i", v, q)[:, None] * q
    p = mass_matrix(params) @ v
    T = 0.5 * float(np.sum(p * v))
    V = kern.potential(q)
    p *= np.sqrt((h - V) / T)
    return _point(q, p)


def write_csv(params: PendulumParams, traj: Trajectory, path_or_file):
    """Columns: time, q1x..q1z, q2x..q2z, p1x..p1z, p2x..p2z, H, g1..g4
    (g1, g2 are |q_i|^2 - 1; g3, g4 the tangency residuals q_i . qdot_i)."""
    kern = _System(params)
    H, R = _energies_residuals(kern, traj.q, traj.p)
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    f = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for n in range(len(traj)):
            row = [traj.times[n], *traj.q[n].ravel(), *traj.p[n].ravel(), H[n], *R[n]]
            w.writerow([repr(float(x)) for x in row])
    finally:
        if own:
            f.close()
