"""The double spherical pendulum: energies, constraints, critical points of
the potential and the energy bands they cut out."""

import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .errors import ConstraintViolation, DegenerateSlope, DegenerateSlopeWarning, NotApplicable
from .homology import HomologyProfile, sphere_profile

TOL_UNIT = 1e-9
TOL_CON = 1e-9
TOL_CRIT = 1e-9
TOL_K = 1e-12

E3 = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class PendulumParams:
    m1: float = 1.0
    m2: float = 1.0
    l1: float = 1.0
    l2: float = 1.0
    g: float = 1.0
    tol_k: float = TOL_K

    def __post_init__(self):
        for name in ("m1", "m2", "l1", "l2", "g"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")

    @property
    def k(self):
        return slope(self)

    @property
    def degenerate(self):
        return abs(self.k - 1.0) < self.tol_k

    @property
    def energy_scale(self):
        """g m2 l2, the factor in front of k z1 + z2."""
        return self.g * self.m2 * self.l2

    def as_dict(self):
        return {"m1": self.m1, "m2": self.m2, "l1": self.l1, "l2": self.l2, "g": self.g}


def _vec(x):
    a = np.array(x, dtype=float).reshape(3)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class ConfigPoint:
    """A point (q1, q2) of S^2 x S^2."""

    q1: np.ndarray
    q2: np.ndarray
    tol_unit: float = TOL_UNIT

    def __post_init__(self):
        object.__setattr__(self, "q1", _vec(self.q1))
        object.__setattr__(self, "q2", _vec(self.q2))
        for name in ("q1", "q2"):
            n = np.linalg.norm(getattr(self, name))
            if abs(n - 1.0) > self.tol_unit:
                raise ConstraintViolation(f"|{name}| = {n!r} is not 1")

    @classmethod
    def from_heights(cls, z1, z2, phi1=0.0, phi2=0.0):
        def unit(z, phi):
            r = math.sqrt(max(0.0, 1.0 - z * z))
            return (r * math.cos(phi), r * math.sin(phi), z)
        return cls(unit(z1, phi1), unit(z2, phi2))

    @property
    def z1(self):
        return float(self.q1[2])

    @property
    def z2(self):
        return float(self.q2[2])

    def heights(self, params):
        """(h1, h2): heights of the two bobs below/above the pivot."""
        h1 = params.l1 * self.z1
        return h1, params.l2 * self.z2 + h1

    def __eq__(self, other):
        return (isinstance(other, ConfigPoint) and np.array_equal(self.q1, other.q1)
                and np.array_equal(self.q2, other.q2))


@dataclass(frozen=True, eq=False)
class PhasePoint:
    config: ConfigPoint
    p1: np.ndarray
    p2: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p1", _vec(self.p1))
        object.__setattr__(self, "p2", _vec(self.p2))

    @classmethod
    def make(cls, q1, q2, p1=(0, 0, 0), p2=(0, 0, 0)):
        return cls(ConfigPoint(q1, q2), p1, p2)

    def validate(self, params, tol=TOL_CON):
        res = constraint_residuals(params, self)
        if max(abs(r) for r in res) > tol:
            raise ConstraintViolation(f"constraint residuals {res} exceed {tol}")
        return self

    def flipped(self):
        return PhasePoint(self.config, -self.p1, -self.p2)

    def __eq__(self, other):
        return (isinstance(other, PhasePoint) and self.config == other.config
                and np.array_equal(self.p1, other.p1) and np.array_equal(self.p2, other.p2))


def slope(params: PendulumParams) -> float:
    return (params.m1 + params.m2) * params.l1 / (params.m2 * params.l2)


def potential(params: PendulumParams, c: ConfigPoint) -> float:
    return params.energy_scale * (params.k * c.z1 + c.z2)


def potential_from_heights(params, z1, z2):
    """Vectorised potential on arrays of heights."""
    return params.energy_scale * (params.k * np.asarray(z1) + np.asarray(z2))


def mass_matrix(params):
    """2x2 coefficients of p = A qdot (each entry multiplies the 3x3 identity)."""
    m1, m2, l1, l2 = params.m1, params.m2, params.l1, params.l2
    return np.array([[(m1 + m2) * l1 * l1, m2 * l1 * l2],
                     [m2 * l1 * l2, m2 * l2 * l2]])


def momenta_from_velocities(params, qdot1, qdot2):
    m1, m2, l1, l2 = params.m1, params.m2, params.l1, params.l2
    qdot1 = np.asarray(qdot1, dtype=float)
    qdot2 = np.asarray(qdot2, dtype=float)
    w = l1 * qdot1 + l2 * qdot2
    p1 = m1 * l1 * l1 * qdot1 + m2 * l1 * w
    p2 = m2 * l2 * w
    return p1, p2


def velocities_from_momenta(params, p1, p2=None):
    """Inverse Legendre map.  Accepts a PhasePoint or a pair of momenta."""
    if isinstance(p1, PhasePoint):
        p1, p2 = p1.p1, p1.p2
    m1, m2, l1, l2 = params.m1, params.m2, params.l1, params.l2
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    qdot1 = (p1 / (m1 * l1) - p2 / (m1 * l2)) / l1
    qdot2 = (p2 / (m2 * l2) - p1 / (m1 * l1) + p2 / (m1 * l2)) / l2
    return qdot1, qdot2


def kinetic_energy(params, p1, p2):
    m1, m2, l1, l2 = params.m1, params.m2, params.l1, params.l2
    a = np.asarray(p1) / l1 - np.asarray(p2) / l2
    b = np.asarray(p2) / l2
    return 0.5 * (np.dot(a, a) / m1 + np.dot(b, b) / m2)


def hamiltonian(params: PendulumParams, p: PhasePoint) -> float:
    return float(kinetic_energy(params, p.p1, p.p2) + potential(params, p.config))


def constraint_residuals(params, p: PhasePoint):
    """(g1 - 1, g2 - 1, g3, g4)."""
    m1, m2, l1, l2 = params.m1, params.m2, params.l1, params.l2
    q1, q2, p1, p2 = p.config.q1, p.config.q2, p.p1, p.p2
    g1 = float(q1 @ q1 - 1.0)
    g2 = float(q2 @ q2 - 1.0)
    g3 = float(q1 @ (p1 / (m1 * l1 * l1) - p2 / (m1 * l1 * l2)))
    g4 = float(q2 @ (p2 / (m2 * l2 * l2) - p1 / (m1 * l1 * l2) + p2 / (m1 * l2 * l2)))
    return g1, g2, g3, g4


# --- critical points -------------------------------------------------------

# label -> (z1, z2); z = -1 is the lowest point of a sphere, +1 the highest
POLES = {"P1": (-1, -1), "P2": (-1, 1), "P3": (1, -1), "P4": (1, 1)}
INDICES = {"P1": 0, "P2": 2, "P3": 2, "P4": 4}


@dataclass(frozen=True)
class CriticalPointInfo:
    label: str
    config: ConfigPoint
    potential_value: float
    morse_index: int
    gradient_norm: Optional[float] = None
    hessian_eigenvalues: Optional[Tuple[float, ...]] = None

    @property
    def z(self):
        return (self.config.z1, self.config.z2)


def projected_gradient(params, c: ConfigPoint):
    """Gradient of V on S^2 x S^2 (tangential part of the ambient gradient)."""
    s = params.energy_scale
    g1 = s * params.k * E3
    g2 = s * E3
    return g1 - (g1 @ c.q1) * c.q1, g2 - (g2 @ c.q2) * c.q2


def _tangent_basis(q):
    a = np.array([1.0, 0.0, 0.0]) if abs(q[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = a - (a @ q) * q
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(q, e1)


def _exp(q, basis, u):
    r = math.hypot(u[0], u[1])
    if r == 0.0:
        return q
    t = (u[0] * basis[0] + u[1] * basis[1]) / r
    return math.cos(r) * q + math.sin(r) * t


def chart_hessian(params, c: ConfigPoint, h=1e-3):
    """4x4 Hessian of V in exponential charts centred at ``c`` (central differences)."""
    b1, b2 = _tangent_basis(c.q1), _tangent_basis(c.q2)

    def V(x):
        q1 = _exp(c.q1, b1, x[:2])
        q2 = _exp(c.q2, b2, x[2:])
        return params.energy_scale * (params.k * q1[2] + q2[2])

    H = np.zeros((4, 4))
    I = np.eye(4) * h
    for i in range(4):
        for j in range(i, 4):
            v = (V(I[i] + I[j]) - V(I[i] - I[j]) - V(-I[i] + I[j]) + V(-I[i] - I[j])) / (4 * h * h)
            H[i, j] = H[j, i] = v
    return H


def critical_points(params: PendulumParams, verify=True, eig_threshold=1e-8):
    """The four critical points P1..P4 of V with values and Morse indices.

    With ``verify`` the projected gradient and the chart Hessian are
    evaluated numerically and the index is checked against the eigenvalue
    signs.
    """
    if params.degenerate:
        warnings.warn(f"slope k = {params.k} makes V(P2) == V(P3)", DegenerateSlopeWarning, stacklevel=2)
    out = []
    for label, (z1, z2) in POLES.items():
        c = ConfigPoint((0.0, 0.0, z1), (0.0, 0.0, z2))
        value = potential(params, c)
        idx = INDICES[label]
        gnorm = eigs = None
        if verify:
            g1, g2 = projected_gradient(params, c)
            gnorm = float(math.sqrt(g1 @ g1 + g2 @ g2))
            ev = np.linalg.eigvalsh(chart_hessian(params, c))
            eigs = tuple(float(e) for e in ev)
            thr = eig_threshold * params.energy_scale * max(1.0, params.k)
            if gnorm > 1e-12 * params.energy_scale * (params.k + 1):
                raise AssertionError(f"{label}: gradient does not vanish ({gnorm})")
            if np.any(np.abs(ev) <= thr):
                raise AssertionError(f"{label}: degenerate Hessian {ev}")
            if int(np.sum(ev < 0)) != idx:
                raise AssertionError(f"{label}: Hessian signature {ev} does not give index {idx}")
        out.append(CriticalPointInfo(label, c, value, idx, gnorm, eigs))
    return out


def search_critical_points(params, n_seeds=100, seed=0, tol=1e-10):
    """Look for zeros of the projected gradient from random starting points.

    Minimises |grad V|^2 over (x1, x2) in R^3 x R^3 with q_i = x_i/|x_i|.
    Returns the distinct (z1, z2) pole pairs reached, rounded to +-1.
    """
    from scipy.optimize import minimize

    rng = np.random.default_rng(seed)
    k = params.k

    def unit(x):
        return x[:3] / np.linalg.norm(x[:3]), x[3:] / np.linalg.norm(x[3:])

    def f(x):
        # |grad V|^2 / scale^2: the tangential part of e3 on S^2 has norm^2 1 - z^2
        q1, q2 = unit(x)
        return k * k * (1 - q1[2] ** 2) + (1 - q2[2] ** 2)

    found = set()
    stray = []
    for _ in range(n_seeds):
        res = minimize(f, rng.standard_normal(6), method="BFGS", options={"gtol": 1e-14, "maxiter": 500})
        if res.fun < tol:
            q1, q2 = unit(res.x)
            if abs(abs(q1[2]) - 1) < 1e-4 and abs(abs(q2[2]) - 1) < 1e-4:
                found.add((int(round(q1[2])), int(round(q2[2]))))
            else:
                stray.append((q1, q2))
    return found, stray


# --- energy regimes ----------------------------------------------------------


class RegimeTag(str, enum.Enum):
    EMPTY = "Empty"
    M1 = "M1"
    M2 = "M2"
    M3 = "M3"
    M4 = "M4"
    CRITICAL = "Critical"

    def __str__(self):
        return self.value


BAND_ORDER = (RegimeTag.EMPTY, RegimeTag.M1, RegimeTag.M2, RegimeTag.M3, RegimeTag.M4)


@dataclass(frozen=True)
class EnergyRegime:
    tag: RegimeTag
    lower: Optional[float]   # None means unbounded
    upper: Optional[float]
    critical_label: Optional[str] = None

    @property
    def band_index(self):
        return BAND_ORDER.index(self.tag) if self.tag != RegimeTag.CRITICAL else None


def sorted_critical_values(params):
    cps = critical_points(params, verify=False)
    return sorted(((cp.potential_value, cp.label) for cp in cps))


def classify_energy(params: PendulumParams, h: float, tol_crit=TOL_CRIT) -> EnergyRegime:
    if params.degenerate:
        raise DegenerateSlope(f"slope k = {params.k}: the M2/M3 band collapses")
    vals = sorted_critical_values(params)
    tol = tol_crit * params.energy_scale * (params.k + 1)
    for v, label in vals:
        if abs(h - v) <= tol:
            return EnergyRegime(RegimeTag.CRITICAL, v, v, label)
    cuts = [v for v, _ in vals]
    i = int(np.searchsorted(cuts, h))
    lower = cuts[i - 1] if i > 0 else None
    upper = cuts[i] if i < len(cuts) else None
    return EnergyRegime(BAND_ORDER[i], lower, upper)


def in_accessible_region(params, h, c: ConfigPoint) -> bool:
    return potential(params, c) <= h


def band_levels(params, offset=0.0):
    """A representative energy inside each of M1..M4.

    Bounded bands use midpoint + offset * half width (|offset| < 1); M4 uses
    V(P4) + (1 + offset) * scale.
    """
    if not -1 < offset < 1:
        raise ValueError("offset must lie in (-1, 1)")
    cuts = [v for v, _ in sorted_critical_values(params)]
    out = {}
    for tag, lo, hi in zip(BAND_ORDER[1:4], cuts[:3], cuts[1:]):
        out[tag] = 0.5 * (lo + hi) + offset * 0.5 * (hi - lo)
    out[RegimeTag.M4] = cuts[3] + (1 + offset) * params.energy_scale
    return out


# --- expected topology per band ----------------------------------------------

S2xS5 = HomologyProfile.from_betti((1, 0, 1, 0, 0, 1, 0, 1))
S2xS5_2 = HomologyProfile.from_betti((1, 0, 2, 0, 0, 2, 0, 1))
T1Q = HomologyProfile((1, 0, 2, 0, 0, 2, 0, 1), ((), (), (), (4,), (), (), (), ()))

TABLE = {
    RegimeTag.M1: ("S^7", sphere_profile(7)),
    RegimeTag.M2: ("S^2 x S^5", S2xS5),
    RegimeTag.M3: ("(S^2 x S^5)#(S^2 x S^5)", S2xS5_2),
    RegimeTag.M4: ("T_1(S^2 x S^2)", T1Q),
}

S2xS1 = HomologyProfile.from_betti((1, 1, 1, 1))
S2xS2 = HomologyProfile.from_betti((1, 0, 2, 0, 1))

# accessible region U and its boundary for each band (k > 1); M4 has U = Q
REGIONS = {
    RegimeTag.M1: ("D^4", HomologyProfile.from_betti((1, 0, 0, 0, 0)), sphere_profile(3)),
    RegimeTag.M2: ("D^2 x S^2", HomologyProfile.from_betti((1, 0, 1, 0, 0)), S2xS1),
    RegimeTag.M3: ("Q minus D^4", HomologyProfile.from_betti((1, 0, 2, 0, 0)), sphere_profile(3)),
    RegimeTag.M4: ("S^2 x S^2", S2xS2, None),
}


@dataclass(frozen=True)
class TopologyReport:
    regime: RegimeTag
    name: str
    betti: Tuple[int, ...]
    integer_homology: HomologyProfile

    def to_dict(self):
        return {
            "regime": str(self.regime),
            "name": self.name,
            "betti": list(self.betti),
            "integer_homology": [self.integer_homology.group(k)
                                 for k in range(self.integer_homology.top_degree + 1)],
            "torsion": [list(t) for t in self.integer_homology.torsion],
        }


def expected_topology(regime) -> TopologyReport:
    tag = regime.tag if isinstance(regime, EnergyRegime) else RegimeTag(regime)
    if tag not in TABLE:
        raise NotApplicable(f"no energy surface topology for regime {tag}")
    name, prof = TABLE[tag]
    return TopologyReport(tag, name, prof.betti, prof)


def accessible_region(regime):
    """(name, H(U), H(boundary U)) for a band; boundary is None for M4."""
    tag = regime.tag if isinstance(regime, EnergyRegime) else RegimeTag(regime)
    if tag not in REGIONS:
        raise NotApplicable(f"no accessible region for regime {tag}")
    return REGIONS[tag]
