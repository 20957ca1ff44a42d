"""Topology of the energy surfaces of the double spherical pendulum."""

from .complexes import (
    SimplicialComplex,
    SimplicialPair,
    pendulum_configuration_complex,
    product_complex,
    sphere_complex,
    sublevel_complex,
    subdivided_sphere2,
    superlevel_pair,
)
from .dynamics import Diagnostics, Trajectory, sample_phase_point, simulate, step
from .errors import *  # noqa: F401,F403
from .homology import (
    INTEGERS,
    RATIONALS,
    ChainComplex,
    HomologyProfile,
    connected_sum,
    euler_characteristic,
    homology,
    kunneth,
    poincare_dual_check,
    relative_homology,
)
from .intmatrix import IntegerMatrix, SmithForm, elementary_divisors, smith_normal_form
from .mechanics import (
    ConfigPoint,
    EnergyRegime,
    PendulumParams,
    PhasePoint,
    RegimeTag,
    classify_energy,
    critical_points,
    expected_topology,
    hamiltonian,
    potential,
)
from .obstructions import (
    ObstructionVerdict,
    Verdict,
    cross_section_check,
    geodesic_flow_check,
    integrability_check,
)
from .sequences import (
    ExactSequenceSpec,
    Known,
    PairProfile,
    Unknown,
    band_betti,
    energy_surface_betti,
    gysin_total_space,
    relative_gysin,
    solve_exact,
    surgery_connected_sum,
    unit_tangent_integer_homology,
)
