import pytest
from hypothesis import given
from hypothesis import strategies as st

from pendulum_topology.errors import (
    DimensionMismatch,
    Inconsistent,
    NotApplicable,
    Underdetermined,
    ZeroEulerWarning,
)
from pendulum_topology.homology import (
    HomologyProfile,
    euler_characteristic,
    exact_sequence_realizable,
    poincare_dual_check,
    sphere_profile,
)
from pendulum_topology.mechanics import TABLE, RegimeTag
from pendulum_topology.sequences import (
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

S2 = sphere_profile(2)
S2xS2 = HomologyProfile.from_betti((1, 0, 2, 0, 1))
S2xS1 = HomologyProfile.from_betti((1, 1, 1, 1))
S7 = sphere_profile(7)
ROWS = {tag: prof.betti for tag, (_, prof) in TABLE.items()}


def test_solver_surjection():
    sol = solve_exact(ExactSequenceSpec([Unknown("U"), Known(2), Known(1)], {1: 1}))
    assert sol.value("U") == 1


def test_solver_isomorphism():
    assert solve_exact(ExactSequenceSpec([Known(1), Unknown("U")])).value("U") == 1


def test_solver_inconsistent():
    with pytest.raises(Inconsistent):
        solve_exact(ExactSequenceSpec([Known(1), Known(1), Known(1)]))


def test_solver_underdetermined():
    sol = solve_exact(ExactSequenceSpec([Known(1), Unknown("A"), Unknown("B"), Known(1)]))
    assert sol.underdetermined == ["A", "B"]
    with pytest.raises(Underdetermined) as e:
        sol.require()
    assert e.value.labels == ("A", "B")


@given(st.lists(st.integers(0, 4), min_size=1, max_size=8), st.data())
def test_solver_output_is_exact(ranks, data):
    # build dims from random map ranks, hide some, and re-solve
    r = [0] + ranks + [0]
    dims = [r[i] + r[i + 1] for i in range(len(r) - 1)]
    hide = data.draw(st.lists(st.booleans(), min_size=len(dims), max_size=len(dims)))
    terms = [Unknown(f"V{i}") if h else Known(d, f"V{i}") for i, (d, h) in enumerate(zip(dims, hide))]
    sol = solve_exact(ExactSequenceSpec(terms, {i: r[i + 1] for i in range(len(dims) - 1)}))
    assert sol.dims == dims
    assert exact_sequence_realizable(sol.dims)


@pytest.mark.parametrize("base, k, e, expected", [
    (S2xS2, 3, 4, (1, 0, 2, 0, 0, 2, 0, 1)),
    (S2, 1, 0, (1, 1, 1, 1)),
    (S2, 1, 2, (1, 0, 0, 1)),
])
def test_gysin(base, k, e, expected):
    assert gysin_total_space(base, k, euler_number=e).betti == expected


def test_gysin_rank_parameter():
    assert gysin_total_space(S2, 1, psi_rank_at_top=1).betti == (1, 0, 0, 1)


def test_gysin_needs_rank_when_it_matters():
    with pytest.raises(Underdetermined):
        gysin_total_space(S2, 1)


def test_unit_tangent_s2xs2():
    t = []
    h = unit_tangent_integer_homology(S2xS2, 4, trace=t)
    assert h.betti == (1, 0, 2, 0, 0, 2, 0, 1)
    assert h.torsion_at(3) == (4,) and h.rank(4) == 0
    assert [h.group(i) for i in range(8)] == ["Z", "0", "Z^2", "Z_4", "0", "Z^2", "0", "Z"]
    assert t


def test_unit_tangent_s2():
    h = unit_tangent_integer_homology(S2, 2)
    assert h.betti == (1, 0, 0, 1) and h.torsion_at(1) == (2,)
    assert unit_tangent_integer_homology(S2, 1).is_torsion_free


def test_unit_tangent_zero_euler():
    with pytest.warns(ZeroEulerWarning):
        h = unit_tangent_integer_homology(S2, 0)
    assert h.betti == (1, 1, 1, 1)


def test_unit_tangent_refuses_torsion_base():
    with pytest.raises(NotApplicable):
        unit_tangent_integer_homology(HomologyProfile((1, 0, 1), ((), (2,), ())), 2)


@pytest.mark.parametrize("ranks, expected", [
    ((0, 0, 1, 0, 1), (0, 0, 1, 0, 1, 1, 0, 1)),
    ((0, 0, 2, 0, 1), (0, 0, 2, 0, 1, 2, 0, 1)),
    ((0, 0, 0, 0, 0), (0,) * 8),
])
def test_relative_gysin(ranks, expected):
    assert relative_gysin(PairProfile.from_ranks(ranks), 3).ranks == expected


@pytest.mark.parametrize("pair, boundary, expected", [
    ((0, 0, 1, 0, 1, 1, 0, 1), S2xS1, ROWS[RegimeTag.M2]),
    ((0, 0, 2, 0, 1, 2, 0, 1), sphere_profile(3), ROWS[RegimeTag.M3]),
    ((0,) * 8, S7, S7.betti),
])
def test_energy_surface(pair, boundary, expected):
    trace = []
    assert energy_surface_betti(PairProfile.from_ranks(pair), boundary, trace=trace).betti == expected
    assert trace


def test_boundary_isomorphism_rule_is_checked():
    with pytest.raises(Inconsistent):
        energy_surface_betti(PairProfile.from_ranks((0, 0, 1, 0, 0, 1, 0, 1)), S2xS1)


def test_surgery():
    assert surgery_connected_sum(S7).betti == ROWS[RegimeTag.M2]
    assert surgery_connected_sum(surgery_connected_sum(S7)).betti == ROWS[RegimeTag.M3]
    with pytest.raises(DimensionMismatch):
        surgery_connected_sum(S2xS2)
    with pytest.raises(NotApplicable):
        surgery_connected_sum(S7, simply_connected=False)


@pytest.mark.parametrize("tag, oracle", [
    (RegimeTag.M1, (0, 0, 0, 0, 1)),
    (RegimeTag.M2, (0, 0, 1, 0, 1)),
    (RegimeTag.M3, (0, 0, 2, 0, 1)),
    (RegimeTag.M4, (1, 0, 2, 0, 1)),
])
def test_band_pipeline(tag, oracle):
    out = band_betti(tag, HomologyProfile.from_betti(oracle))
    assert out.betti == ROWS[tag]
    assert euler_characteristic(out) == 0
    assert poincare_dual_check(out, 7)
