import math

import pytest
from pydantic import ValidationError

from bloch_synthesis.exceptions import AlphaOutOfRange
from bloch_synthesis.models import (
    BlochPoint,
    Control,
    ControlSchedule,
    ExtremalSpec,
    FamilyTag,
    NormalizedParams,
    OracleResult,
    SwitchingState,
    angular_distance,
)


def test_family_cycle():
    assert FamilyTag.PP.next_in_cycle() is FamilyTag.PM
    assert FamilyTag.MP.next_in_cycle() is FamilyTag.PP
    assert FamilyTag.PP.cycle_after() == [FamilyTag.PM, FamilyTag.MM, FamilyTag.MP, FamilyTag.PP]


def test_family_signs_roundtrip():
    for tag in FamilyTag:
        assert FamilyTag.from_signs(*tag.signs()) is tag
        assert tag.control().is_bang


def test_first_switch_index():
    assert FamilyTag.PP.first_switch_index() == 2
    assert FamilyTag.PM.first_switch_index() == 1


def test_alpha_range_raises_library_error():
    with pytest.raises(AlphaOutOfRange):
        NormalizedParams(alpha=math.pi / 4)
    with pytest.raises(AlphaOutOfRange):
        NormalizedParams(alpha=0.0)


def test_beta_range():
    with pytest.raises(ValidationError):
        NormalizedParams(alpha=0.1, beta=math.pi / 2)


def test_bloch_point_must_be_unit():
    with pytest.raises(ValidationError):
        BlochPoint(x1=1.0, x2=1.0, x3=0.0)
    p = BlochPoint.from_array([3.0, 0.0, 4.0])
    assert p.as_list() == pytest.approx([0.6, 0.0, 0.8])


def test_control_bounds():
    with pytest.raises(ValidationError):
        Control(u1=1.5, u2=0.0)
    assert Control(u1=1.0, u2=-1.0).negated() == Control(u1=-1.0, u2=1.0)
    assert not Control(u1=0.5, u2=1.0).is_bang


def test_switch_times_ignore_repeated_controls():
    sched = ControlSchedule.from_pairs(
        [((1.0, 1.0), 1.0), ((1.0, 1.0), 0.5), ((1.0, -1.0), 2.0), ((-1.0, -1.0), 0.25)]
    )
    assert sched.switch_times() == pytest.approx([1.5, 3.5])
    assert sched.total_duration == pytest.approx(3.75)


def test_extremal_spec_total_time():
    on_first_arc = ExtremalSpec(family=FamilyTag.PP, s=1.0, n=0, phase=0, leftover=0.4, v=1.5)
    assert on_first_arc.total_time == pytest.approx(0.4)
    later = ExtremalSpec(family=FamilyTag.PP, s=1.0, n=2, phase=3, leftover=0.2, v=1.5)
    assert later.total_time == pytest.approx(1.0 + 10 * 1.5 + 0.2)


def test_switching_state_hamiltonian():
    state = SwitchingState(phi0=0.1, phi1=-0.2, phi2=0.3, lambda0=-0.6)
    assert state.hamiltonian() == pytest.approx(0.0)
    with pytest.raises(ValidationError):
        SwitchingState(phi0=0.0, phi1=0.0, phi2=0.0, lambda0=0.5)


def test_angular_distance():
    assert angular_distance([0.0, 0.0, 1.0], [0.0, 0.0, -1.0]) == pytest.approx(math.pi)
    assert angular_distance([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]) == pytest.approx(math.pi / 2)


def test_oracle_result_ordering():
    with pytest.raises(ValidationError):
        OracleResult(
            target=[0.0, 0.0, 1.0],
            t_lower=0.0,
            t_lo=1.0,
            t_hi=0.5,
            dt=0.5,
            eps=0.1,
            frontier_peak=1,
        )
