"""
Value types shared across the synthesis modules.

All models are frozen pydantic models. Numeric kernels work on numpy arrays and
convert at their boundaries with ``as_array``/``from_array``.
"""

import math
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .exceptions import AlphaOutOfRange

QUARTER_PI = math.pi / 4
UNIT_NORM_TOL = 1e-12


class PhysicalParams(BaseModel):
    """
    Physical Hamiltonian parameters: energy half-gap and the two field bounds.
    """

    model_config = ConfigDict(frozen=True)

    E: float
    M1: float = Field(ge=0.0)
    M2: float = Field(ge=0.0)

    @model_validator(mode="after")
    def _check_bounds(self) -> "PhysicalParams":
        if self.M1 + self.M2 <= 0.0:
            raise ValueError("at least one field bound must be positive")
        return self

    @property
    def scale(self) -> float:
        """The time scale k = 2 sqrt(E^2 + M1^2 + M2^2)."""
        return 2.0 * math.sqrt(self.E**2 + self.M1**2 + self.M2**2)


class NormalizedParams(BaseModel):
    """
    Normalized system parameters.

    ``alpha`` sets the ratio of control strength to drift, ``beta`` the ratio of
    the two bounds, and ``k`` the factor between normalized and physical time.
    """

    model_config = ConfigDict(frozen=True)

    alpha: float
    beta: float = QUARTER_PI
    k: float = Field(default=1.0, gt=0.0)

    @field_validator("alpha")
    @classmethod
    def _alpha_in_range(cls, value: float) -> float:
        if not 0.0 < value < QUARTER_PI:
            raise AlphaOutOfRange(
                f"alpha={value!r} outside (0, pi/4)", {"alpha": value}
            )
        return value

    @field_validator("beta")
    @classmethod
    def _beta_in_range(cls, value: float) -> float:
        if not 0.0 < value < math.pi / 2:
            raise ValueError(f"beta={value!r} outside (0, pi/2)")
        return value

    @property
    def is_symmetric(self) -> bool:
        """True when both controls share the same bound."""
        return abs(self.beta - QUARTER_PI) <= 1e-12

    def physical_time(self, t: float) -> float:
        return t / self.k

    def exclusion_radius(self, factor: float = 3.0) -> float:
        return factor * self.alpha


class BlochPoint(BaseModel):
    """A unit vector on the Bloch sphere."""

    model_config = ConfigDict(frozen=True)

    x1: float
    x2: float
    x3: float

    @model_validator(mode="after")
    def _on_sphere(self) -> "BlochPoint":
        norm = math.sqrt(self.x1**2 + self.x2**2 + self.x3**2)
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise ValueError(f"point off the unit sphere (norm={norm!r})")
        return self

    @classmethod
    def from_array(cls, vector: Any, normalize: bool = True) -> "BlochPoint":
        v = np.asarray(vector, dtype=float).reshape(3)
        if normalize:
            v = v / np.linalg.norm(v)
        return cls(x1=float(v[0]), x2=float(v[1]), x3=float(v[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])

    def as_list(self) -> List[float]:
        return [self.x1, self.x2, self.x3]

    def angle_to(self, other: "BlochPoint") -> float:
        """Great-circle distance in radians."""
        return angular_distance(self.as_array(), other.as_array())


NORTH = BlochPoint(x1=0.0, x2=0.0, x3=1.0)
SOUTH = BlochPoint(x1=0.0, x2=0.0, x3=-1.0)


def angular_distance(a: np.ndarray, b: np.ndarray) -> float:
    # atan2 form stays accurate for nearly equal or antipodal points
    return float(math.atan2(np.linalg.norm(np.cross(a, b)), float(np.dot(a, b))))


class Control(BaseModel):
    """A control value with both components in [-1, 1]."""

    model_config = ConfigDict(frozen=True)

    u1: float = Field(ge=-1.0, le=1.0)
    u2: float = Field(ge=-1.0, le=1.0)

    @property
    def is_bang(self) -> bool:
        return abs(self.u1) == 1.0 and abs(self.u2) == 1.0

    def negated(self) -> "Control":
        return Control(u1=-self.u1, u2=-self.u2)

    def as_tuple(self) -> Tuple[float, float]:
        return (self.u1, self.u2)


class FamilyTag(str, Enum):
    """Initial bang control of an extremal family."""

    PP = "pp"
    PM = "pm"
    MM = "mm"
    MP = "mp"

    @classmethod
    def from_signs(cls, u1: float, u2: float) -> "FamilyTag":
        return _FAMILY_BY_SIGNS[(1 if u1 > 0 else -1, 1 if u2 > 0 else -1)]

    def control(self) -> Control:
        u1, u2 = _SIGNS_BY_FAMILY[self]
        return Control(u1=u1, u2=u2)

    def signs(self) -> Tuple[int, int]:
        return _SIGNS_BY_FAMILY[self]

    def next_in_cycle(self) -> "FamilyTag":
        """Control that follows this one on an extremal."""
        order = _CYCLE
        return order[(order.index(self) + 1) % 4]

    def cycle_after(self) -> List["FamilyTag"]:
        """The four bang controls of one block, in the order they are applied."""
        out = []
        tag = self
        for _ in range(4):
            tag = tag.next_in_cycle()
            out.append(tag)
        return out

    def first_switch_index(self) -> int:
        """Index of the switching function that ends the first arc."""
        return 2 if self in (FamilyTag.PP, FamilyTag.MM) else 1


_SIGNS_BY_FAMILY = {
    FamilyTag.PP: (1, 1),
    FamilyTag.PM: (1, -1),
    FamilyTag.MM: (-1, -1),
    FamilyTag.MP: (-1, 1),
}
_FAMILY_BY_SIGNS = {v: k for k, v in _SIGNS_BY_FAMILY.items()}
_CYCLE = [FamilyTag.PP, FamilyTag.PM, FamilyTag.MM, FamilyTag.MP]


class Arc(BaseModel):
    model_config = ConfigDict(frozen=True)

    control: Control
    duration: float = Field(ge=0.0)


class ControlSchedule(BaseModel):
    """An ordered list of constant-control arcs."""

    model_config = ConfigDict(frozen=True)

    arcs: Tuple[Arc, ...] = ()

    @classmethod
    def from_pairs(cls, pairs: List[Tuple[Tuple[float, float], float]]) -> "ControlSchedule":
        return cls(
            arcs=tuple(
                Arc(control=Control(u1=u[0], u2=u[1]), duration=d) for u, d in pairs
            )
        )

    @property
    def total_duration(self) -> float:
        return float(math.fsum(arc.duration for arc in self.arcs))

    def switch_times(self) -> List[float]:
        """Times at which the control changes, excluding 0 and the final time."""
        times = []
        t = 0.0
        for current, following in zip(self.arcs, self.arcs[1:]):
            t += current.duration
            if current.control != following.control:
                times.append(t)
        return times

    def extended(self, control: Control, duration: float) -> "ControlSchedule":
        return ControlSchedule(arcs=self.arcs + (Arc(control=control, duration=duration),))


class Trajectory(BaseModel):
    """Sampled states with the control active on the interval ending at each sample."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray
    controls: np.ndarray
    states: np.ndarray

    @property
    def final_state(self) -> BlochPoint:
        return BlochPoint.from_array(self.states[-1])

    def __len__(self) -> int:
        return int(self.times.shape[0])


class SwitchingState(BaseModel):
    """Switching functions and the cost multiplier of a normal extremal."""

    model_config = ConfigDict(frozen=True)

    phi0: float
    phi1: float
    phi2: float
    lambda0: float = Field(le=0.0)

    def as_array(self) -> np.ndarray:
        return np.array([self.phi0, self.phi1, self.phi2])

    def with_phi(self, phi: np.ndarray) -> "SwitchingState":
        return SwitchingState(
            phi0=float(phi[0]), phi1=float(phi[1]), phi2=float(phi[2]), lambda0=self.lambda0
        )

    def hamiltonian(self) -> float:
        return self.phi0 + abs(self.phi1) + abs(self.phi2) + self.lambda0


class ExtremalSpec(BaseModel):
    """
    Address of a point on an extremal of the first-switch family.

    ``phase`` is 0 while still on the first arc; otherwise it is the 1-based
    position inside the current four-arc block.
    """

    model_config = ConfigDict(frozen=True)

    family: FamilyTag
    s: float = Field(ge=0.0)
    n: int = Field(ge=0)
    phase: int = Field(ge=0, le=4)
    leftover: float = Field(ge=0.0)
    v: float = Field(gt=0.0)

    @property
    def total_time(self) -> float:
        if self.phase == 0:
            return self.leftover
        return self.s + (4 * self.n + self.phase - 1) * self.v + self.leftover


class SwitchCurveSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    k: int = Field(ge=1)
    s: float
    point: BlochPoint
    incoming: FamilyTag
    outgoing: FamilyTag
    tangent: Tuple[float, float, float]


class RefractionResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    c1: float
    c2: float
    residual: float
    locally_optimal: bool


class FrontSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    theta: float
    endpoint: BlochPoint


class FrontReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    time: float
    samples: List[FrontSample]
    intersections: List[Tuple[int, int]]

    @property
    def self_intersecting(self) -> bool:
        return bool(self.intersections)


class SnakeReport(BaseModel):
    """Pre-disk extremals of the four families, compared pairwise across families."""

    model_config = ConfigDict(frozen=True)

    n_paths: int
    crossings: int
    min_distance: float

    @property
    def disjoint(self) -> bool:
        return self.crossings == 0


class LocusCurve(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    label: str
    control: Tuple[Optional[float], Optional[float]]
    points: np.ndarray


class SynthesisResult(BaseModel):
    family: FamilyTag
    s: float
    n: int
    phase: int
    leftover: float
    total_time: float
    physical_time: float
    switch_times: List[float]
    final_state: List[float]
    residual: float


class StrategyReport(BaseModel):
    strategy: str
    alpha: float
    n: int
    gamma: Optional[float] = None
    arc_duration: float
    transfer_time_normalized: float
    transfer_time_physical: Optional[float] = None
    final_state: List[float]
    miss_angle: float
    schedule: ControlSchedule = Field(exclude=True)


class OracleResult(BaseModel):
    target: List[float]
    t_lower: float
    t_lo: float
    t_hi: float
    dt: float
    eps: float
    frontier_peak: int
    assumption: str = "bang-only search: four saturated controls, switching on the dt grid"

    @model_validator(mode="after")
    def _ordered(self) -> "OracleResult":
        if self.t_lo > self.t_hi:
            raise ValueError("bracket lower end exceeds upper end")
        return self


class StructureReport(BaseModel):
    passed: bool
    n_extremals: int
    worst_first_switch_excess: float
    worst_gap_spread: float
    alternation_failures: int
    details: Dict[str, Any] = Field(default_factory=dict)


class CheckResult(BaseModel):
    name: str
    passed: bool
    worst: float
    limit: float


class SuiteReport(BaseModel):
    suite: str
    seed: int
    passed: bool
    checks: List[CheckResult]
