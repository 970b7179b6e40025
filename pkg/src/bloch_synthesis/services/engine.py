"""
Synthesis engine shared by the CLI and the tool server.
"""

import logging
import math
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from ..config import Settings
from ..core import make_params, normalize_params, simulate
from ..exceptions import BetaNotQuarterPi, DegenerateFields, InvalidArguments
from ..models import (
    NORTH,
    QUARTER_PI,
    BlochPoint,
    FamilyTag,
    FrontReport,
    LocusCurve,
    NormalizedParams,
    OracleResult,
    PhysicalParams,
    RefractionResult,
    StrategyReport,
    SwitchCurveSample,
    Trajectory,
)
from ..oracle import min_time_brackets, verify_bb_structure
from ..suboptimal import compare, s1_schedule, s2_schedule
from ..switching import (
    first_switch_of_theta,
    interbang_duration,
    s_max,
    theta_of_alpha,
    v_general_closed_form,
    v_taylor,
)
from ..synthesis import (
    extremal_front,
    extremal_schedule,
    extremal_spec,
    refraction_test,
    singular_loci,
    solve_synthesis,
    spec_point_array,
    spin_flip_time,
    switching_curve,
    synthesis_result,
)

logger = logging.getLogger(__name__)


def parse_family(value: str) -> FamilyTag:
    try:
        return FamilyTag(value.lower())
    except ValueError:
        raise InvalidArguments(
            f"unknown family {value!r}", {"families": [f.value for f in FamilyTag]}
        ) from None


def parse_point(value: Any) -> BlochPoint:
    """
    Accept "x,y,z" or a 3-sequence; the vector is normalized onto the sphere.

    Raises:
        InvalidArguments: if the value is not three finite numbers with nonzero norm
    """
    try:
        if isinstance(value, str):
            coords = [float(part) for part in value.split(",")]
        else:
            coords = [float(part) for part in value]
    except (TypeError, ValueError):
        raise InvalidArguments(f"cannot read a point from {value!r}") from None
    vector = np.array(coords)
    if vector.shape != (3,) or not np.all(np.isfinite(vector)) or np.linalg.norm(vector) == 0.0:
        raise InvalidArguments(f"a point needs three finite coordinates, got {value!r}")
    return BlochPoint.from_array(vector)


class SynthesisEngine:
    """
    Facade bound to one parameter set.

    Every public method returns data ready for ``json.dumps`` or the model the
    artifact writers consume.
    """

    def __init__(self, params: NormalizedParams, settings: Settings):
        """
        Initialize the engine.

        Args:
            params: Normalized system parameters
            settings: Numerical defaults
        """
        self.params = params
        self.settings = settings

    @classmethod
    def from_arguments(
        cls,
        settings: Settings,
        alpha: Optional[float] = None,
        beta: Optional[float] = None,
        E: Optional[float] = None,
        M1: Optional[float] = None,
        M2: Optional[float] = None,
    ) -> "SynthesisEngine":
        """
        Build an engine from either (alpha, beta) or (E, M1, M2).

        Raises:
            InvalidArguments: if both or neither parameter sets are given
        """
        physical = [E, M1, M2]
        has_physical = any(v is not None for v in physical)
        if (alpha is not None) == has_physical:
            raise InvalidArguments(
                "give exactly one of --alpha/--beta or --E/--M1/--M2",
                {"alpha": alpha, "E": E, "M1": M1, "M2": M2},
            )
        if has_physical:
            if any(v is None for v in physical):
                raise InvalidArguments(
                    "E, M1 and M2 must all be given", {"E": E, "M1": M1, "M2": M2}
                )
            params = normalize_params(_validated(lambda: PhysicalParams(E=E, M1=M1, M2=M2)))
        else:
            b = QUARTER_PI if beta is None else beta
            params = _validated(lambda: make_params(alpha, b))  # type: ignore[arg-type]
        return cls(params, settings)

    def describe(self) -> Dict[str, Any]:
        """Normalized parameters with the per-family s_max and the monodromy angle."""
        p = self.params
        out: Dict[str, Any] = {
            "alpha": p.alpha,
            "beta": p.beta,
            "k": p.k,
            "s_max": {f.value: s_max(f, p) for f in FamilyTag},
            "theta": theta_of_alpha(p.alpha),
            "exclusion_radius": p.exclusion_radius(self.settings.exclusion_factor),
        }
        if p.is_symmetric:
            out["spin_flip_time"] = spin_flip_time(p)
        return out

    def switching_times(
        self, family: FamilyTag, s: Optional[float] = None, theta: Optional[float] = None
    ) -> Dict[str, Any]:
        """
        Interior arc duration after a first arc of length ``s``, by root finding and
        by closed form; when ``theta`` is given, ``s`` is its first switching time.
        """
        p = self.params
        top = s_max(family, p)
        if theta is not None:
            s = min(first_switch_of_theta(theta, p, family, self.settings.root_samples), top)
        if s is None:
            raise InvalidArguments("either s or theta is required")
        v = interbang_duration(s, family, p, self.settings.root_samples, self.settings.root_xtol)
        out: Dict[str, Any] = {
            "family": family.value,
            "s": s,
            "s_max": top,
            "v": v,
            "v_closed_form": v_general_closed_form(s, family, p, self.settings.arccos_clamp),
        }
        if p.is_symmetric:
            out["v_taylor"] = v_taylor(s, p.alpha)
        return out

    def solve(
        self,
        target: BlochPoint,
        tol: Optional[float] = None,
        exclusion_factor: Optional[float] = None,
    ) -> Dict[str, Any]:
        settings = self.settings
        spec, _ = solve_synthesis(
            target,
            self.params,
            tol=settings.tol if tol is None else tol,
            exclusion_factor=(
                settings.exclusion_factor if exclusion_factor is None else exclusion_factor
            ),
        )
        return synthesis_result(spec, target, self.params).model_dump(mode="json")

    def extremal_point(self, family: FamilyTag, s: float, t: float) -> Dict[str, Any]:
        spec = extremal_spec(t, family, s, self.params)
        point = spec_point_array(spec, self.params)
        return {
            "family": family.value,
            "s": s,
            "t": t,
            "n": spec.n,
            "phase": spec.phase,
            "leftover": spec.leftover,
            "v": spec.v,
            "point": [float(c) for c in point],
        }

    def extremal_trajectory(
        self, family: FamilyTag, s: float, time: float, dt: float
    ) -> Trajectory:
        schedule = extremal_schedule(family, s, time, self.params)
        return simulate(NORTH, schedule, self.params, dt)

    def curve_samples(
        self, k: int, samples: int, family: FamilyTag = FamilyTag.PP
    ) -> List[Tuple[SwitchCurveSample, RefractionResult]]:
        """
        Samples of the k-th switching curve with their refraction verdicts.

        Samples where the two fields are parallel carry NaN coefficients.
        """
        if samples < 2:
            raise InvalidArguments(f"at least 2 samples required, got {samples!r}")
        grid = np.linspace(0.0, s_max(family, self.params), samples)
        out = []
        step = self.settings.tangent_step_fraction
        for sample in switching_curve(k, grid, family, self.params, step):
            try:
                result = refraction_test(sample, self.params, self.settings.refraction_residual_tol)
            except DegenerateFields:
                result = RefractionResult(
                    c1=math.nan, c2=math.nan, residual=math.nan, locally_optimal=False
                )
            out.append((sample, result))
        return out

    def switching_curve(
        self, k: int, samples: int, family: FamilyTag = FamilyTag.PP
    ) -> List[Dict[str, Any]]:
        return [
            {
                "k": sample.k,
                "s": sample.s,
                "point": sample.point.as_list(),
                "c1": result.c1,
                "c2": result.c2,
                "locally_optimal": result.locally_optimal,
            }
            for sample, result in self.curve_samples(k, samples, family)
        ]

    def front(self, time: float, samples: int) -> FrontReport:
        return extremal_front(time, samples, self.params)

    def loci(self, samples: int) -> List[LocusCurve]:
        return singular_loci(self.params, samples)

    def loci_summary(self, samples: int) -> List[Dict[str, Any]]:
        return [
            {"label": c.label, "control": list(c.control), "points": c.points.tolist()}
            for c in self.loci(samples)
        ]

    def suboptimal(self, strategy: str, start: FamilyTag = FamilyTag.PM) -> StrategyReport:
        """
        Raises:
            BetaNotQuarterPi: if the bounds differ
            InvalidArguments: for an unknown strategy
        """
        if not self.params.is_symmetric:
            raise BetaNotQuarterPi(
                "suboptimal strategies need equal bounds", {"beta": self.params.beta}
            )
        if strategy == "s1":
            return s1_schedule(self.params.alpha, start=start, scale=self.params.k)
        if strategy == "s2":
            return s2_schedule(self.params.alpha, scale=self.params.k)
        raise InvalidArguments(f"unknown strategy {strategy!r}", {"strategies": ["s1", "s2"]})

    @staticmethod
    def compare(alpha: float, strategy: str = "s1") -> Dict[str, Any]:
        ratio = compare(alpha, strategy)
        return {
            "alpha": alpha,
            "strategy": strategy,
            "ratio": ratio,
            "circle_ratio_limit": math.pi / 4,
        }

    def oracle(self, targets: Sequence[BlochPoint], dt: float, eps: float) -> List[OracleResult]:
        return min_time_brackets(targets, self.params, dt, eps, self.settings.oracle_max_steps)

    def verify_structure(
        self, n_theta: int = 100, horizon: float = 8.0 * math.pi
    ) -> Dict[str, Any]:
        return verify_bb_structure(self.params, n_theta, horizon).model_dump(mode="json")


def _validated(build: Any) -> Any:
    try:
        return build()
    except ValidationError as exc:
        messages = [err["msg"] for err in exc.errors()]
        raise InvalidArguments("invalid parameters", {"errors": messages}) from None
