import math
from typing import Callable, List

import numpy as np
import pytest

from bloch_synthesis.config import Settings, reset_settings
from bloch_synthesis.core import make_params
from bloch_synthesis.models import BlochPoint, FamilyTag, NormalizedParams
from bloch_synthesis.switching import interbang_duration, s_max
from bloch_synthesis.synthesis import extremal_point, pre_disk_arcs


@pytest.fixture
def params() -> NormalizedParams:
    return make_params(0.25)


@pytest.fixture
def asymmetric() -> NormalizedParams:
    return make_params(0.25, math.pi / 8)


@pytest.fixture
def settings(monkeypatch: pytest.MonkeyPatch) -> Settings:
    for name in ("BLOCH_TOL", "BLOCH_SEED", "BLOCH_LOG_LEVEL", "BLOCH_DEBUG"):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield Settings(_env_file=None)
    reset_settings()


@pytest.fixture
def seeded_targets(params: NormalizedParams) -> Callable[[int, int], List[BlochPoint]]:
    """Points on random extremals, taken before they enter the south-pole disk."""

    def draw(count: int, seed: int) -> List[BlochPoint]:
        rng = np.random.default_rng(seed)
        radius = params.exclusion_radius()
        families = list(FamilyTag)
        out = []
        while len(out) < count:
            family = families[int(rng.integers(0, 4))]
            s = float(rng.uniform(0.1, 0.9)) * s_max(family, params)
            v = interbang_duration(s, family, params)
            _, entry = pre_disk_arcs(family, s, v, params, radius)
            if entry is None:
                continue
            t = float(rng.uniform(0.3, 0.9)) * entry
            out.append(extremal_point(t, family, s, params))
        return out

    return draw


@pytest.fixture
def anyio_backend() -> str:
    return "asyncio"
