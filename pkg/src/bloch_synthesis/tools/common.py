"""
Helpers shared by the tool classes.
"""

from functools import partial
from typing import Any, Callable, Optional, TypeVar

import anyio.to_thread

from ..config import Settings
from ..services.engine import SynthesisEngine

T = TypeVar("T")


def engine_for(
    settings: Settings,
    alpha: Optional[float] = None,
    beta: Optional[float] = None,
    E: Optional[float] = None,
    M1: Optional[float] = None,
    M2: Optional[float] = None,
) -> SynthesisEngine:
    return SynthesisEngine.from_arguments(settings, alpha=alpha, beta=beta, E=E, M1=M1, M2=M2)


async def offload(func: Callable[..., T], *args: Any, **kwargs: Any) -> T:
    """Run a blocking call in a worker thread."""
    return await anyio.to_thread.run_sync(partial(func, *args, **kwargs))
