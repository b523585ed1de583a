"""
CPU detection and worker-count resolution for the parallel sweeps.
"""
import logging
import os
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from decimcorr.errors import ParameterError

logger = logging.getLogger(__name__)

THREADS_ENV = "DECIMCORR_THREADS"


@dataclass
class HardwareCapabilities:
    """CPU assessment and the worker count chosen from it."""
    cpu_cores: int
    logical_cores: int

    recommended_threads: int
    source: str  # "flag", "env" or "cpu"
    warning_messages: List[str] = field(default_factory=list)


def detect_cpu() -> Tuple[int, int]:
    """(physical cores, logical cores)."""
    import psutil

    physical = psutil.cpu_count(logical=False) or 1
    logical = psutil.cpu_count(logical=True) or physical
    return physical, logical


def assess_threads(threads: Optional[int] = None) -> HardwareCapabilities:
    """
    Resolve the worker count.

    Args:
        threads: explicit --threads value; None or 0 means auto

    Returns:
        HardwareCapabilities; an explicit positive value wins, then the
        DECIMCORR_THREADS environment variable, then the physical core count.
    """
    physical, logical = detect_cpu()
    warnings_list = []

    if threads:
        if threads < 0:
            raise ParameterError(f"--threads must be >= 0, got {threads}")
        recommended, source = threads, "flag"
    else:
        env_value = os.environ.get(THREADS_ENV)
        recommended, source = physical, "cpu"
        if env_value:
            try:
                parsed = int(env_value)
            except ValueError:
                parsed = 0
            if parsed > 0:
                recommended, source = parsed, "env"
            else:
                warnings_list.append(f"ignoring {THREADS_ENV}={env_value!r}, expected a positive integer")

    if recommended > logical:
        warnings_list.append(f"{recommended} threads requested on {logical} logical cores")
    for warning in warnings_list:
        logger.warning(warning)
    logger.info(f"Using {recommended} thread(s) ({source}); {physical} physical / {logical} logical cores")

    return HardwareCapabilities(
        cpu_cores=physical,
        logical_cores=logical,
        recommended_threads=max(1, recommended),
        source=source,
        warning_messages=warnings_list,
    )


def resolve_threads(threads: Optional[int] = None) -> int:
    return assess_threads(threads).recommended_threads
