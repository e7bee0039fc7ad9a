"""Computation budgets, overridable through environment variables.

SKEWBRACE_MAX_DEGREE   largest word degree for brute-force word enumeration (default 4)
SKEWBRACE_EVAL_CAP     cap on elementary evaluations in brute-force checks (default 1e7)
SKEWBRACE_MAX_ORDER    largest order accepted by the enumerator (default 16)
SKEWBRACE_LAMBDA_MAX   largest |A| for which Lambda_A is built densely (default 32)
"""

from __future__ import annotations

import os
from dataclasses import dataclass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    return int(float(raw))


@dataclass(frozen=True)
class Budget:
    max_degree: int
    eval_cap: int
    max_order: int
    lambda_max: int


def budget() -> Budget:
    return Budget(
        max_degree=_env_int("SKEWBRACE_MAX_DEGREE", 4),
        eval_cap=_env_int("SKEWBRACE_EVAL_CAP", 10_000_000),
        max_order=_env_int("SKEWBRACE_MAX_ORDER", 16),
        lambda_max=_env_int("SKEWBRACE_LAMBDA_MAX", 32),
    )
