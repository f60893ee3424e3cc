from __future__ import annotations

import os
from dataclasses import dataclass, fields

from .exceptions import ParameterError


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(f"Environment variable {name} must be an integer, got {raw!r}")


def _env_flag(name: str, default: bool) -> bool:
    raw = os.environ.get(name)
    if raw is None:
        return default
    return raw.strip().lower() in ("1", "true", "yes", "on")


@dataclass(frozen=True)
class Budgets:
    """
    Hard caps for exhaustive computations. Exceeding one raises BudgetError,
    nothing is ever truncated silently.
    """

    max_enumeration_bits: int = 24
    max_syndrome_bits: int = 20
    max_socket_count: int = 9
    max_members: int = 10**6
    max_oracle_work: int = 5 * 10**7
    max_exact_degree: int = 5000

    @classmethod
    def from_env(cls) -> "Budgets":
        """
        Reads overrides from ACWD_MAX_ENUMERATION_BITS, ACWD_MAX_SYNDROME_BITS,
        ACWD_MAX_SOCKET_COUNT, ACWD_MAX_MEMBERS, ACWD_MAX_ORACLE_WORK and
        ACWD_MAX_EXACT_DEGREE.
        """
        kwargs = {}
        for f in fields(cls):
            kwargs[f.name] = _env_int(f"ACWD_{f.name.upper()}", f.default)
        return cls(**kwargs)


@dataclass(frozen=True)
class Settings:
    workers: int = 4
    show_progress: bool = False

    @classmethod
    def from_env(cls) -> "Settings":
        return cls(
            workers=max(1, _env_int("ACWD_WORKERS", cls.workers)),
            show_progress=_env_flag("ACWD_PROGRESS", cls.show_progress),
        )
