from typing import Literal, Optional, Tuple
import re

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from closecomm import __version__

_SCOPE_PATTERN = re.compile(r"^(all|global|borough=\d+(,\d+)*)$")


class AnalysisSettings(BaseSettings):
    """Process-wide defaults for the analysis pipeline.

    Every field can be overridden through a ``CLOSECOMM_``-prefixed
    environment variable or an ``.env`` file. The CLI builds per-run
    copies through ``model_validate`` so overrides are validated too.
    """

    model_config = SettingsConfigDict(
        env_prefix="CLOSECOMM_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    app_name: str = Field(default="closecomm")
    app_version: str = Field(default=__version__)  # Semantic Versioning

    # Reported 2-club floor
    min_club_nodes: int = Field(
        default=3,
        ge=1,
        description="Minimum node count of a reported 2-club",
    )
    min_club_edges: int = Field(
        default=3,
        ge=0,
        description="Minimum induced edge count of a reported 2-club",
    )

    # Resource limits
    cycle_cap: int = Field(
        default=50_000_000,
        ge=1,
        description="Maximum number of stored basic cycles",
    )
    branch_budget: int = Field(
        default=10_000_000,
        ge=1,
        description="Maximum search-tree expansions per enumeration scope",
    )

    # Pipeline selection
    scope: str = Field(
        default="all",
        description="all, global, or borough=<id>[,<id>...]",
    )
    threshold: int = Field(
        default=1,
        ge=1,
        description="Bipartite projection threshold t",
    )
    seed_order: Literal["label", "degree"] = Field(default="label")
    workers: int = Field(
        default=1,
        ge=1,
        description="Process pool size for per-borough enumeration",
    )
    reconcile: bool = Field(
        default=False,
        description="Also enumerate globally and reconcile with borough results",
    )

    log_level: str = Field(default="WARNING")

    @field_validator("scope")
    @classmethod
    def check_scope(cls, value: str) -> str:
        value = value.strip().lower()
        if not _SCOPE_PATTERN.match(value):
            raise ValueError(
                f"scope must be 'all', 'global' or 'borough=<id>[,<id>...]', got {value!r}"
            )
        return value

    @field_validator("log_level")
    @classmethod
    def check_log_level(cls, value: str) -> str:
        value = value.upper()
        if value not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {value!r}")
        return value

    @property
    def scope_borough_ids(self) -> Optional[Tuple[int, ...]]:
        """Borough ids selected by ``scope``, or None when not restricted."""
        if not self.scope.startswith("borough="):
            return None
        return tuple(sorted({int(part) for part in self.scope.split("=", 1)[1].split(",")}))

    @property
    def enumerates_global(self) -> bool:
        return self.scope == "global" or self.reconcile

    @property
    def enumerates_boroughs(self) -> bool:
        return self.scope != "global"


settings = AnalysisSettings()
