"""Numeric configuration shared by every check."""

from __future__ import annotations

import logging
import os
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)

_ENV_FIELDS: dict[str, str] = {
    "NICA_TOL": "tol",
    "NICA_TOL_PSD": "tol_psd",
    "NICA_RANK_REL_TOL": "rank_rel_tol",
    "NICA_GRID_CAP": "grid_cap",
    "NICA_GRAM_CAP": "gram_cap",
}


class NumericConfig(BaseModel):
    """Tolerances and size caps."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    tol: float = Field(1e-9, gt=0.0)
    tol_psd: float = Field(1e-8, gt=0.0)
    rank_rel_tol: float = Field(1e-10, gt=0.0)
    halfwidth_exponent: int = Field(60, ge=1)
    grid_cap: int = Field(10_000, ge=1)
    gram_cap: int = Field(2_000, ge=1)
    commutation_cap: int = Field(12, ge=1)
    dimension_scaled: bool = True

    @property
    def halfwidth(self) -> Fraction:
        """Absolute half-width assigned to decimal real generators."""
        return Fraction(1, 2**self.halfwidth_exponent)

    def scaled_tol(self, dim: int) -> float:
        return self.tol * max(1, dim) if self.dimension_scaled else self.tol

    def scaled_tol_psd(self, dim: int) -> float:
        return self.tol_psd * max(1, dim) if self.dimension_scaled else self.tol_psd

    @classmethod
    def from_env(cls, overrides: dict[str, object] | None = None) -> NumericConfig:
        """Build a config from explicit overrides, then environment, then defaults."""
        values: dict[str, object] = {}
        for env_var, field in _ENV_FIELDS.items():
            raw = os.environ.get(env_var)
            if raw:
                values[field] = raw
                logger.debug(f"{field} taken from {env_var}={raw}")
        values.update(overrides or {})
        return cls.model_validate(values)


DEFAULT_CONFIG = NumericConfig()
