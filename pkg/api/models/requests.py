from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field


class SolveMode(str, Enum):
    """Expansion point of the solutions"""
    FINITE = "finite"
    INFINITY = "infinity"


class SolveRequest(BaseModel):
    """Request model for one equation"""
    equation: str = Field(..., description="Polynomial F(y, p) in y and p, where p stands for y'",
                          min_length=1, max_length=2000)
    mode: SolveMode = Field(SolveMode.FINITE, description="finite: around x = 0; infinity: in powers of 1/x")
    terms: Optional[int] = Field(None, ge=1, description="Number of terms (default: the degree bound)")
    point: Optional[str] = Field(None, description='Restrict to one center "y0,p0" (finite mode only)')
    expand_conjugates: bool = Field(True, description="List every conjugate truncation")
    verify: bool = Field(False, description="Check residual orders and fail on violation")
    max_terms: Optional[int] = Field(None, ge=1, description="Safety cap on the number of terms")
    async_processing: bool = Field(False, description="Queue the solve on the Celery worker")

    class Config:
        json_schema_extra = {
            "example": {
                "equation": "p^2 - 4*y",
                "mode": "finite",
                "point": "0,0",
                "expand_conjugates": True,
                "verify": True,
                "async_processing": False
            }
        }

    def engine_arguments(self):
        return {
            "equation": self.equation,
            "mode": self.mode.value,
            "terms": self.terms,
            "point": self.point,
            "expand_conjugates": self.expand_conjugates,
            "verify": self.verify,
            "max_terms": self.max_terms,
        }


class BatchSolveRequest(BaseModel):
    """Request model for a batch of equations"""
    requests: List[SolveRequest] = Field(..., description="Equations to solve (max 10)", min_length=1, max_length=10)

    class Config:
        json_schema_extra = {
            "example": {
                "requests": [
                    {"equation": "p^2 - 4*y"},
                    {"equation": "p + y^2", "mode": "infinity"}
                ]
            }
        }
