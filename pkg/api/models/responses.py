from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class TaskStatus(str, Enum):
    """Task status enumeration"""
    PENDING = "PENDING"
    PROGRESS = "PROGRESS"
    SUCCESS = "SUCCESS"
    FAILURE = "FAILURE"
    REVOKED = "REVOKED"


class Exponent(BaseModel):
    exp_num: int = Field(..., description="Numerator of the exponent of x (lowest terms)")
    exp_den: int = Field(..., description="Denominator of the exponent of x")


class SeriesTerm(Exponent):
    coeff: str = Field(..., description="Coefficient in the tower generators and free parameters")


class SeriesModel(BaseModel):
    terms: List[SeriesTerm] = Field(..., description="Nonzero terms, increasing exponents")
    known_order: Optional[Exponent] = Field(None, description="Exact modulo O(x^known_order); null when exact")


class CenterModel(BaseModel):
    y0: str = Field(..., description="Initial value of y")
    p0: str = Field(..., description="Initial value of y'")


class TowerLevelModel(BaseModel):
    generator: str = Field(..., description="Generator name used in coefficients")
    role: str = Field("class", description="class: stands for every conjugate; choice: one fixed root")
    coeffs: List[str] = Field(..., description="Defining polynomial, dense coefficients low to high degree")


class SolutionModel(BaseModel):
    """One solution truncation, as in the CLI JSON document"""
    center: Optional[CenterModel] = Field(None, description="Initial tuple (y0, p0); null for symbolic lines")
    kind: str = Field(..., description="Constant, GenericNonCritical, Determined or Family")
    ramification: int = Field(..., description="Ramification order n")
    free_parameters: List[str] = Field(default_factory=list, description="Names of free constants")
    tower: List[TowerLevelModel] = Field(default_factory=list, description="Defining polynomials of the coefficient field")
    series: Optional[SeriesModel] = Field(None, description="Truncated series (powers of 1/x at infinity)")
    guaranteed_terms: int = Field(..., description="Number of terms the truncation was computed to")
    chart: str = Field(..., description="finite, reciprocal (poles at x = 0) or infinity")
    note: Optional[str] = Field(None, description="Remarks such as non-uniqueness at infinity")


class SolveResponse(BaseModel):
    """Response model for one solved equation"""
    equation: str = Field(..., description="Equation as submitted")
    mode: str = Field(..., description="finite or infinity")
    truncation_bound: int = Field(..., description="Number of terms used")
    removed_factors: List[str] = Field(default_factory=list, description="Content factors removed before solving")
    notes: List[str] = Field(default_factory=list, description="Remarks about the solution set")
    solutions: List[SolutionModel] = Field(..., description="Solutions in canonical order")
    source: str = Field(..., description="cache or computed")
    processing_time: float = Field(..., description="Time taken in seconds")


class AsyncTaskResponse(BaseModel):
    """Response model for async task submission"""
    task_id: str = Field(..., description="Unique task identifier")
    status: str = Field(..., description="Current task status")
    message: str = Field(..., description="Status message")


class TaskStatusResponse(BaseModel):
    """Response model for task status check"""
    task_id: str = Field(..., description="Task identifier")
    status: TaskStatus = Field(..., description="Current task status")
    progress: Optional[int] = Field(None, description="Task progress percentage (0-100)")
    message: Optional[str] = Field(None, description="Status message")
    result: Optional[Dict[str, Any]] = Field(None, description="Task result if completed")
    error: Optional[str] = Field(None, description="Error message if failed")


class CacheStats(BaseModel):
    """Cache statistics model"""
    total_items: int = Field(..., description="Total cached items")
    total_size_bytes: int = Field(..., description="Total cache size in bytes")
    max_size: int = Field(..., description="Maximum cache size")
    ttl_hours: float = Field(..., description="Cache TTL in hours")


class EngineStats(BaseModel):
    solves: int = Field(..., description="Solves computed by this process")
    cache_hits: int = Field(..., description="Requests answered from the cache")
    total_processing_time: float = Field(..., description="Seconds spent solving")


class SystemStats(BaseModel):
    """System statistics model"""
    engine: EngineStats
    cache: Optional[CacheStats] = None
    system_status: str = Field(..., description="Overall system status")


class HealthResponse(BaseModel):
    """Health check response model"""
    status: str = Field(..., description="System health status")
    timestamp: str = Field(..., description="Health check timestamp")
    version: str = Field(..., description="API version")
    components: Dict[str, str] = Field(..., description="Component health status")


class ErrorResponse(BaseModel):
    """Error response model"""
    error: str = Field(..., description="Error type")
    message: str = Field(..., description="Error message")
    details: Optional[Dict[str, Any]] = Field(None, description="Additional error details")
