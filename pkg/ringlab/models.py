# ringlab/models.py
import enum
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, Field


# ===================== ENUMS =====================
class Mode(enum.Enum):
    UNITAL = "unital"
    NONUNITAL = "nonunital"


class OutputFormat(enum.Enum):
    DOT = "dot"
    JSON = "json"


class MatrixShape(enum.Enum):
    FULL = "full"
    UPPER_TRIANGULAR = "upper_triangular"


class ArithOp(enum.Enum):
    ADD = "add"
    MUL = "mul"
    NEG = "neg"


class WitnessStatus(enum.Enum):
    FOUND = "found"
    EXCLUDED = "excluded"  # certified: no polynomial exists
    UNRESOLVED = "unresolved"  # nothing within the bounds


class Suite(enum.Enum):
    PAPER = "paper"
    PROPERTIES = "properties"


class IsoStatus(enum.Enum):
    ISOMORPHIC = "isomorphic"
    NON_ISOMORPHIC = "non_isomorphic"
    UNDECIDED = "undecided"


# ===================== GRAPHS =====================
class GraphDocument(BaseModel):
    """JSON interchange form of a CompressedGraph"""
    vertices: List[str]
    edges: List[Tuple[int, int]] = []
    loops: List[int] = []


# ===================== RING VALIDATION =====================
class AxiomFailure(BaseModel):
    axiom: str
    witness: List[int]


class RingReport(BaseModel):
    is_ring: bool
    is_unital: bool
    characteristic: int = Field(ge=0)
    failures: List[AxiomFailure] = []
    exhaustive: bool = True


class WitnessBounds(BaseModel):
    degree: int = Field(ge=0)
    coefficient: int = Field(ge=0)


# ===================== FILE FORMATS =====================
class RingTableFile(BaseModel):
    """`table:<path>` JSON: row-major tables, flat or nested"""
    order: int = Field(gt=0)
    add: List[Union[int, List[int]]]
    mul: List[Union[int, List[int]]]
    zero: int = 0
    identity: Optional[int] = None
    descriptor: Optional[str] = None


class SemidirectDataFile(BaseModel):
    """Z[1/m] ⋉ I data: L and Rm are value arrays indexed by element id"""
    m: int = Field(gt=0)
    ideal: str
    e: int = Field(ge=0)
    L: List[int]
    Rm: List[int]


# ===================== VERIFICATION =====================
REPORT_SCHEMA_VERSION = "1"


class VerificationItem(BaseModel):
    name: str
    criterion: str
    passed: bool
    detail: str = ""
    elapsed_seconds: float = 0.0
    unresolved: List[Tuple[str, str]] = []


class VerificationReport(BaseModel):
    schema_version: str = REPORT_SCHEMA_VERSION
    suite: Suite
    seed: int
    items: List[VerificationItem]
    passed: bool
    unresolved_count: int = 0

    def exit_code(self) -> int:
        if self.unresolved_count:
            return 4
        return 0 if self.passed else 1


# ===================== API SCHEMAS =====================
class GraphRequest(BaseModel):
    spec: str
    mode: Mode = Mode.NONUNITAL


class GraphResponse(BaseModel):
    descriptor: str
    order: int
    vertex_count: int
    graph: GraphDocument


class LatticeResponse(BaseModel):
    descriptor: str
    subrings: List[List[int]]
    complete: bool


class IntegralRequest(BaseModel):
    spec: str
    element: int = Field(ge=0)
    poly: str  # "c0,c1,..."


class IntegralResponse(BaseModel):
    annihilator: str
    degree: int


class SemidirectRequest(BaseModel):
    data: SemidirectDataFile
    degree: Optional[int] = Field(None, ge=0)
    coefficient: Optional[int] = Field(None, ge=0)


class SemidirectResponse(BaseModel):
    graph: GraphDocument
    candidate_count: int
    bound: int
    merges: int
    unresolved: List[Tuple[str, str]]


class VerifyRequest(BaseModel):
    suite: Suite = Suite.PAPER
    seed: Optional[int] = None


__all__ = [
    "Mode",
    "OutputFormat",
    "MatrixShape",
    "ArithOp",
    "WitnessStatus",
    "Suite",
    "IsoStatus",
    "GraphDocument",
    "AxiomFailure",
    "RingReport",
    "WitnessBounds",
    "RingTableFile",
    "SemidirectDataFile",
    "VerificationItem",
    "VerificationReport",
    "GraphRequest",
    "GraphResponse",
    "LatticeResponse",
    "IntegralRequest",
    "IntegralResponse",
    "SemidirectRequest",
    "SemidirectResponse",
    "VerifyRequest",
]
