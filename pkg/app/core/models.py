from pydantic import BaseModel, Field
from typing import List, Optional, Tuple
from enum import Enum


class VerticalSide(str, Enum):
    NORTH = "north"
    SOUTH = "south"

    @property
    def opposite(self) -> "VerticalSide":
        return VerticalSide.SOUTH if self is VerticalSide.NORTH else VerticalSide.NORTH


class Direction(str, Enum):
    UPWARD = "upward"
    DOWNWARD = "downward"


class Orientation(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


class Pointing(str, Enum):
    EAST = "east"
    WEST = "west"


class ArcSign(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


class ShieldKind(str, Enum):
    FULL = "full"
    HALF = "half"


class Turn(str, Enum):
    RIGHT_OF = "right-of"
    LEFT_OF = "left-of"
    SAME = "same"


class Priority(str, Enum):
    P_FIRST = "p-first"
    Q_FIRST = "q-first"
    EQUAL = "equal"


class OutputFormat(str, Enum):
    JSON = "json"
    ASCII = "ascii"
    SVG = "svg"


# Tile system file format
class TileDescription(BaseModel):
    name: str = Field(..., description="Unique tile type name")
    north: Tuple[str, int] = Field(("", 0), description="North glue as [label, strength]")
    east: Tuple[str, int] = Field(("", 0), description="East glue as [label, strength]")
    south: Tuple[str, int] = Field(("", 0), description="South glue as [label, strength]")
    west: Tuple[str, int] = Field(("", 0), description="West glue as [label, strength]")


class SeedTileDescription(BaseModel):
    x: int
    y: int
    tile: str = Field(..., description="Name of a declared tile type")


class SystemDescription(BaseModel):
    tiles: List[TileDescription] = Field(..., description="Tile types of the system")
    seed: List[SeedTileDescription] = Field(..., description="Seed assembly, one entry per tile")


class PathStep(BaseModel):
    x: int
    y: int
    tile: str


# Request/Response Models
class SystemRequest(BaseModel):
    system: SystemDescription = Field(..., description="Tile system in the JSON file format")


class RunRequest(SystemRequest):
    budget: Optional[int] = Field(None, description="Saturation cap per axis; defaults to the classification bound")


class PathsRequest(SystemRequest):
    max_len: int = Field(6, ge=0, description="Longest producible path to enumerate")


class CutsRequest(SystemRequest):
    path: List[PathStep] = Field(..., description="A producible path of the system")
    budget: Optional[int] = Field(None, description="Node budget for exhaustive searches")


class DecomposeRequest(SystemRequest):
    path: Optional[List[PathStep]] = Field(None, description="Path to decompose; defaults to the canonical path")
    column: int = Field(..., description="Column c")
    side: VerticalSide = Field(VerticalSide.SOUTH, description="Decomposition side for dominant arcs")
    arcs: bool = Field(False, description="Emit the dominant-arc decomposition instead of spans")
    budget: Optional[int] = None


class CanonicalRequest(SystemRequest):
    column: int = Field(..., description="Column c")
    strict: bool = Field(False, description="Enforce the column window of the canonical construction")
    budget: Optional[int] = None


class ShieldRequest(SystemRequest):
    path: List[PathStep] = Field(..., description="Canonical path for the column")
    column: int = Field(..., description="Column c")
    s_index: int = Field(..., description="First glue index s of the shield cut")
    candidate: List[PathStep] = Field(..., description="Candidate shield S")
    shield_column: Optional[int] = Field(None, description="Override for L(c)")


class VerifyRequest(BaseModel):
    suite: str = Field("all", description="Registered check id, suite name or 'all'")
    samples: Optional[int] = Field(None, ge=0, description="Sampled systems per check")
    rng_seed: Optional[int] = Field(None, description="Generator seed")
    budget: Optional[int] = None
    exhaustive: bool = Field(False, description="Every system up to renaming glue labels instead of samples")
    max_tiles: Optional[int] = Field(None, ge=1, description="Largest tile set of generated systems")
    alphabet_size: Optional[int] = Field(None, ge=1, description="Glue labels of generated systems")


class RenderRequest(SystemRequest):
    path: Optional[List[PathStep]] = None
    format: OutputFormat = Field(OutputFormat.ASCII, description="Rendering format")


class HealthResponse(BaseModel):
    status: str
    version: str
