from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field


class SearchMode(str, Enum):
    """Plain search with subsumption, or the same search with the iterability check."""

    DFSS = "dfss"
    IDFSS = "idfss"


class IterableCheck(str, Enum):
    FROM_ZONE = "from_zone"
    SEQUENCE_ONLY = "sequence_only"


class CyanEntry(str, Enum):
    """Which stack entry of the target state starts the checked path."""

    DEEPEST = "deepest"
    SHALLOWEST = "shallowest"


class WitnessZone(str, Enum):
    """Zone intersected with the iterable valuations: the node zone, or the exact successor zone."""

    ABSTRACTED = "abstracted"
    CONCRETE = "concrete"


class SearchResult(str, Enum):
    CYCLE_FOUND = "CycleFound"
    EMPTY = "Empty"


class SearchConfig(BaseModel):
    """Configuration for :func:`check`."""

    seed: int = Field(default=0, ge=0, lt=2**64, description="seed of the successor order shuffle")

    mode: SearchMode = Field(default=SearchMode.IDFSS, description="search algorithm")

    iterable_check: IterableCheck = Field(
        default=IterableCheck.FROM_ZONE, description="test iterability from the reached zone or for the bare path"
    )

    cyan_entry: CyanEntry = Field(default=CyanEntry.DEEPEST, description="stack entry the checked path starts from")

    witness_zone: WitnessZone = Field(default=WitnessZone.ABSTRACTED, description="zone tested against the witness")

    audit_witness: bool = Field(default=True, description="replay every iterability witness without abstraction")


class BenchConfig(BaseModel):
    """Configuration for :func:`run_bench`: one benchmark row for both search modes."""

    family: str = Field(description="model family: csma, csma-collision, fischer, fddi, traingate")

    n: int = Field(ge=1, description="number of processes")

    seeds: int = Field(default=20, ge=1, description="number of seeded runs per mode")

    first_seed: int = Field(default=0, ge=0, description="seed of the first run")

    property_family: Optional[str] = Field(default=None, description="property family, defaults to the model family")

    fixed: bool = Field(default=True, description="CSMA/CD: add the missing busy loop")

    nonzeno: bool = Field(default=True, description="CSMA/CD: require y >= 1 when leaving BUSY")

    scale: int = Field(default=1, ge=1, description="divide every constant by this factor")

    workers: int = Field(default=1, ge=1, description="process pool size, 1 runs in-process")
