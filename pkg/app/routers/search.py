from typing import Optional

from fastapi import APIRouter
from pydantic import BaseModel, Field

from app.config import settings
from app.constructions import construct
from app.core import enumerate_cycles
from app.exceptions import InstanceTooLarge
from app.logger import get_logger
from app.models import ChordDiagram, SearchOutcome
from app.search import search_c

router = APIRouter()
logger = get_logger(__name__)


class SearchRequest(BaseModel):
    n: int = Field(..., ge=6)
    k: int = Field(..., ge=1)
    max_p: Optional[int] = Field(None, ge=1)
    time_limit: Optional[float] = Field(None, gt=0, description="Seconds")


class ConstructionResponse(BaseModel):
    kind: str
    text: str
    diagram: ChordDiagram
    total_cycles: int


@router.post("/search", response_model=SearchOutcome)
def search(request: SearchRequest):
    if request.n > settings.API_SEARCH_MAX_N:
        raise InstanceTooLarge(
            f"The HTTP surface searches n <= {settings.API_SEARCH_MAX_N}; use the command line for n={request.n}"
        )
    logger.info("Search requested", n=request.n, k=request.k)
    return search_c(request.n, request.k, max_p=request.max_p, time_limit=request.time_limit)


@router.get("/constructions/{kind}", response_model=ConstructionResponse)
def construction(kind: str, n: Optional[int] = None, p: Optional[int] = None, stage: Optional[int] = None):
    diagram = construct(kind, n=n, p=p, stage=stage)
    return ConstructionResponse(
        kind=kind,
        text=diagram.text,
        diagram=diagram,
        total_cycles=enumerate_cycles(diagram).total_cycles,
    )
