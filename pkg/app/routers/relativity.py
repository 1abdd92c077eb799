from fastapi import APIRouter
from pydantic import BaseModel, Field

from app.models import RelativityReport
from app.relativity import parse_graph, relativity_report

router = APIRouter()


class RelativityRequest(BaseModel):
    graph: str = Field(..., description="Graph as 'n; edges: u-v,...'")
    k: int = Field(..., ge=1)


@router.post("/relativity", response_model=RelativityReport)
def relativity(request: RelativityRequest):
    return relativity_report(parse_graph(request.graph), request.k)
