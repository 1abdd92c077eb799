from fastapi import APIRouter
from pydantic import BaseModel

from app.bounds import bound_report, crossover, n_cycles_bounds
from app.models import BoundReport, CrossoverResult

router = APIRouter()


class CycleCountBounds(BaseModel):
    p: int
    lower: int
    upper: int


@router.get("/bounds", response_model=BoundReport)
def bounds(n: int, k: int):
    return bound_report(n, k)


@router.get("/crossover/{k}", response_model=CrossoverResult)
def crossover_points(k: int):
    return crossover(k)


@router.get("/lemma2/{p}", response_model=CycleCountBounds)
def cycle_count_bounds(p: int):
    lower, upper = n_cycles_bounds(p)
    return CycleCountBounds(p=p, lower=lower, upper=upper)
