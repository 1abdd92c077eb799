from typing import List

from fastapi import APIRouter, Query
from pydantic import BaseModel, Field

from app.core import canonicalize, enumerate_cycles, parse_chord_list, parse_diagram
from app.models import CanonicalForm, ChordDiagram, CycleSpectrum, VerifyReport
from app.pancyclicity import realizable_lengths, required_lengths, verify

router = APIRouter()


class VerifyRequest(BaseModel):
    n: int = Field(..., ge=4, description="Vertices of the base cycle")
    k: int = Field(..., ge=1, description="Chords each cycle must use")
    chords: str = Field("", description="Chord list, e.g. 1-3,1-4")


class OracleResponse(BaseModel):
    n: int
    k: int
    closed_form: List[int]
    realizable: List[int]
    agrees: bool


@router.post("/verify", response_model=VerifyReport)
def verify_diagram(request: VerifyRequest):
    diagram = ChordDiagram(n=request.n, chords=parse_chord_list(request.chords))
    return verify(diagram, request.k)


@router.get("/spectrum", response_model=CycleSpectrum)
def cycle_spectrum(diagram: str = Query(..., description="Chord set as 'n: u-v,...'")):
    return enumerate_cycles(parse_diagram(diagram))


@router.get("/canonical", response_model=CanonicalForm)
def canonical_form(diagram: str = Query(..., description="Chord set as 'n: u-v,...'")):
    return canonicalize(parse_diagram(diagram))


@router.get("/oracle", response_model=OracleResponse)
def oracle(n: int, k: int):
    closed = required_lengths(n, k)
    realized = list(realizable_lengths(n, k))
    return OracleResponse(n=n, k=k, closed_form=closed, realizable=realized, agrees=closed == realized)
