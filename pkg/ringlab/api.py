# ringlab/api.py
import logging

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware

from ringlab import __version__
from ringlab.config import get_settings
from ringlab.errors import BudgetExceededError, RingLabError
from ringlab.finite_ring import validate_ring
from ringlab.graph_kit import to_document
from ringlab.integral import monic_annihilator
from ringlab.localized import PrimeSupport, lambda1_localized
from ringlab.models import (
    GraphRequest, GraphResponse, IntegralRequest, IntegralResponse, LatticeResponse,
    RingReport, SemidirectRequest, SemidirectResponse, VerificationReport, VerifyRequest,
    WitnessBounds,
)
from ringlab.polynomials import IntPolynomial
from ringlab.ring_spec import parse_ring_spec
from ringlab.semidirect import lambda1_semidirect, localized_semidirect, semidirect_data_from_file
from ringlab.subring_compress import compressed_commuting_graph, unital_subring_lattice
from ringlab.verification import run_suite

logger = logging.getLogger(__name__)

# ===================== FASTAPI SETUP =====================
app = FastAPI(
    title="RingLab API",
    description="Compressed commuting graphs of finite rings, Z[1/m] and its semidirect products",
    version=__version__,
    docs_url="/docs",
    redoc_url="/redoc"
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],  # Restrict in production
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _reject(e: RingLabError) -> HTTPException:
    """413 for budget overruns, 400 for everything else"""
    if isinstance(e, BudgetExceededError):
        return HTTPException(status_code=413, detail=str(e))
    return HTTPException(status_code=400, detail=str(e))


# ===================== HEALTH =====================
@app.get("/")
def root():
    return {"message": "RingLab API is running", "version": __version__, "status": "healthy"}


@app.get("/health")
def health_check():
    try:
        compressed_commuting_graph(parse_ring_spec("z:2"))
        return {"status": "healthy", "table_threshold": get_settings().table_threshold}
    except Exception as e:
        raise HTTPException(status_code=503, detail=str(e))


# ===================== FINITE RINGS =====================
@app.post("/graph", response_model=GraphResponse)
def graph(request: GraphRequest):
    try:
        ring = parse_ring_spec(request.spec)
        result = compressed_commuting_graph(ring, request.mode)
    except RingLabError as e:
        raise _reject(e)
    return GraphResponse(
        descriptor=ring.descriptor,
        order=ring.order,
        vertex_count=result.vertex_count,
        graph=to_document(result),
    )


@app.get("/validate", response_model=RingReport)
def validate(spec: str = Query(..., description="Ring spec, e.g. z:6")):
    try:
        return validate_ring(parse_ring_spec(spec))
    except RingLabError as e:
        raise _reject(e)


@app.get("/lattice", response_model=LatticeResponse)
def lattice(spec: str = Query(..., description="Unital ring spec")):
    try:
        ring = parse_ring_spec(spec)
        result = unital_subring_lattice(ring)
    except RingLabError as e:
        raise _reject(e)
    if not result.complete:
        logger.warning(f"Lattice of {ring.descriptor} truncated at {len(result.subrings)} subrings")
    return LatticeResponse(
        descriptor=ring.descriptor,
        subrings=[list(s.members) for s in result.subrings],
        complete=result.complete,
    )


@app.post("/integral", response_model=IntegralResponse)
def integral(request: IntegralRequest):
    try:
        ring = parse_ring_spec(request.spec)
        if request.element >= ring.order:
            raise HTTPException(status_code=404, detail=f"Element {request.element} not in {ring.descriptor}")
        s = monic_annihilator(ring, request.element, IntPolynomial.parse(request.poly))
    except RingLabError as e:
        raise _reject(e)
    return IntegralResponse(annihilator=s.to_text(), degree=s.degree)


# ===================== LOCALIZATIONS =====================
@app.get("/localized/{m}")
def localized(m: int):
    if m < 1:
        raise HTTPException(status_code=400, detail="m must be positive")
    support = PrimeSupport.of(m)
    result = lambda1_localized(m)
    return {
        "m": m,
        "primes": list(support.primes),
        "vertex_count": result.vertex_count,
        "graph": to_document(result),
    }


@app.post("/semidirect", response_model=SemidirectResponse)
def semidirect(request: SemidirectRequest):
    settings = get_settings()
    bounds = WitnessBounds(
        degree=settings.merge_degree if request.degree is None else request.degree,
        coefficient=settings.merge_coefficient if request.coefficient is None else request.coefficient,
    )
    try:
        handle = localized_semidirect(semidirect_data_from_file(request.data))
        report = lambda1_semidirect(handle, bounds)
    except RingLabError as e:
        raise _reject(e)
    return SemidirectResponse(
        graph=to_document(report.graph),
        candidate_count=report.candidate_count,
        bound=report.bound,
        merges=len(report.merges),
        unresolved=report.unresolved,
    )


# ===================== VERIFICATION =====================
@app.post("/verify", response_model=VerificationReport)
def verify(request: VerifyRequest):
    return run_suite(request.suite, request.seed)


# ===================== RUN SERVER =====================
if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
