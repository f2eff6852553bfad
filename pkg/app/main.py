from fastapi import APIRouter, FastAPI, HTTPException, Query, Security
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.security import APIKeyHeader
import logging
import time

from app.config import load_api_keys, load_settings
from app.logs import configure_logging
from app.models.envelope import OutputEnvelope
from app.models.params import Params
from app.models.requests import ConsecRequest, CycleGoodRequest, GoodRequest, SearchRunRequest
from app.services import payloads
from app.services.cycle_goodness import consecutive_witness, cycle_good_witness, verify_cycle_good
from app.services.dynamics import attraction_target, find_cycles, is_attracted, scan_runs, trajectory
from app.services.goodness import good_witness, normalize_witness, verify_normalized, verify_witness
from app.services.tables import verify_table

VERSION = "1.0.0"

settings = load_settings()
configure_logging(settings.log_level)
logger = logging.getLogger(__name__)

app = FastAPI(
    title="Augmented Happy Engine",
    description="Cycles, nombres attirés et témoins constructifs pour S_[c,b]",
    version=VERSION,
)

api_key_header = APIKeyHeader(name="X-API-Key", auto_error=False)


# Gestionnaire erreurs de validation JSON (422)
@app.exception_handler(RequestValidationError)
async def validation_exception_handler(request, exc):
    return JSONResponse(
        status_code=422,
        content={
            "error": "Données invalides",
            "detail": str(exc.errors())
        }
    )


def verify_api_key(api_key: str = Security(api_key_header)) -> str:
    clients = load_api_keys()
    for client_name, client_key in clients.items():
        if api_key == client_key:
            return client_name
    raise HTTPException(
        status_code=403,
        detail={"error": "Clé API invalide ou manquante"}
    )


def _checked(p: Params) -> Params:
    if p.bound > settings.max_bound:
        raise HTTPException(
            status_code=400,
            detail={"error": f"Borne B = {p.bound} supérieure à {settings.max_bound} pour S_{p.label}"}
        )
    return p


def _params(c: int, b: int) -> Params:
    try:
        p = Params(c=c, b=b)
    except ValueError as e:
        raise HTTPException(status_code=400, detail={"error": str(e)})
    return _checked(p)


def _run(command: str, client: str, compute):
    """Exécute un calcul et traduit les erreurs : ValueError → 400, le reste → 500."""
    try:
        start = time.time()
        p, payload = compute()
        duration = round((time.time() - start) * 1000)
        logger.info("Requête traitée", extra={"extra": {
            "client": client, "command": command, "params": p.label if p else None, "duration_ms": duration,
        }})
        return OutputEnvelope.build(command, p, payload).model_dump()
    except HTTPException:
        raise
    except ValueError as e:
        logger.error(f"Erreur validation : {e}")
        raise HTTPException(status_code=400, detail={"error": str(e)})
    except Exception as e:
        logger.error(f"Erreur interne : {e}")
        raise HTTPException(status_code=500, detail={"error": "Erreur interne", "message": str(e)})


# Préfixe v1 pour tous les endpoints
v1 = APIRouter(prefix="/v1")


@app.get("/health")
def health_check():
    return {"status": "ok", "version": VERSION}


@v1.get("/cycles")
def get_cycles(c: int, b: int, api_key: str = Security(verify_api_key)):
    p = _params(c, b)
    return _run("cycles", api_key, lambda: (p, payloads.cycles_payload(find_cycles(p))))


@v1.get("/attract")
def get_attraction(c: int, b: int, value: int = Query(ge=1), u: int | None = None,
                   api_key: str = Security(verify_api_key)):
    p = _params(c, b)

    def compute():
        cs = find_cycles(p)
        attracted = is_attracted(value, u, cs) if u is not None else None
        return p, payloads.attraction_payload(attraction_target(value, cs), trajectory(value, cs), p, u, attracted)

    return _run("attract", api_key, compute)


@v1.post("/search-run")
def search_run(request: SearchRunRequest, api_key: str = Security(verify_api_key)):
    if request.limit > settings.scan_max_limit:
        raise HTTPException(status_code=400, detail={"error": f"Limite supérieure à {settings.scan_max_limit}"})
    p = _checked(request.params)

    def compute():
        reports = scan_runs(
            request.u, request.length, request.limit, find_cycles(p),
            first=request.first, stride=request.stride,
            workers=settings.scan_workers, chunk=settings.scan_chunk,
        )
        return p, payloads.runs_payload(reports)

    return _run("search-run", api_key, compute)


@v1.post("/good")
def good(request: GoodRequest, api_key: str = Security(verify_api_key)):
    p = _checked(request.params)

    def compute():
        witness = good_witness(request.set, request.u, p)
        normalized_verified = None
        if request.normalize:
            report = normalize_witness(witness, request.cap or settings.normalize_cap)
            witness = witness.model_copy(update={"normalized": report})
            if report.status == "ok":
                normalized_verified = verify_normalized(witness.domain, witness.target, report.n, report.k, p)
        return p, payloads.good_payload(witness, verify_witness(witness), normalized_verified)

    return _run("good", api_key, compute)


@v1.post("/cycle-good")
def cycle_good(request: CycleGoodRequest, api_key: str = Security(verify_api_key)):
    p = _checked(request.params)

    def compute():
        witness = cycle_good_witness(request.set, p)
        return p, payloads.cycle_good_payload(witness, verify_cycle_good(witness))

    return _run("cycle-good", api_key, compute)


@v1.post("/consec")
def consec(request: ConsecRequest, api_key: str = Security(verify_api_key)):
    p = _checked(request.params)

    def compute():
        witness = consecutive_witness(request.u, request.length, p)
        return p, payloads.cycle_good_payload(witness, verify_cycle_good(witness))

    return _run("consec", api_key, compute)


@v1.get("/verify-tables")
def verify_tables(which: str = "all", api_key: str = Security(verify_api_key)):
    if which not in ("1", "2", "3", "4", "5", "all"):
        raise HTTPException(status_code=400, detail={"error": f"Tableau inconnu : {which}"})
    tables = [1, 2, 3, 4, 5] if which == "all" else [int(which)]
    return _run("verify-tables", api_key, lambda: (None, payloads.tables_payload([verify_table(t) for t in tables])))


# Enregistrement du router v1
app.include_router(v1)
