from __future__ import annotations

from dataclasses import asdict
from typing import Optional

from fastapi import APIRouter, FastAPI, Query, Request
from fastapi.responses import ORJSONResponse
from pydantic import ValidationError

from . import fekete_szego, regions
from .errors import ToolkitError
from .models import ExtremalQuery, PhiQuery, RegionQuery, RegionSet, ThresholdsQuery
from .numeric_core import constants, pole_from_p
from .utils import get_logger, setup_logging


def _pair(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def create_app() -> FastAPI:
    setup_logging(force=False)
    log = get_logger("api")
    app = FastAPI(title="Concave pole toolkit", version="0.1.0", default_response_class=ORJSONResponse)
    router = APIRouter()

    @app.exception_handler(ToolkitError)
    async def _toolkit_error(request: Request, exc: ToolkitError):
        log.info("request_rejected", extra={"path": request.url.path, "error": type(exc).__name__})
        return ORJSONResponse({"detail": str(exc), "error": type(exc).__name__}, status_code=422)

    @app.exception_handler(ValidationError)
    async def _validation_error(request: Request, exc: ValidationError):
        return ORJSONResponse({"detail": str(exc), "error": "ValidationError"}, status_code=422)

    @router.get("/constants")
    async def get_constants():
        return asdict(constants())

    @router.get("/thresholds")
    async def get_thresholds(P: Optional[float] = None, p: Optional[float] = None):
        pp = ThresholdsQuery(P=P, p=p).pole()
        th = fekete_szego.thresholds(pp)
        payload = asdict(th)
        payload["p"] = pp.p
        payload["mu4"] = th.mu4
        return payload

    @router.get("/phi")
    async def get_phi(
        mu: float,
        P: Optional[float] = None,
        p: Optional[float] = None,
        oracle: bool = False,
        grid: int = 401,
    ):
        q = PhiQuery(P=P, p=p, mu=mu, oracle=oracle, grid=grid)
        pp = q.pole()
        value, branch = fekete_szego.phi_closed(pp, q.mu)
        payload = {
            "P": pp.P,
            "p": pp.p,
            "mu": q.mu,
            "value": value,
            "branch": branch.value,
            "proof_region": fekete_szego.branch_regions(pp, q.mu).value,
        }
        if q.oracle:
            payload["oracle"] = fekete_szego.phi_oracle(pp, q.mu, q.grid)
        return payload

    @router.get("/region")
    async def get_region(
        kind: RegionSet = Query(RegionSet.omega, alias="set"),
        p: Optional[float] = None,
        samples: int = 512,
    ):
        q = RegionQuery(p=p, set=kind, samples=samples)
        sample = regions.sample_set(q.kind, pole_from_p(q.p) if q.p is not None else None, q.samples)
        return {
            "set": q.kind.value,
            "tag": sample.tag.value,
            "points": [_pair(z) for z in sample.points],
        }

    @router.get("/extremal")
    async def get_extremal(p: float, zeta_re: float = 0.0, zeta_im: float = 0.0, order: int = 8):
        q = ExtremalQuery(p=p, zeta_re=zeta_re, zeta_im=zeta_im, order=order)
        pp = pole_from_p(q.p)
        return {
            "p": q.p,
            "zeta": _pair(q.zeta),
            "coefficients": [_pair(regions.a_n_extremal(pp, q.zeta, n)) for n in range(1, q.order + 1)],
            "lambda1": _pair(regions.lambda1_extremal(pp, q.zeta)),
            "hankel": _pair(regions.hankel_extremal(pp, q.zeta)),
        }

    app.include_router(router)
    return app
