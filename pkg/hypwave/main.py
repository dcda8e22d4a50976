import logging

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from hypwave import __version__
from hypwave.config import Config
from hypwave.exceptions import HypwaveError
from hypwave.routes import detection, experiments, norms

Config.setup_logging()

app = FastAPI(title="hypwave", version=__version__)


@app.exception_handler(HypwaveError)
async def hypwave_exception_handler(request: Request, exc: HypwaveError):
    logging.warning(f"{request.url.path}: {exc.code}: {exc.message}")
    return JSONResponse(status_code=422, content=exc.to_dict())


# Anything else is a bug; log it with the traceback
@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    logging.error(f"Global Exception: {exc}", exc_info=True)
    return JSONResponse(
        status_code=500,
        content={"detail": "Internal Server Error", "message": str(exc)},
    )


app.include_router(norms.router, prefix="/api", tags=["Norms"])
app.include_router(detection.router, prefix="/api", tags=["Detection"])
app.include_router(experiments.router, prefix="/api/experiments", tags=["Experiments"])


@app.get("/")
def root():
    return {"message": "hypwave online", "version": __version__}
