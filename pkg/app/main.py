"""
FastAPI application entry point
Main application initialization
"""
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from app.config import DEBUG, MODE, PORT
from app.common.errors import ChordError
from app.common.http import status_for
from app.middleware.cors import setup_cors
import logging

# Configure logging
logging.basicConfig(
    level=logging.DEBUG if DEBUG else logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

# Create FastAPI app
app = FastAPI(
    title="Chorded Cycles API",
    description="Long cycles with many chords: graph tools, gadget pipeline and exhaustive oracle",
    version="0.1.0",
    debug=DEBUG,
)

# Setup CORS
setup_cors(app)


@app.exception_handler(ChordError)
async def chord_error_handler(request: Request, exc: ChordError):
    """Toolkit errors escaping a route become JSON errors with a mapped status"""
    logger.warning(f"{request.url.path}: {exc.message}")
    return JSONResponse(status_code=status_for(exc), content={"detail": exc.to_dict()})


@app.get("/")
async def root():
    """Root endpoint - health check"""
    return JSONResponse({
        "message": "Chorded Cycles API",
        "version": "0.1.0",
        "mode": MODE,
        "status": "running"
    })


@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return JSONResponse({
        "status": "healthy",
        "mode": MODE
    })


from app.apps.graph.router import router as graph_router
app.include_router(graph_router, prefix="/api/graph", tags=["graph"])

from app.apps.pipeline.router import router as pipeline_router
app.include_router(pipeline_router, prefix="/api/pipeline", tags=["pipeline"])

from app.apps.oracle.router import router as oracle_router
app.include_router(oracle_router, prefix="/api/oracle", tags=["oracle"])


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "app.main:app",
        host="0.0.0.0",
        port=PORT,
        reload=DEBUG,
        log_level="debug" if DEBUG else "info"
    )
