"""HTTP service layer: pydantic schemas and the FastAPI application."""

from .app import ENDPOINTS, app, create_app

__all__ = ["app", "create_app", "ENDPOINTS"]
