"""FastAPI service wrapping the exact verification engine."""

from qsym.service.app import app, create_app

__all__ = ["app", "create_app"]
