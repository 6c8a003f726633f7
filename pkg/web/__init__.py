# Web package initialization
from .app import app

__all__ = ['app']
