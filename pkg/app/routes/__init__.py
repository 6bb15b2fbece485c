"""API route handlers"""

from app.routes import graphs, solve, verify

__all__ = ["graphs", "solve", "verify"]
