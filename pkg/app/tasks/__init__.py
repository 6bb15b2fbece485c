"""
Celery tasks package for async operations.
"""

from app.tasks.verify import verify_corpus_task

__all__ = ['verify_corpus_task']
