"""
Shared fixtures.
"""

from pathlib import Path

import pytest

from app.celery_app import celery_app
from app.services.graph_builder import cartesian_product, generate
from app.tasks.verify import verify_corpus_task

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture(scope="session")
def petersen():
    return generate("petersen")


@pytest.fixture(scope="session")
def q3():
    return generate("hypercube", 3)


@pytest.fixture(scope="session")
def c3c3():
    c3 = generate("cycle", 3)
    return cartesian_product(c3, c3)


@pytest.fixture(scope="session")
def c4k2():
    return cartesian_product(generate("cycle", 4), generate("complete", 2))


@pytest.fixture
def eager_celery(monkeypatch):
    """
    Run Celery tasks in-process. Progress updates are recorded instead of
    being written to the result backend.
    """
    monkeypatch.setattr(celery_app.conf, "task_always_eager", True)
    monkeypatch.setattr(celery_app.conf, "task_store_eager_result", False)
    states = []
    monkeypatch.setattr(verify_corpus_task, "update_state",
                        lambda state=None, meta=None, **_: states.append((state, meta)))
    return states
