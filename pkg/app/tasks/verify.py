"""
Celery task for asynchronous corpus verification.
Runs the theorem harness over the built-in corpus, reporting progress per graph.
"""

from typing import List, Optional

from celery.utils.log import get_task_logger

from app.celery_app import celery_app
from app.schemas.verification import GraphVerification
from app.services.verifier import builtin_corpus, verify_corpus

logger = get_task_logger(__name__)


@celery_app.task(bind=True, name="app.tasks.verify.verify_corpus_task")
def verify_corpus_task(
    self,
    names: Optional[List[str]] = None,
    budget: Optional[int] = None,
    threads: Optional[int] = None
):
    """
    Celery task to verify the corpus asynchronously.

    Args:
        self: Celery task instance (for self.update_state)
        names: Corpus entries to verify (all when None)
        budget: Node budget per solve
        threads: Number of graphs verified concurrently

    Returns:
        dict: ok flag, verdict counts and the full report
    """
    corpus = builtin_corpus()
    if names:
        wanted = set(names)
        corpus = [entry for entry in corpus if entry.name in wanted]

    self.update_state(state="PROGRESS", meta={"progress": 0, "status": f"Verifying {len(corpus)} graph(s)"})

    def progress(done: int, total: int, verification: GraphVerification) -> None:
        logger.info("%s verified (%d/%d), %d violated", verification.graph, done, total,
                    len(verification.violations))
        self.update_state(state="PROGRESS", meta={
            "progress": int(100 * done / total) if total else 100,
            "status": f"Verified {verification.graph} ({done}/{total})",
        })

    report = verify_corpus(corpus, budget=budget, threads=threads, progress=progress)
    if not report.ok:
        logger.error("corpus verification: %d violated verdict(s)", len(report.violated))

    return {
        "status": "completed",
        "ok": report.ok,
        "total_verdicts": report.total_verdicts,
        "held": report.held,
        "skipped": report.skipped,
        "violated": len(report.violated),
        "report": report.model_dump(mode="json"),
    }
