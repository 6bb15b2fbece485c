"""
Theorem harness API routes.
Synchronous single-graph verification and queued corpus runs.
"""

from typing import Any, Dict

from fastapi import APIRouter, HTTPException, status

from app.celery_app import celery_app
from app.schemas.graph import CorpusRequest, TaskStatusResponse, VerifyRequest
from app.services.verifier import builtin_corpus, verify_graph
from app.tasks.verify import verify_corpus_task

router = APIRouter(prefix="/verify", tags=["Verification"])


@router.post("/graph")
def verify_single_graph(request: VerifyRequest) -> Dict[str, Any]:
    """
    Assert every applicable bound and identity on one graph.
    """
    verification = verify_graph(
        request.graph.to_graph(), k_range=request.k_range, budget=request.budget, name=request.name
    )
    body = verification.model_dump(mode="json")
    body["violated"] = len(verification.violations)
    return body


@router.post("/corpus", response_model=TaskStatusResponse, status_code=status.HTTP_202_ACCEPTED)
async def verify_corpus(request: CorpusRequest):
    """
    Queue a corpus verification on the worker.
    Returns immediately with the task ID for tracking progress.
    """
    if request.names:
        known = {entry.name for entry in builtin_corpus()}
        unknown = sorted(set(request.names) - known)
        if unknown:
            raise HTTPException(
                status_code=status.HTTP_404_NOT_FOUND,
                detail=f"Unknown corpus entries: {', '.join(unknown)}"
            )

    task = verify_corpus_task.delay(names=request.names, budget=request.budget, threads=request.threads)

    return TaskStatusResponse(
        task_id=task.id,
        state="PENDING",
        progress=0,
        message="Corpus verification started. Check status with task ID."
    )


@router.get("/status/{task_id}", response_model=TaskStatusResponse)
async def get_verify_status(task_id: str):
    """
    Check the status of a corpus verification task.
    """
    task = celery_app.AsyncResult(task_id)

    progress = 0
    result = None
    if task.state == "PENDING":
        message = "Task is waiting to start"
    elif task.state == "PROGRESS":
        info = task.info or {}
        progress = info.get("progress", 0)
        message = info.get("status", "Processing")
    elif task.state == "SUCCESS":
        progress = 100
        result = task.result
        message = "Corpus verified" if result.get("ok") else "Corpus verification found violations"
    elif task.state == "FAILURE":
        message = f"Verification failed: {task.info}"
    else:
        message = task.state.capitalize()

    return TaskStatusResponse(
        task_id=task_id,
        state=task.state,
        progress=progress,
        message=message,
        result=result
    )
