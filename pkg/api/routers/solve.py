from typing import Union

from fastapi import APIRouter, HTTPException

from algebra.errors import SolverError
from api.models.requests import BatchSolveRequest, SolveMode, SolveRequest
from api.models.responses import AsyncTaskResponse, SolveResponse, TaskStatusResponse
from solver.engine import SolverEngine
from tasks.celery_app import celery_app
from tasks.solve_tasks import batch_solve_async, solve_equation_async

router = APIRouter(prefix="/solve", tags=["Solve"])

# shared across requests
solver_engine = None


def get_solver_engine():
    global solver_engine
    if solver_engine is None:
        solver_engine = SolverEngine()
    return solver_engine


def _check(request):
    if request.point and request.mode == SolveMode.INFINITY:
        raise HTTPException(status_code=422, detail="point is only supported in finite mode")


@router.post("/", response_model=Union[SolveResponse, AsyncTaskResponse])
async def solve_equation(request: SolveRequest):
    """
    Solve F(y, y') = 0.

    - **equation**: polynomial in y and p (p stands for y')
    - **mode**: finite (around x = 0) or infinity (powers of 1/x)
    - **async_processing**: queue the solve instead of waiting for it
    """
    _check(request)
    try:
        if request.async_processing:
            task = solve_equation_async.delay(request.engine_arguments())
            return AsyncTaskResponse(
                task_id=task.id,
                status="PENDING",
                message="Equation submitted for asynchronous solving"
            )
        document = get_solver_engine().solve(**request.engine_arguments())
        return SolveResponse(**document)

    except SolverError:
        # mapped to 400/422/500 by the application-level handler
        raise
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error solving equation: {str(e)}")


@router.post("/batch", response_model=AsyncTaskResponse)
async def solve_batch(request: BatchSolveRequest):
    """
    Queue several equations (max 10) as one task.
    """
    for item in request.requests:
        _check(item)
    try:
        task = batch_solve_async.delay([item.engine_arguments() for item in request.requests])
        return AsyncTaskResponse(
            task_id=task.id,
            status="PENDING",
            message=f"Batch of {len(request.requests)} equations submitted for solving"
        )
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error submitting batch: {str(e)}")


@router.get("/{task_id}", response_model=TaskStatusResponse)
async def get_task_status(task_id: str):
    """
    Status, progress and result of a queued solve.
    """
    try:
        task_result = celery_app.AsyncResult(task_id)

        if task_result.state == 'PENDING':
            return TaskStatusResponse(
                task_id=task_id,
                status="PENDING",
                message="Task is waiting to be processed"
            )
        if task_result.state == 'PROGRESS':
            return TaskStatusResponse(
                task_id=task_id,
                status="PROGRESS",
                progress=task_result.info.get('progress', 0),
                message=task_result.info.get('status', 'Solving...')
            )
        if task_result.state == 'SUCCESS':
            result = task_result.result
            return TaskStatusResponse(
                task_id=task_id,
                status="SUCCESS",
                progress=100,
                message=result.get('message', 'Task completed successfully'),
                result=result
            )
        if task_result.state == 'FAILURE':
            return TaskStatusResponse(
                task_id=task_id,
                status="FAILURE",
                progress=0,
                message="Task failed",
                error=str(task_result.info)
            )
        return TaskStatusResponse(
            task_id=task_id,
            status=task_result.state,
            message=f"Task is in {task_result.state} state"
        )

    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error getting task status: {str(e)}")


@router.delete("/{task_id}")
async def cancel_task(task_id: str):
    """
    Revoke a queued solve.
    """
    try:
        celery_app.control.revoke(task_id, terminate=True)
        return {"message": f"Task {task_id} has been cancelled"}
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error cancelling task: {str(e)}")
