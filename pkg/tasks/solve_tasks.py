from tasks.celery_app import celery_app
from solver.engine import SolverEngine


@celery_app.task(bind=True)
def solve_equation_async(self, request):
    """Solve one equation; request carries the SolveRequest fields"""
    equation = request.get('equation')
    try:
        self.update_state(
            state='PROGRESS',
            meta={'status': 'Parsing equation...', 'progress': 5}
        )
        engine = SolverEngine()

        def progress(stage, percent):
            self.update_state(
                state='PROGRESS',
                meta={'status': f'{stage.capitalize()}...', 'progress': percent}
            )

        document = engine.solve(
            equation,
            mode=request.get('mode', 'finite'),
            terms=request.get('terms'),
            point=request.get('point'),
            expand_conjugates=request.get('expand_conjugates', True),
            verify=request.get('verify', False),
            max_terms=request.get('max_terms'),
            progress=progress,
        )
        return {
            **document,
            'status': 'completed',
            'progress': 100,
            'message': f"Found {len(document['solutions'])} solution truncation(s)"
        }

    except Exception as exc:
        self.update_state(
            state='FAILURE',
            meta={
                'status': 'Error occurred while solving',
                'error': str(exc),
                'equation': equation,
                'progress': 0
            }
        )
        raise exc


@celery_app.task(bind=True)
def batch_solve_async(self, requests):
    """Solve several equations in order"""
    try:
        engine = SolverEngine()
        results = []
        total = len(requests)
        for i, request in enumerate(requests):
            self.update_state(
                state='PROGRESS',
                meta={
                    'status': f'Solving equation {i + 1} of {total}...',
                    'progress': int((i / total) * 90),
                    'current_equation': request.get('equation')
                }
            )
            try:
                document = engine.solve(
                    request['equation'],
                    mode=request.get('mode', 'finite'),
                    terms=request.get('terms'),
                    point=request.get('point'),
                    expand_conjugates=request.get('expand_conjugates', True),
                    verify=request.get('verify', False),
                    max_terms=request.get('max_terms'),
                )
                results.append({'equation': request['equation'], 'result': document, 'error': None})
            except Exception as e:
                results.append({'equation': request['equation'], 'result': None, 'error': str(e)})

        self.update_state(
            state='PROGRESS',
            meta={'status': 'Finalizing batch results...', 'progress': 95}
        )
        return {
            'status': 'completed',
            'total_equations': total,
            'results': results,
            'progress': 100,
            'message': f'Processed {total} equations'
        }

    except Exception as exc:
        self.update_state(
            state='FAILURE',
            meta={
                'status': 'Error occurred during batch solving',
                'error': str(exc),
                'progress': 0
            }
        )
        raise exc
