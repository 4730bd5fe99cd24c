# Celery tasks package