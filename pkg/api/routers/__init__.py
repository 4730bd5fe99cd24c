# API routers package