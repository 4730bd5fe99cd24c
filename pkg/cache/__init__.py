# Cache management package