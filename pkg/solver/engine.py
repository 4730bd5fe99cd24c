import logging
import time

from algebra.parser import InputEquation, parse, parse_point
from cache.manager import CacheManager
from solver.algorithms import prepare, puiseux_solve, puiseux_solve_at, puiseux_solve_infinity, truncation_bound
from solver.oracle import verify_solutions
from solver.render import result_to_dict

try:
    from config.settings import DEFAULT_TERMS, EXPAND_CONJUGATES, MAX_TERMS_CAP
except ImportError:
    DEFAULT_TERMS = None
    EXPAND_CONJUGATES = True
    MAX_TERMS_CAP = None
    print("⚠️  Using fallback solver settings")

logger = logging.getLogger(__name__)

MODES = ("finite", "infinity")


class SolverEngine:
    def __init__(self, use_cache=True, cache_manager=None):
        """Front door shared by the CLI, the API and the Celery tasks"""
        self.cache_manager = cache_manager or (CacheManager() if use_cache else None)
        self.stats = {'solves': 0, 'cache_hits': 0, 'total_processing_time': 0.0}

    def clamp_terms(self, F, mode, terms, cap=None):
        """Requested term count (default: the degree bound) limited by the safety cap"""
        cap = cap if cap is not None else MAX_TERMS_CAP
        if cap is None:
            return terms
        wanted = terms if terms is not None else truncation_bound(prepare(F)[0], mode == "infinity")
        if wanted > cap:
            logger.warning("term count %d above the cap %d; using %d", wanted, cap, cap)
            return cap
        return terms

    def run(self, equation, mode="finite", terms=None, point=None,
            expand_conjugates=EXPAND_CONJUGATES, expand_regular=False, max_terms=None, progress=None):
        """Parse and solve; returns (InputEquation, SolveResult). progress(done, total) per center"""
        if mode not in MODES:
            raise ValueError(f"mode must be one of {', '.join(MODES)}")
        parsed = equation if isinstance(equation, InputEquation) else parse(equation)
        F = parsed.polynomial
        terms = self.clamp_terms(F, mode, terms if terms is not None else DEFAULT_TERMS, max_terms)
        if mode == "infinity":
            result = puiseux_solve_infinity(F, terms, expand_conjugates, progress)
        elif point:
            y_spec, p_spec = parse_point(point)
            result = puiseux_solve_at(F, y_spec, p_spec, terms, expand_conjugates, expand_regular, progress)
        else:
            result = puiseux_solve(F, terms, expand_conjugates, progress)
        return parsed, result

    def solve(self, equation, mode="finite", terms=None, point=None,
              expand_conjugates=EXPAND_CONJUGATES, verify=False, max_terms=None, progress=None):
        """Solution-set document with source cache|computed and processing_time"""
        start_time = time.time()
        parsed = parse(equation)
        request = {
            # spelling-independent: "p^2-4*y" and "p^2 - 4*y" share an entry
            'equation': str(parsed),
            'mode': mode,
            'terms': terms,
            'point': point,
            'expand_conjugates': bool(expand_conjugates),
            'verify': bool(verify),
            'max_terms': max_terms,
        }

        if self.cache_manager is not None:
            cached = self.cache_manager.get_cached_result(request)
            if cached is not None:
                self.stats['cache_hits'] += 1
                return {**cached, 'equation': parsed.source.strip(), 'source': 'cache',
                        'processing_time': time.time() - start_time}

        on_center = None
        if progress:
            progress("solving", 10)

            def on_center(done, total):
                progress(f"solved center {done} of {total}", 10 + (60 * done) // max(total, 1))

        parsed, result = self.run(parsed, mode, terms, point, expand_conjugates, max_terms=max_terms,
                                  progress=on_center)
        if verify:
            if progress:
                progress("verifying", 70)
            verify_solutions(parsed.polynomial, result.solutions)
        if progress:
            progress("rendering", 90)
        document = result_to_dict(result, parsed.source.strip())

        processing_time = time.time() - start_time
        self.stats['solves'] += 1
        self.stats['total_processing_time'] += processing_time
        logger.info("solved %s (%s) in %.2fs", request['equation'], mode, processing_time)

        if self.cache_manager is not None:
            self.cache_manager.cache_result(request, document)
        return {**document, 'source': 'computed', 'processing_time': processing_time}

    def get_system_stats(self):
        cache_stats = self.cache_manager.get_cache_stats() if self.cache_manager is not None else None
        return {
            'engine': dict(self.stats),
            'cache': cache_stats,
            'system_status': 'healthy'
        }
