"""Prometheus metrics for graph analysis runs."""
from functools import wraps
import time

from prometheus_client import Counter, Histogram, Gauge, REGISTRY, generate_latest

# Cycle and borough metrics
BASIC_CYCLES = Counter(
    'closecomm_basic_cycles_total',
    'Total number of basic cycles enumerated',
    ['length']
)

BOROUGHS_DETECTED = Gauge(
    'closecomm_boroughs_detected',
    'Boroughs found by the most recent detection'
)

# Enumeration metrics
BRANCH_EXPANSIONS = Counter(
    'closecomm_branch_expansions_total',
    'Search-tree expansions spent by the 2-club enumerator',
    ['scope']
)

TWO_CLUBS = Counter(
    'closecomm_two_clubs_total',
    'Total number of maximal 2-clubs reported',
    ['club_type']
)

STAGE_SECONDS = Histogram(
    'closecomm_stage_seconds',
    'Wall time of pipeline stages',
    ['stage'],
    buckets=(0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 10.0, 30.0, 60.0)
)


def track_cycles(length_counts):
    """Record enumerated cycles by length."""
    for length, count in length_counts.items():
        BASIC_CYCLES.labels(length=str(length)).inc(count)


def track_boroughs(count: int):
    BOROUGHS_DETECTED.set(count)


def track_expansions(scope, expansions: int):
    BRANCH_EXPANSIONS.labels(scope=str(scope)).inc(expansions)


def track_clubs(clubs):
    for club in clubs:
        TWO_CLUBS.labels(club_type=club.club_type.value).inc()


def track_stage(stage_name: str):
    """Decorator to track wall time of a pipeline stage."""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                STAGE_SECONDS.labels(stage=stage_name).observe(
                    time.perf_counter() - start_time
                )
        return wrapper
    return decorator


def exposition() -> str:
    """Text exposition of the default registry."""
    return generate_latest(REGISTRY).decode("utf-8")
