"""Borough detection and maximal 2-club analysis of simple networks."""

__version__ = "1.0.0"
