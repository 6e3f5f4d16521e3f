"""Hardy-type tests of genuine tripartite nonlocality for pure states."""

__version__ = "1.0.0"
