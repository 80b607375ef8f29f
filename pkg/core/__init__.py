"""Exact arithmetic, coefficient algorithms and verifiers for powers of arctan(x)/x."""
