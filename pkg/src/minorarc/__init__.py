"""Verified numerics for explicit minor-arc bounds on exponential sums over primes."""
__version__ = "0.1.0"
