"""Effectively inseparable theories: machines, pairs, Janiczak theories and the constructions built on them."""

__version__ = "0.1.0"
