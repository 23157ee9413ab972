"""Exact verification of counterexamples to Kippenhahn's conjecture and their quantisations."""

__version__ = "0.1.0"
