"""qdeform: q-calculus primitives, deformed exponentials and identity checks."""

__version__ = "0.1.0"
