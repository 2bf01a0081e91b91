"""bcheck - an independent B-method evaluator, animator and double-checker."""

__version__ = "0.1.0"
