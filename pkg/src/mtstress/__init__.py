"""Personalized stress detection with multi-task neural networks."""

__version__ = "0.1.0"
