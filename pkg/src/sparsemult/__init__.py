"""Local multiplicities of sparse polynomial systems at torus points, exactly."""

__version__ = "0.1.0"
