"""Reid's recipe and Gale duality for cyclic quotient singularities."""

__version__ = "0.3.0"
