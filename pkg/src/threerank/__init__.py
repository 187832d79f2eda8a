"""Class groups of quadratic fields from binary quadratic forms, with 3-rank checks."""

__version__ = "0.1.0"
