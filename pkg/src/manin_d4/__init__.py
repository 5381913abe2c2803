"""Point counting on the cubic surface x0 (x1 + x2 + x3)^2 = x1 x2 x3."""

__version__ = "0.1.0"
SCHEMA_VERSION = 1
