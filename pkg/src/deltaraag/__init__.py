"""Twisted right-angled Artin groups over F2: graph recognition, quadratic
algebras, cohomology and unitriangular representations."""

__version__ = "0.1.0"

from ._backend import NAME as backend  # noqa: E402

__all__ = ["__version__", "backend"]
