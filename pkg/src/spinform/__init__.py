"""Surface homology, Rokhlin forms and spin mapping class group checks."""

__version__ = "0.1.0"
