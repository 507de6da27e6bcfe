"""freealg: exact identity verification in free nonassociative algebras."""

__version__ = "0.1.0"
