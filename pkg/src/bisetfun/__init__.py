"""Exact computational algebra for Burnside rings, bisets and simple-functor evaluations."""

__version__ = "0.1.0"
