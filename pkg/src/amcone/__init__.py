"""Coarse geometry of augmented markings, horoballs and Farey complexes."""

__version__ = "0.1.0"
