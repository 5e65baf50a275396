"""Desk-scale workbench for Bestvina-Brady groups, right-angled Artin groups
and finite group actions on simplicial complexes."""

__version__ = "0.1.0"
