"""Generalized Mordell-Tornheim zeta function Theta(r, s, t, x)."""

__version__ = "0.1.0"
