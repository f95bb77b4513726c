"""Exact-arithmetic evaluation of surgery tangles over ribbon quasi-Hopf algebras."""

from quasihopf.scalar import Cyclo, ONE, ZERO, rat, root_of_unity

__all__ = ["Cyclo", "ONE", "ZERO", "rat", "root_of_unity"]
