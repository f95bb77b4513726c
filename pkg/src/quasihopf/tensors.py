"""Sparse tensors over H^{otimes k} with exact cyclotomic entries.

A :class:`Tensor` stores only nonzero entries, keyed by basis multi-indices.
Arity 0 is a plain scalar (the empty index).  All structure-map applications
(multiplication, antipode, coproduct, counit) live on the algebra object and
are threaded through the functions below.
"""

from __future__ import annotations

from quasihopf.scalar import Cyclo, ONE, ZERO

Index = tuple[int, ...]


class Tensor:
    __slots__ = ("dim", "arity", "entries")

    def __init__(self, dim: int, arity: int, entries: dict[Index, Cyclo] | None = None):
        self.dim = dim
        self.arity = arity
        self.entries: dict[Index, Cyclo] = {}
        if entries:
            for idx, c in entries.items():
                if not c.is_zero():
                    self.entries[idx] = c

    # -- constructors -----------------------------------------------------

    @staticmethod
    def scalar(dim: int, value: Cyclo) -> "Tensor":
        t = Tensor(dim, 0)
        if not value.is_zero():
            t.entries[()] = value
        return t

    @staticmethod
    def basis(dim: int, idx: Index) -> "Tensor":
        return Tensor(dim, len(idx), {tuple(idx): ONE})

    @staticmethod
    def zero(dim: int, arity: int) -> "Tensor":
        return Tensor(dim, arity)

    def copy(self) -> "Tensor":
        t = Tensor(self.dim, self.arity)
        t.entries = dict(self.entries)
        return t

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.entries

    def add_term(self, idx: Index, c: Cyclo) -> None:
        cur = self.entries.get(idx)
        if cur is None:
            if not c.is_zero():
                self.entries[idx] = c
        else:
            s = cur + c
            if s.is_zero():
                del self.entries[idx]
            else:
                self.entries[idx] = s

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check_shape(other)
        out = self.copy()
        for idx, c in other.entries.items():
            out.add_term(idx, c)
        return out

    def __sub__(self, other: "Tensor") -> "Tensor":
        self._check_shape(other)
        out = self.copy()
        for idx, c in other.entries.items():
            out.add_term(idx, -c)
        return out

    def __neg__(self) -> "Tensor":
        return Tensor(self.dim, self.arity, {i: -c for i, c in self.entries.items()})

    def scale(self, s: Cyclo) -> "Tensor":
        if s.is_zero():
            return Tensor(self.dim, self.arity)
        return Tensor(self.dim, self.arity, {i: c * s for i, c in self.entries.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, Tensor) and self.dim == other.dim
                and self.arity == other.arity and self.entries == other.entries)

    def __hash__(self):
        return hash((self.dim, self.arity, frozenset(self.entries.items())))

    def _check_shape(self, other: "Tensor") -> None:
        if self.dim != other.dim or self.arity != other.arity:
            raise ValueError(
                f"shape mismatch: H^{{{self.arity}}} dim {self.dim} vs "
                f"H^{{{other.arity}}} dim {other.dim}")

    def otimes(self, other: "Tensor") -> "Tensor":
        if self.dim != other.dim:
            raise ValueError("tensor product across different algebras")
        out = Tensor(self.dim, self.arity + other.arity)
        for ia, ca in self.entries.items():
            for ib, cb in other.entries.items():
                out.add_term(ia + ib, ca * cb)
        return out

    def permute(self, landing: tuple[int, ...]) -> "Tensor":
        """Send old factor p to position landing[p] (0-indexed)."""
        if sorted(landing) != list(range(self.arity)):
            raise ValueError("not a permutation of the factors")
        out = Tensor(self.dim, self.arity)
        for idx, c in self.entries.items():
            new = [0] * self.arity
            for p, pos in enumerate(landing):
                new[pos] = idx[p]
            out.add_term(tuple(new), c)
        return out

    def coeff(self, idx: Index) -> Cyclo:
        return self.entries.get(tuple(idx), ZERO)

    def __repr__(self) -> str:
        if not self.entries:
            return f"Tensor<{self.arity}>(0)"
        parts = []
        for idx in sorted(self.entries):
            parts.append(f"{self.entries[idx]}*e{list(idx)}")
        return f"Tensor<{self.arity}>(" + " + ".join(parts) + ")"
