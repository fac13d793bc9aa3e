"""Signals: Z2 sums of measurement outcomes plus a constant bit."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

Qubit = int | str
"""Qubit identifier: an opaque int or str label."""


def qubit_key(q: Qubit):
    """Sort key giving a stable total order over mixed int/str labels."""
    return (q.__class__.__name__, q)


class MissingOutcomeError(KeyError):
    """A signal was evaluated against an outcome map missing one of its qubits."""


@dataclass(frozen=True)
class Signal:
    """An affine Z2 expression: ``constant + sum of s_i over support``.

    Addition is XOR on the constant and symmetric difference on the support,
    so every signal is its own inverse.
    """

    support: frozenset = frozenset()
    constant: int = 0

    def __post_init__(self):
        if self.constant not in (0, 1):
            raise ValueError("signal constant must be 0 or 1")
        if not isinstance(self.support, frozenset):
            object.__setattr__(self, "support", frozenset(self.support))

    @classmethod
    def of(cls, *qubits: Qubit, constant: int = 0) -> "Signal":
        return cls(frozenset(qubits), constant)

    @property
    def is_zero(self) -> bool:
        return not self.support and self.constant == 0

    def __add__(self, other: "Signal") -> "Signal":
        return Signal(self.support ^ other.support, self.constant ^ other.constant)

    def __bool__(self) -> bool:
        return not self.is_zero

    def evaluate(self, outcomes: Mapping[Qubit, int]) -> int:
        """Value of the signal under an outcome map (Z2)."""
        value = self.constant
        for q in self.support:
            try:
                value ^= outcomes[q]
            except KeyError:
                raise MissingOutcomeError(q) from None
        return value

    def substitute(self, qubit: Qubit, extra: "Signal") -> "Signal":
        """Replace the occurrence of ``s_qubit`` by ``extra + s_qubit``.

        If ``qubit`` is not in the support this is the identity; otherwise the
        result is ``self + extra`` by Z2 arithmetic.
        """
        if qubit in self.support:
            return self + extra
        return self

    def renamed(self, mapping: Mapping[Qubit, Qubit]) -> "Signal":
        return Signal(frozenset(mapping[q] for q in self.support), self.constant)

    def __str__(self) -> str:
        terms = [f"s[{q}]" for q in sorted(self.support, key=qubit_key)]
        if self.constant:
            terms.insert(0, "1")
        return " + ".join(terms) if terms else "0"


ZERO = Signal()
ONE = Signal(constant=1)


def signal(*qubits: Qubit, constant: int = 0) -> Signal:
    """Shorthand constructor: ``signal(1, 2)`` is ``s_1 + s_2``."""
    return Signal(frozenset(qubits), constant)
