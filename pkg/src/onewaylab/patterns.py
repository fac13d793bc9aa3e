"""Measurement patterns and their combinators.

A pattern is a computation space ``V`` (set of qubits), ordered input and
output qubit lists, and a command sequence stored in *execution order*:
the first element of ``commands`` runs first.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .commands import (
    Command,
    CorrectX,
    CorrectZ,
    Entangle,
    Measure,
    Shift,
    command_signals,
    rename_command,
)
from .signals import Qubit, Signal, qubit_key


class PatternError(ValueError):
    """Structurally invalid pattern or invalid pattern combination."""


@dataclass(frozen=True)
class Pattern:
    space: frozenset
    inputs: tuple
    outputs: tuple
    commands: tuple

    def __post_init__(self):
        object.__setattr__(self, "space", frozenset(self.space))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "commands", tuple(self.commands))
        if len(set(self.inputs)) != len(self.inputs):
            raise PatternError("duplicate input qubit")
        if len(set(self.outputs)) != len(self.outputs):
            raise PatternError("duplicate output qubit")
        for q in (*self.inputs, *self.outputs):
            if q not in self.space:
                raise PatternError(f"input/output qubit {q!r} not in space")
        for cmd in self.commands:
            for q in cmd.qubits:
                if q not in self.space:
                    raise PatternError(f"command {cmd!r} acts outside the space")
            for sig in command_signals(cmd):
                for q in sig.support:
                    if q not in self.space:
                        raise PatternError(f"signal qubit {q!r} not in space")

    @property
    def input_set(self) -> frozenset:
        return frozenset(self.inputs)

    @property
    def output_set(self) -> frozenset:
        return frozenset(self.outputs)

    @property
    def prepared(self) -> frozenset:
        """Non-input qubits, implicitly prepared in the |+> state."""
        return self.space - self.input_set

    @property
    def measured(self) -> frozenset:
        return frozenset(c.qubit for c in self.commands if isinstance(c, Measure))

    def with_commands(self, commands: Iterable[Command]) -> "Pattern":
        return replace(self, commands=tuple(commands))


@dataclass(frozen=True)
class ValidityReport:
    """Per-condition result of the runnability checks.

    Each field is ``None`` when the condition holds, otherwise the execution
    index of the first offending command (for D2, of the qubit's last use or
    -1 when no command is at fault).
    """

    d0: int | None
    d1: int | None
    d2: int | None
    d2_qubits: frozenset = frozenset()

    @property
    def ok(self) -> bool:
        return self.d0 is None and self.d1 is None and self.d2 is None


def validate(pattern: Pattern) -> ValidityReport:
    """Check the three definiteness conditions.

    D0: no command depends on an outcome not yet measured.
    D1: no command acts on a qubit already measured.
    D2: a qubit is measured iff it is not an output.
    """
    measured: set = set()
    d0 = d1 = d2 = None
    bad_qubits: set = set()
    for idx, cmd in enumerate(pattern.commands):
        if d0 is None:
            deps = set()
            for sig in command_signals(cmd):
                deps |= sig.support
            if isinstance(cmd, Shift):
                deps.add(cmd.qubit)
            if not deps <= measured:
                d0 = idx
        if d1 is None and not isinstance(cmd, Shift):
            if cmd.qubits & measured:
                d1 = idx
        if isinstance(cmd, Measure):
            if cmd.qubit in measured and d1 is None:
                d1 = idx
            measured.add(cmd.qubit)
    should_measure = pattern.space - pattern.output_set
    if measured != should_measure:
        bad_qubits = measured ^ should_measure
        d2 = -1
    return ValidityReport(d0, d1, d2, frozenset(bad_qubits))


def compose(second: Pattern, first: Pattern) -> Pattern:
    """Sequential composition: run ``first``, then ``second``.

    Requires ``space(first) & space(second) == outputs(first) == inputs(second)``
    as sets.  The composite keeps ``first``'s inputs and ``second``'s outputs.
    """
    overlap = first.space & second.space
    if not (overlap == first.output_set == second.input_set):
        raise PatternError(
            "composition interface mismatch: need space overlap == outputs of "
            f"first == inputs of second, got {set(overlap)!r} / "
            f"{set(first.output_set)!r} / {set(second.input_set)!r}"
        )
    return Pattern(
        space=first.space | second.space,
        inputs=first.inputs,
        outputs=second.outputs,
        commands=first.commands + second.commands,
    )


def tensor(left: Pattern, right: Pattern) -> Pattern:
    """Parallel composition of patterns on disjoint spaces."""
    if left.space & right.space:
        raise PatternError(f"tensor spaces overlap on {set(left.space & right.space)!r}")
    return Pattern(
        space=left.space | right.space,
        inputs=left.inputs + right.inputs,
        outputs=left.outputs + right.outputs,
        commands=left.commands + right.commands,
    )


def rename(pattern: Pattern, mapping: Mapping[Qubit, Qubit]) -> Pattern:
    """Rename qubits through an injective map defined on the whole space."""
    missing = [q for q in pattern.space if q not in mapping]
    if missing:
        raise PatternError(f"rename map missing qubits {sorted(missing, key=qubit_key)!r}")
    images = [mapping[q] for q in pattern.space]
    if len(set(images)) != len(images):
        raise PatternError("rename map is not injective on the pattern space")
    return Pattern(
        space=frozenset(images),
        inputs=tuple(mapping[q] for q in pattern.inputs),
        outputs=tuple(mapping[q] for q in pattern.outputs),
        commands=tuple(rename_command(c, mapping) for c in pattern.commands),
    )


def empty_pattern() -> Pattern:
    return Pattern(frozenset(), (), (), ())
