"""Rewriting patterns to entanglement-measurement-correction normal form.

Core rules push entanglements to the front and corrections to the back of
the command sequence, absorbing corrections into measurement signals on the
way.  An extended pass then splits the pi-action signals of measurements
into explicit outcome-shift commands, propagates those to the end, and
drops them, leaving measurements that carry sign-action dependencies only.

All rules act on adjacent command windows of the execution-order sequence.
The system is terminating and confluent, so every strategy reaches the same
normal form; a deterministic low-position strategy is used for speed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .commands import (
    Command,
    CorrectX,
    CorrectZ,
    Entangle,
    Measure,
    Shift,
    command_signals,
)
from .patterns import Pattern, PatternError, validate
from .signals import Signal


class RewriteError(RuntimeError):
    """A rule was applied where it does not match, or rewriting ran away."""


class Rule(Enum):
    EX = "EX"
    EZ = "EZ"
    MX = "MX"
    MZ = "MZ"
    FREE_E = "FREE_E"
    FREE_X = "FREE_X"
    FREE_Z = "FREE_Z"
    SHIFT_SPLIT = "SHIFT_SPLIT"
    SHIFT_X = "SHIFT_X"
    SHIFT_Z = "SHIFT_Z"
    SHIFT_M = "SHIFT_M"
    SHIFT_DROP = "SHIFT_DROP"


CORE_RULES = (Rule.EX, Rule.EZ, Rule.MX, Rule.MZ, Rule.FREE_E, Rule.FREE_X, Rule.FREE_Z)


@dataclass(frozen=True)
class RewriteStep:
    """One applied rule: replaces ``before`` at ``position`` with ``after``."""

    rule: Rule
    position: int
    before: tuple
    after: tuple


@dataclass(frozen=True)
class TerminationMeasure:
    """Lexicographic progress measure ``(e_sum, c_sum)``.

    ``e_sum`` adds the 1-based execution position of every entanglement;
    ``c_sum`` adds ``n - position`` for every correction, ``n`` being the
    sequence length.
    """

    e_sum: int
    c_sum: int

    def __lt__(self, other: "TerminationMeasure") -> bool:
        return (self.e_sum, self.c_sum) < (other.e_sum, other.c_sum)

    def as_tuple(self) -> tuple[int, int]:
        return (self.e_sum, self.c_sum)


def termination_measure(pattern: Pattern) -> TerminationMeasure:
    n = len(pattern.commands)
    e_sum = c_sum = 0
    for pos, cmd in enumerate(pattern.commands, start=1):
        if isinstance(cmd, Entangle):
            e_sum += pos
        elif isinstance(cmd, (CorrectX, CorrectZ)):
            c_sum += n - pos
    return TerminationMeasure(e_sum, c_sum)


def _splittable(cmd: Command) -> bool:
    """Measurements the extended pass rewrites via an outcome shift.

    Either the measurement carries a pi-action signal, or its exact angle is
    pi or 3*pi/2 with no sign-action dependency, in which case a constant
    shift turns it into a plain Pauli-axis measurement (this is how the
    phase-gate pattern acquires its ``s1 + 1`` correction signal).
    """
    if not isinstance(cmd, Measure):
        return False
    if cmd.t:
        return True
    return (
        not cmd.s
        and cmd.angle.is_exact
        and cmd.angle.fraction in (Fraction(1), Fraction(3, 2))
    )


def _match(seq: list, rule: Rule, pos: int) -> tuple | None:
    """Replacement window for ``rule`` at ``pos``, or None when it does not match."""
    n = len(seq)
    if rule is Rule.SHIFT_SPLIT:
        if pos >= n or not _splittable(seq[pos]):
            return None
        m: Measure = seq[pos]
        angle, t = m.angle, m.t
        if not t and angle.is_exact and angle.fraction in (Fraction(1), Fraction(3, 2)):
            angle = angle.minus_pi()
            t = Signal(t.support, t.constant ^ 1)
        return (Measure(m.qubit, angle, m.s, Signal()), Shift(m.qubit, t))
    if rule is Rule.SHIFT_DROP:
        if pos == n - 1 and n and isinstance(seq[pos], Shift):
            return ()
        return None
    if pos + 1 >= n:
        return None
    a, b = seq[pos], seq[pos + 1]
    if rule is Rule.EX:
        if isinstance(a, CorrectX) and isinstance(b, Entangle) and a.qubit in b.qubits:
            other = b.j if a.qubit == b.i else b.i
            return (b, a, CorrectZ(other, a.signal))
    elif rule is Rule.EZ:
        if isinstance(a, CorrectZ) and isinstance(b, Entangle) and a.qubit in b.qubits:
            return (b, a)
    elif rule is Rule.MX:
        if isinstance(a, CorrectX) and isinstance(b, Measure) and a.qubit == b.qubit:
            return (Measure(b.qubit, b.angle, b.s + a.signal, b.t),)
    elif rule is Rule.MZ:
        if isinstance(a, CorrectZ) and isinstance(b, Measure) and a.qubit == b.qubit:
            return (Measure(b.qubit, b.angle, b.s, b.t + a.signal),)
    elif rule is Rule.FREE_E:
        if isinstance(b, Entangle) and not isinstance(a, Entangle) and not a.qubits & b.qubits:
            return (b, a)
    elif rule is Rule.FREE_X:
        if (
            isinstance(a, CorrectX)
            and isinstance(b, (Entangle, Measure))
            and not a.qubits & b.qubits
        ):
            return (b, a)
    elif rule is Rule.FREE_Z:
        if (
            isinstance(a, CorrectZ)
            and isinstance(b, (Entangle, Measure))
            and not a.qubits & b.qubits
        ):
            return (b, a)
    elif rule is Rule.SHIFT_X:
        if isinstance(a, Shift) and isinstance(b, CorrectX):
            return (CorrectX(b.qubit, b.signal.substitute(a.qubit, a.signal)), a)
    elif rule is Rule.SHIFT_Z:
        if isinstance(a, Shift) and isinstance(b, CorrectZ):
            return (CorrectZ(b.qubit, b.signal.substitute(a.qubit, a.signal)), a)
    elif rule is Rule.SHIFT_M:
        if isinstance(a, Shift) and isinstance(b, Measure):
            return (
                Measure(
                    b.qubit,
                    b.angle,
                    b.s.substitute(a.qubit, a.signal),
                    b.t.substitute(a.qubit, a.signal),
                ),
                a,
            )
    return None


def _window(rule: Rule, pos: int, n: int) -> int:
    """Number of commands consumed by the rule's left-hand side."""
    if rule is Rule.SHIFT_SPLIT:
        return 1
    if rule is Rule.SHIFT_DROP:
        return 1
    return 2


def applicable_redexes(pattern: Pattern, extended: bool = False) -> list[tuple[Rule, int]]:
    """All (rule, position) pairs matching the sequence, in position order.

    At a given position, only the highest-priority matching rule is listed
    (free commutations overlap pairwise, never with a propagation rule).
    """
    seq = list(pattern.commands)
    rules = CORE_RULES if not extended else tuple(Rule)
    found = []
    for pos in range(len(seq)):
        for rule in rules:
            if _match(seq, rule, pos) is not None:
                found.append((rule, pos))
                break
    return found


def apply_rule(pattern: Pattern, rule: Rule, position: int) -> Pattern:
    """Apply one rule at a position; raises RewriteError when it does not match."""
    seq = list(pattern.commands)
    repl = _match(seq, rule, position)
    if repl is None:
        raise RewriteError(f"rule {rule.value} does not match at position {position}")
    width = _window(rule, position, len(seq))
    seq[position : position + width] = list(repl)
    return pattern.with_commands(seq)


def _step_budget(n: int) -> int:
    # Guard against rule bugs producing loops; never expected to fire.
    return 16 * n * n + 64


def _standardize_seq(seq: list, trace: list) -> list:
    """Deterministic core standardization of a command list, in place.

    Strategy: keep a cursor at the lowest position where a redex may exist;
    apply the highest-priority matching rule there.  Applying a rule only
    creates new redexes in a window around it, so the cursor backs up one
    step after each application.  Confluence makes the strategy irrelevant
    for the result.
    """
    budget = _step_budget(len(seq))
    pos = 0
    while pos < len(seq):
        for rule in CORE_RULES:
            repl = _match(seq, rule, pos)
            if repl is not None:
                before = tuple(seq[pos : pos + 2])
                seq[pos : pos + 2] = list(repl)
                trace.append(RewriteStep(rule, pos, before, tuple(repl)))
                pos = max(0, pos - 1)
                if len(trace) > budget:
                    raise RewriteError("rewrite step budget exceeded: rule loop?")
                break
        else:
            pos += 1
    return seq


def standardize(pattern: Pattern) -> tuple[Pattern, list[RewriteStep]]:
    """Rewrite to the unique core normal form.

    For input without explicit shift commands the result is in EMC order
    (entanglements, then measurements, then corrections).  Shifts are inert
    under the core rules and stay put; use :func:`standardize_extended` to
    move them out.  The input must satisfy the definiteness conditions; they
    are preserved by every rule.
    """
    report = validate(pattern)
    if not report.ok:
        raise PatternError(f"cannot standardize an invalid pattern: {report}")
    trace: list[RewriteStep] = []
    seq = _standardize_seq(list(pattern.commands), trace)
    return pattern.with_commands(seq), trace


def _propagate_shift(seq: list, pos: int, trace: list) -> None:
    """Move the shift at ``pos`` rightward to the end of the sequence and drop it."""
    while pos + 1 < len(seq):
        nxt = seq[pos + 1]
        if isinstance(nxt, CorrectX):
            rule = Rule.SHIFT_X
        elif isinstance(nxt, CorrectZ):
            rule = Rule.SHIFT_Z
        elif isinstance(nxt, Measure):
            rule = Rule.SHIFT_M
        else:
            raise RewriteError(f"cannot propagate shift past {nxt!r}")
        repl = _match(seq, rule, pos)
        before = tuple(seq[pos : pos + 2])
        seq[pos : pos + 2] = list(repl)
        trace.append(RewriteStep(rule, pos, before, tuple(repl)))
        pos += 1
    trace.append(RewriteStep(Rule.SHIFT_DROP, pos, (seq[pos],), ()))
    del seq[pos]


def standardize_extended(pattern: Pattern) -> tuple[Pattern, list[RewriteStep]]:
    """Core standardization followed by exhaustive signal shifting.

    The result carries no pi-action signals on measurements and no shift
    commands: those dependencies are folded into later measurement
    sign-actions or into the final corrections.
    """
    standard, trace = standardize(pattern)
    seq = list(standard.commands)
    # Shifts present in the source first move out to the end (rightmost
    # first, so each propagation path is shift-free), then blocked
    # corrections get another core pass.
    had_shifts = False
    for pos in range(len(seq) - 1, -1, -1):
        if isinstance(seq[pos], Shift):
            had_shifts = True
            _propagate_shift(seq, pos, trace)
    if had_shifts:
        _standardize_seq(seq, trace)
    pos = 0
    while pos < len(seq):
        repl = _match(seq, Rule.SHIFT_SPLIT, pos)
        if repl is None:
            pos += 1
            continue
        before = (seq[pos],)
        seq[pos : pos + 1] = list(repl)
        trace.append(RewriteStep(Rule.SHIFT_SPLIT, pos, before, tuple(repl)))
        _propagate_shift(seq, pos + 1, trace)
        pos += 1
    return standard.with_commands(seq), trace


def is_standard(pattern: Pattern) -> bool:
    """True when no core rule applies."""
    return not applicable_redexes(pattern)


def is_emc(pattern: Pattern) -> bool:
    """True when the sequence is an E block, then an M block, then corrections."""
    phase = 0
    for cmd in pattern.commands:
        if isinstance(cmd, Entangle):
            rank = 0
        elif isinstance(cmd, Measure):
            rank = 1
        elif isinstance(cmd, (CorrectX, CorrectZ)):
            rank = 2
        else:
            return False
        if rank < phase:
            return False
        phase = rank
    return True


def random_order_standardize(pattern: Pattern, seed: int) -> Pattern:
    """Standardize by applying uniformly random applicable redexes.

    By confluence this must agree exactly with :func:`standardize` for every
    seed; it exists to test that property.
    """
    report = validate(pattern)
    if not report.ok:
        raise PatternError(f"cannot standardize an invalid pattern: {report}")
    rng = random.Random(seed)
    current = pattern
    budget = _step_budget(len(pattern.commands))
    for _ in range(budget):
        redexes = applicable_redexes(current)
        if not redexes:
            return current
        rule, pos = rng.choice(redexes)
        current = apply_rule(current, rule, pos)
    raise RewriteError("rewrite step budget exceeded: rule loop?")


def replay(pattern: Pattern, trace: list[RewriteStep]) -> Pattern:
    """Re-run a recorded trace; used to check traces reproduce their target."""
    seq = list(pattern.commands)
    for step in trace:
        width = len(step.before)
        window = tuple(seq[step.position : step.position + width])
        if window != step.before:
            raise RewriteError(f"trace mismatch at {step}")
        seq[step.position : step.position + width] = list(step.after)
    return pattern.with_commands(seq)


def format_trace(trace: list[RewriteStep]) -> str:
    """Line-oriented trace: ``<rule> @ <position>: <before> => <after>``.

    Command windows are printed right-to-left (the written order used in
    hand derivations, where the rightmost command executes first).
    """
    from .dsl import format_command  # local import to avoid a cycle

    lines = []
    for step in trace:
        before = " ".join(format_command(c) for c in reversed(step.before))
        after = " ".join(format_command(c) for c in reversed(step.after)) or "(nothing)"
        lines.append(f"{step.rule.value} @ {step.position}: {before} => {after}")
    return "\n".join(lines)
