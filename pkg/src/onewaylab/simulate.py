"""Branch-by-branch state-vector execution of measurement patterns.

States are kept unnormalized: projecting on a measurement outcome simply
scales the vector, and the branch probability is the squared-norm ratio.
Qubit axes follow ``live`` order (inputs first, then prepared qubits in
label order), big-endian in flat indexing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import sqrt

import numpy as np

from .commands import CorrectX, CorrectZ, Entangle, Measure, Shift
from .patterns import Pattern, PatternError, validate
from .signals import Qubit, qubit_key

_INV_SQRT2 = 1.0 / sqrt(2.0)

# Branches whose squared norm falls below this fraction of the input's are
# zero up to rounding and are not explored.
_BRANCH_CUTOFF = 1e-24

# Relative tolerance for the two-outcome norms of a measurement summing to
# the pre-measurement norm.
_NORM_RTOL = 1e-12


class SimulationError(RuntimeError):
    pass


@dataclass
class ComputationState:
    """A point in one execution branch: vector, live qubits, outcomes so far."""

    tensor: np.ndarray
    live: tuple
    outcomes: dict

    def axis(self, qubit: Qubit) -> int:
        return self.live.index(qubit)

    @property
    def vector(self) -> np.ndarray:
        """Flat amplitude vector, first live qubit most significant."""
        return self.tensor.reshape(-1)

    def norm_squared(self) -> float:
        v = self.tensor.reshape(-1)
        return float(np.real(np.vdot(v, v)))


@dataclass(frozen=True)
class Branch:
    """One completed execution branch."""

    outcomes: dict
    probability: float
    output: np.ndarray
    live: tuple


def _aux_order(pattern: Pattern) -> list:
    return sorted(pattern.prepared, key=qubit_key)


def live_order(pattern: Pattern) -> tuple:
    """Initial axis order: inputs as given, then prepared qubits sorted."""
    return tuple(pattern.inputs) + tuple(_aux_order(pattern))


def output_order(pattern: Pattern) -> tuple:
    """Axis order of the final state: the outputs as declared."""
    return tuple(pattern.outputs)


def prepare(pattern: Pattern, input_state=None) -> ComputationState:
    """Initial state: the input vector tensored with |+> on each prepared qubit.

    ``input_state`` is a flat vector over the declared inputs (big-endian),
    defaulting to |0...0>; patterns with no inputs take ``None`` only.
    """
    n_in = len(pattern.inputs)
    if input_state is None:
        vec = np.zeros(2**n_in, dtype=complex)
        vec[0] = 1.0
    else:
        vec = np.asarray(input_state, dtype=complex).reshape(-1)
        if vec.shape != (2**n_in,):
            raise SimulationError(
                f"input state must have {2 ** n_in} amplitudes, got {vec.size}"
            )
    aux = _aux_order(pattern)
    plus = np.full(2, _INV_SQRT2, dtype=complex)
    tensor = vec.reshape((2,) * n_in)
    for _ in aux:
        tensor = np.multiply.outer(tensor, plus)
    return ComputationState(tensor, live_order(pattern), {})


def _apply_cz(state: ComputationState, cmd: Entangle) -> None:
    a, b = state.axis(cmd.i), state.axis(cmd.j)
    idx = [slice(None)] * state.tensor.ndim
    idx[a] = 1
    idx[b] = 1
    state.tensor[tuple(idx)] *= -1.0


def _project(state: ComputationState, cmd: Measure, outcome: int) -> ComputationState:
    """Contract the measured axis against <outcome at the effective angle|."""
    s_val = cmd.s.evaluate(state.outcomes)
    t_val = cmd.t.evaluate(state.outcomes)
    angle = (-1.0) ** s_val * cmd.angle.radians + t_val * np.pi
    ax = state.axis(cmd.qubit)
    zero = np.take(state.tensor, 0, axis=ax)
    one = np.take(state.tensor, 1, axis=ax)
    sign = -1.0 if outcome else 1.0
    new = (zero + sign * np.exp(-1j * angle) * one) * _INV_SQRT2
    live = tuple(q for q in state.live if q != cmd.qubit)
    outcomes = dict(state.outcomes)
    outcomes[cmd.qubit] = outcome
    return ComputationState(new, live, outcomes)


def _apply_correction(state: ComputationState, cmd) -> None:
    if not cmd.signal.evaluate(state.outcomes):
        return
    ax = state.axis(cmd.qubit)
    if isinstance(cmd, CorrectX):
        state.tensor = np.flip(state.tensor, axis=ax)
    else:
        idx = [slice(None)] * state.tensor.ndim
        idx[ax] = 1
        state.tensor[tuple(idx)] *= -1.0


def _reorder_to_outputs(state: ComputationState, pattern: Pattern) -> np.ndarray:
    want = output_order(pattern)
    if state.live == want:
        return state.tensor.reshape(-1)
    perm = [state.live.index(q) for q in want]
    return np.transpose(state.tensor, perm).reshape(-1)


def step(state: ComputationState, cmd) -> list[ComputationState]:
    """Execute one command; measurements return their surviving branches.

    Entanglement, corrections, and shifts return a single successor (the
    input state is mutated and returned for efficiency); a measurement
    returns up to two new states, dropping zero-amplitude outcomes.
    """
    if isinstance(cmd, Entangle):
        _apply_cz(state, cmd)
        return [state]
    if isinstance(cmd, Measure):
        branches = [_project(state, cmd, outcome) for outcome in (0, 1)]
        return [b for b in branches if b.norm_squared() > 0.0]
    if isinstance(cmd, (CorrectX, CorrectZ)):
        _apply_correction(state, cmd)
        return [state]
    if isinstance(cmd, Shift):
        state.outcomes[cmd.qubit] ^= cmd.signal.evaluate(state.outcomes)
        return [state]
    raise SimulationError(f"cannot execute {cmd!r}")


def run_branch(pattern: Pattern, outcomes_plan, input_state=None) -> Branch:
    """Execute one branch with measurement outcomes forced from a plan.

    ``outcomes_plan`` maps measured qubits to bits.  The returned probability
    is what that branch would occur with under real measurement.
    """
    state = prepare(pattern, input_state)
    start_norm2 = state.norm_squared()
    if start_norm2 == 0.0:
        raise SimulationError("input state is the zero vector")
    for cmd in pattern.commands:
        if isinstance(cmd, Entangle):
            _apply_cz(state, cmd)
        elif isinstance(cmd, Measure):
            state = _project(state, cmd, outcomes_plan[cmd.qubit])
        elif isinstance(cmd, (CorrectX, CorrectZ)):
            _apply_correction(state, cmd)
        elif isinstance(cmd, Shift):
            state.outcomes[cmd.qubit] ^= cmd.signal.evaluate(state.outcomes)
        else:
            raise SimulationError(f"cannot execute {cmd!r}")
    prob = state.norm_squared() / start_norm2
    return Branch(state.outcomes, prob, _reorder_to_outputs(state, pattern), state.live)


def run_all_branches(
    pattern: Pattern, input_state=None, *, _validated: bool = False
) -> list[Branch]:
    """Explore every measurement branch with nonzero probability.

    Checks on the way that each measurement conserves norm across its two
    outcomes, and that branch probabilities sum to 1.
    """
    if not _validated:
        report = validate(pattern)
        if not report.ok:
            raise PatternError(f"cannot run an invalid pattern: {report}")
    initial = prepare(pattern, input_state)
    start_norm2 = initial.norm_squared()
    if start_norm2 == 0.0:
        raise SimulationError("input state is the zero vector")
    cutoff = _BRANCH_CUTOFF * start_norm2
    branches: list[Branch] = []

    def go(state: ComputationState, pos: int) -> None:
        for i in range(pos, len(pattern.commands)):
            cmd = pattern.commands[i]
            if isinstance(cmd, Entangle):
                _apply_cz(state, cmd)
            elif isinstance(cmd, Measure):
                pre = state.norm_squared()
                lo = _project(state, cmd, 0)
                hi = _project(state, cmd, 1)
                total = lo.norm_squared() + hi.norm_squared()
                if abs(total - pre) > _NORM_RTOL * max(pre, 1.0):
                    raise SimulationError(
                        f"norm not conserved at measurement of {cmd.qubit!r}: "
                        f"{pre} -> {total}"
                    )
                if hi.norm_squared() > cutoff:
                    go(hi, i + 1)
                if lo.norm_squared() > cutoff:
                    go(lo, i + 1)
                return
            elif isinstance(cmd, (CorrectX, CorrectZ)):
                _apply_correction(state, cmd)
            elif isinstance(cmd, Shift):
                state.outcomes[cmd.qubit] ^= cmd.signal.evaluate(state.outcomes)
            else:
                raise SimulationError(f"cannot execute {cmd!r}")
        prob = state.norm_squared() / start_norm2
        branches.append(
            Branch(state.outcomes, prob, _reorder_to_outputs(state, pattern), state.live)
        )

    go(initial, 0)
    branches.sort(key=lambda b: tuple(b.outcomes[q] for q in sorted(b.outcomes, key=qubit_key)))
    total_prob = sum(b.probability for b in branches)
    if abs(total_prob - 1.0) > 1e-9:
        raise SimulationError(f"branch probabilities sum to {total_prob}, not 1")
    return branches


@lru_cache(maxsize=None)
def _pseudorandom_states(dim: int, count: int = 8) -> tuple[np.ndarray, ...]:
    rng = np.random.default_rng(0x1D2C3B4A)
    states = []
    for _ in range(count):
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        states.append(v / np.linalg.norm(v))
    return tuple(states)


_COLLINEAR_TOL = 1e-9


def _all_collinear(vectors: list[np.ndarray], tol: float = _COLLINEAR_TOL) -> bool:
    ref = None
    for v in vectors:
        nv = np.linalg.norm(v)
        if nv == 0.0:
            continue
        if ref is None:
            ref, nref = v, nv
            continue
        if abs(np.vdot(ref, v)) < (1.0 - tol) * nref * nv:
            return False
    return True


def is_deterministic(pattern: Pattern, tol: float = _COLLINEAR_TOL) -> bool:
    """True when all branches produce the same output state up to phase.

    Probes every basis input plus a fixed set of pseudorandom inputs; branch
    maps are linear, so agreement on a spanning set is agreement everywhere.
    """
    report = validate(pattern)
    if not report.ok:
        raise PatternError(f"cannot run an invalid pattern: {report}")
    dim = 2 ** len(pattern.inputs)
    probes = [np.eye(dim, dtype=complex)[k] for k in range(dim)]
    probes += _pseudorandom_states(dim)
    for probe in probes:
        states = [
            b.output for b in run_all_branches(pattern, probe, _validated=True)
        ]
        if not _all_collinear(states, tol):
            return False
    return True


def extract_unitary(pattern: Pattern, check_deterministic: bool = True) -> np.ndarray:
    """The unitary (isometry) a deterministic pattern implements, column by column.

    One fixed outcome assignment is forced for every basis input so that the
    columns come from a single linear branch map; each column is then
    normalized.  Raises for patterns that are not deterministic (unless the
    check is skipped) or whose columns do not form an isometry.
    """
    if check_deterministic and not is_deterministic(pattern):
        raise SimulationError("pattern is not deterministic: no single unitary exists")
    n_in, n_out = len(pattern.inputs), len(pattern.outputs)
    dim_in, dim_out = 2**n_in, 2**n_out
    measured = sorted(
        {c.qubit for c in pattern.commands if isinstance(c, Measure)}, key=qubit_key
    )
    basis = np.eye(dim_in, dtype=complex)

    plan = None
    for bits in range(2 ** len(measured)):
        candidate = {
            q: (bits >> (len(measured) - 1 - k)) & 1 for k, q in enumerate(measured)
        }
        branch = run_branch(pattern, candidate, basis[0])
        if branch.probability > _BRANCH_CUTOFF:
            plan = candidate
            break
    if plan is None:
        raise SimulationError("no branch with nonzero probability found")

    columns = []
    for k in range(dim_in):
        branch = run_branch(pattern, plan, basis[k])
        if branch.probability <= _BRANCH_CUTOFF:
            raise SimulationError(
                f"forced branch vanishes on basis input {k}; pattern not deterministic"
            )
        columns.append(branch.output / np.linalg.norm(branch.output))
    u = np.column_stack(columns)
    gram = u.conj().T @ u
    if not np.allclose(gram, np.eye(dim_in), atol=1e-9):
        raise SimulationError("extracted columns are not orthonormal")
    return u


def format_branch_report(pattern: Pattern, branches: list[Branch]) -> str:
    """Human-readable branch table: outcome bits, probability, amplitudes."""
    measured = sorted(pattern.space - pattern.output_set, key=qubit_key)
    lines = [f"branches: {len(branches)}  (outcome order: {', '.join(map(str, measured))})"]
    for b in branches:
        bits = "".join(str(b.outcomes[q]) for q in measured)
        amps = " ".join(
            f"{a.real:+.6f}{a.imag:+.6f}j" for a in np.asarray(b.output).reshape(-1)
        )
        lines.append(f"  [{bits}]  p={b.probability:.6f}  {amps}")
    return "\n".join(lines)
