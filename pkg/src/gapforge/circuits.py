"""Gate-level circuits and their compilation to homogeneous quadratic systems.

Circuit text format, one gate per line, keywords case-insensitive::

    g1 = INPUT
    g2 = NOT g1
    g3 = AND g1 g2
    OUTPUT g3

Compilation introduces one variable per gate plus a final homogenizing
variable z, and emits upper-triangular coefficient matrices: gate
variables are forced to {0, z}, each logic gate contributes one
quadratic identity, and the output is forced to agree with z.  A
satisfying assignment lifts with z = 1; conversely any solution with
z != 0 scales back to a satisfying assignment, and z = 0 forces the
all-zero solution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    ArityMismatch,
    DuplicateName,
    ForwardReference,
    NoOutput,
    ParseError,
)
from .field import FieldSpec
from .linalg import MatrixFq, VectorFq

GATE_KINDS = ("INPUT", "NOT", "AND", "OR")
_KEYWORDS = {"INPUT", "NOT", "AND", "OR", "OUTPUT"}


@dataclass(frozen=True)
class Gate:
    kind: str
    args: tuple[int, ...] = ()


@dataclass(frozen=True)
class Circuit:
    """A DAG of fan-in <= 2 gates; args reference strictly earlier gates."""

    gates: tuple[Gate, ...]
    output: int

    def __post_init__(self):
        for k, gate in enumerate(self.gates):
            arity = {"INPUT": 0, "NOT": 1, "AND": 2, "OR": 2}.get(gate.kind)
            if arity is None:
                raise ValueError(f"unknown gate kind {gate.kind!r}")
            if len(gate.args) != arity:
                raise ValueError(f"{gate.kind} gate takes {arity} arguments")
            for a in gate.args:
                if not 0 <= a < k:
                    raise ValueError(f"gate {k} references {a}, not strictly earlier")
        if not 0 <= self.output < len(self.gates):
            raise ValueError("output index out of range")

    @property
    def input_indices(self) -> tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.gates) if g.kind == "INPUT")

    @property
    def gate_count(self) -> int:
        return len(self.gates)


def parse_circuit(text: str) -> Circuit:
    """Parse the line-oriented circuit format.

    Blank lines and lines starting with '#' are ignored.
    """
    names: dict[str, int] = {}
    gates: list[Gate] = []
    output: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0].upper() == "OUTPUT":
            if len(tokens) != 2:
                raise ParseError("OUTPUT takes exactly one gate name", lineno)
            if output is not None:
                raise ParseError("duplicate OUTPUT designation", lineno)
            target = tokens[1]
            if target not in names:
                raise ForwardReference(f"OUTPUT references unknown gate {target!r}", lineno)
            output = names[target]
            continue
        if len(tokens) < 3 or tokens[1] != "=":
            raise ParseError(f"expected '<name> = <gate>', got {line!r}", lineno)
        name = tokens[0]
        if name.upper() in _KEYWORDS:
            raise ParseError(f"{name!r} is a reserved keyword", lineno)
        if name in names:
            raise DuplicateName(f"gate {name!r} already defined", lineno)
        kind = tokens[2].upper()
        args = tokens[3:]
        if kind == "INPUT":
            if args:
                raise ParseError("INPUT takes no arguments", lineno)
            arg_idx: tuple[int, ...] = ()
        elif kind == "NOT":
            if len(args) != 1:
                raise ParseError("NOT takes exactly one argument", lineno)
            arg_idx = (_resolve(names, args[0], lineno),)
        elif kind in ("AND", "OR"):
            if len(args) != 2:
                raise ParseError(f"{kind} takes exactly two arguments", lineno)
            arg_idx = (_resolve(names, args[0], lineno), _resolve(names, args[1], lineno))
        else:
            raise ParseError(f"unknown gate kind {tokens[2]!r}", lineno)
        names[name] = len(gates)
        gates.append(Gate(kind, arg_idx))
    if output is None:
        raise NoOutput("no OUTPUT line found")
    return Circuit(tuple(gates), output)


def _resolve(names: dict[str, int], token: str, lineno: int) -> int:
    if token not in names:
        raise ForwardReference(f"reference to undefined gate {token!r}", lineno)
    return names[token]


def gate_values(circuit: Circuit, inputs: Sequence[int]) -> tuple[int, ...]:
    """Values of every gate under bits assigned to INPUT gates in order."""
    input_positions = circuit.input_indices
    if len(inputs) != len(input_positions):
        raise ArityMismatch(
            f"circuit has {len(input_positions)} inputs, got {len(inputs)} bits"
        )
    values: list[int] = []
    feed = iter(inputs)
    for gate in circuit.gates:
        if gate.kind == "INPUT":
            values.append(1 if next(feed) else 0)
        elif gate.kind == "NOT":
            values.append(1 - values[gate.args[0]])
        elif gate.kind == "AND":
            values.append(values[gate.args[0]] & values[gate.args[1]])
        else:
            values.append(values[gate.args[0]] | values[gate.args[1]])
    return tuple(values)


def eval_circuit(circuit: Circuit, inputs: Sequence[int]) -> int:
    """Evaluate the output gate under the given input bits."""
    return gate_values(circuit, inputs)[circuit.output]


def find_satisfying_assignment(circuit: Circuit) -> tuple[int, ...] | None:
    """First input assignment (in binary counting order) making the output 1."""
    k = len(circuit.input_indices)
    for pattern in range(1 << k):
        bits = tuple((pattern >> i) & 1 for i in range(k))
        if eval_circuit(circuit, bits):
            return bits
    return None


def enumerate_circuits(
    max_gates: int, kinds: Sequence[str] = GATE_KINDS
) -> Iterator[Circuit]:
    """Every circuit with up to max_gates gates, deterministically ordered.

    Gate k may be INPUT, NOT i, AND i j or OR i j for any earlier i, j
    (ordered pairs, repeats allowed); every gate may be the output.
    """
    for count in range(1, max_gates + 1):
        options_per_slot = []
        for k in range(count):
            opts: list[Gate] = []
            if "INPUT" in kinds:
                opts.append(Gate("INPUT"))
            if "NOT" in kinds:
                opts.extend(Gate("NOT", (i,)) for i in range(k))
            if "AND" in kinds:
                opts.extend(Gate("AND", (i, j)) for i in range(k) for j in range(k))
            if "OR" in kinds:
                opts.extend(Gate("OR", (i, j)) for i in range(k) for j in range(k))
            options_per_slot.append(opts)
        for combo in itertools.product(*options_per_slot):
            for out in range(count):
                yield Circuit(tuple(combo), out)


# ----------------------------------------------------------------------
# quadratic systems


@dataclass(frozen=True, eq=False)
class QuadraticSystem:
    """Homogeneous quadratic constraints given by coefficient matrices.

    Each matrix Q encodes the form sum_{i<=j} Q[i,j] x_i x_j = 0 (strictly
    upper-triangular below the diagonal is zero).  The distinguished index
    points at the homogenizing variable, always last.
    """

    field: FieldSpec
    n_vars: int
    equations: tuple[MatrixFq, ...]
    distinguished: int

    def __post_init__(self):
        for q_mat in self.equations:
            if q_mat.rows != self.n_vars or q_mat.cols != self.n_vars:
                raise ValueError("equation matrix has the wrong shape")
            if q_mat.field != self.field:
                raise ValueError("equation matrix over the wrong field")
            if np.any(np.tril(q_mat.entries, k=-1)):
                raise ValueError("equation matrix must be upper-triangular")
        if not 0 <= self.distinguished < self.n_vars:
            raise ValueError("distinguished index out of range")

    @property
    def m(self) -> int:
        return len(self.equations)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuadraticSystem)
            and self.field == other.field
            and self.n_vars == other.n_vars
            and self.distinguished == other.distinguished
            and self.equations == tuple(other.equations)
        )


def evaluate_form(q_mat: MatrixFq, x: VectorFq) -> int:
    """Index of sum_{i,j} Q[i,j] * x_i * x_j."""
    field = q_mat.field
    acc = 0
    ii, jj = np.nonzero(q_mat.entries)
    for i, j in zip(ii.tolist(), jj.tolist()):
        term = field.mul_i(int(q_mat.entries[i, j]), field.mul_i(x[i], x[j]))
        acc = field.add_i(acc, term)
    return acc


def is_solution(system: QuadraticSystem, x: VectorFq) -> bool:
    return all(evaluate_form(q_mat, x) == 0 for q_mat in system.equations)


def circuit_to_quadratic(circuit: Circuit, field: FieldSpec) -> QuadraticSystem:
    """Compile a circuit into a homogeneous quadratic system.

    Variables are x_1 .. x_n (one per gate) followed by z.  Emits, in
    order: one booleanity equation x_i^2 - x_i z = 0 per gate, one
    equation per logic gate, and the output equation z^2 - x_out^2 = 0.
    """
    n = circuit.gate_count
    n_vars = n + 1
    z = n  # 0-based index of the homogenizing variable
    one = 1
    neg_one = field.neg_i(1)

    def blank() -> np.ndarray:
        return np.zeros((n_vars, n_vars), dtype=np.int64)

    def bump(mat: np.ndarray, i: int, j: int, coeff: int) -> None:
        a, b = (i, j) if i <= j else (j, i)
        mat[a, b] = field.add_i(int(mat[a, b]), coeff)

    equations: list[np.ndarray] = []
    for k in range(n):
        mat = blank()
        bump(mat, k, k, one)
        bump(mat, k, z, neg_one)
        equations.append(mat)
    for k, gate in enumerate(circuit.gates):
        if gate.kind == "INPUT":
            continue
        mat = blank()
        if gate.kind == "AND":
            i, j = gate.args
            bump(mat, k, k, one)
            bump(mat, i, j, neg_one)
        elif gate.kind == "OR":
            i, j = gate.args
            bump(mat, k, k, neg_one)
            bump(mat, i, z, one)
            bump(mat, j, z, one)
            bump(mat, i, j, neg_one)
        else:  # NOT
            (i,) = gate.args
            bump(mat, z, z, one)
            bump(mat, k, k, neg_one)
            bump(mat, i, i, neg_one)
        equations.append(mat)
    out_mat = blank()
    bump(out_mat, z, z, one)
    bump(out_mat, circuit.output, circuit.output, neg_one)
    equations.append(out_mat)

    return QuadraticSystem(
        field=field,
        n_vars=n_vars,
        equations=tuple(MatrixFq(field, m) for m in equations),
        distinguished=z,
    )
