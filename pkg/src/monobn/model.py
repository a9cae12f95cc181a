"""Core data model: discrete variables with ordered values, networks, assignments.

Value order is the declaration order of the value labels; there is no separate
order annotation.  All enumeration (assignments, CPT rows) uses the canonical
mixed-radix order with the last-declared variable varying fastest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence

#: Absolute tolerance used for all probability comparisons in the package.
TOLERANCE = 1e-9


class OrderRelation(Enum):
    EQUAL = "equal"
    LESS_EQ = "less-eq"
    GREATER_EQ = "greater-eq"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Variable:
    """A discrete variable with a totally ordered value domain.

    The position of a label in ``values`` is its rank; for binary variables
    the convention is index 0 = low, index 1 = high.
    """

    name: str
    values: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) < 2:
            raise ValueError(f"variable {self.name!r} needs at least 2 values")
        if len(set(self.values)) != len(self.values):
            raise ValueError(f"variable {self.name!r} has duplicate value labels")

    @property
    def cardinality(self) -> int:
        return len(self.values)

    def value_index(self, label: str) -> int:
        try:
            return self.values.index(label)
        except ValueError:
            raise KeyError(f"variable {self.name!r} has no value {label!r}") from None


@dataclass(frozen=True)
class Assignment:
    """A joint value assignment to a set of variables (value indices).

    Items are kept sorted by variable name so equality and hashing are
    scope-order independent.  The empty assignment is the unique element
    of the empty scope.
    """

    items: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "items", tuple(sorted(self.items)))

    @classmethod
    def of(cls, bindings: Mapping[str, int] | Iterable[tuple[str, int]]) -> "Assignment":
        if isinstance(bindings, Mapping):
            return cls(tuple(bindings.items()))
        return cls(tuple(bindings))

    @property
    def scope(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.items)

    def __getitem__(self, name: str) -> int:
        for key, idx in self.items:
            if key == name:
                return idx
        raise KeyError(name)

    def get(self, name: str, default: int | None = None) -> int | None:
        for key, idx in self.items:
            if key == name:
                return idx
        return default

    def __contains__(self, name: str) -> bool:
        return any(key == name for key, _ in self.items)

    def extended(self, name: str, index: int) -> "Assignment":
        if name in self:
            raise ValueError(f"{name!r} already bound")
        return Assignment(self.items + ((name, index),))

    def restricted(self, scope: Iterable[str]) -> "Assignment":
        keep = set(scope)
        return Assignment(tuple((k, v) for k, v in self.items if k in keep))

    def labels(self, net: "Network") -> dict[str, str]:
        return {name: net.variable(name).values[idx] for name, idx in self.items}

    def __len__(self) -> int:
        return len(self.items)


#: The unique assignment with empty scope.
EMPTY_ASSIGNMENT = Assignment(())


@dataclass(frozen=True)
class Network:
    """A discrete Bayesian network with a role partition over its variables.

    ``cpts`` maps each variable name to a tuple of rows, one row per joint
    parent assignment in canonical order (parents in declaration order, last
    parent varying fastest); each row is a tuple of probabilities over the
    variable's values.
    """

    variables: tuple[Variable, ...]
    arcs: tuple[tuple[str, str], ...]
    observables: tuple[str, ...]
    intermediates: tuple[str, ...]
    outputs: tuple[str, ...]
    cpts: Mapping[str, tuple[tuple[float, ...], ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        index = {v.name: i for i, v in enumerate(self.variables)}
        if len(index) != len(self.variables):
            raise ValueError("duplicate variable names")

        def decl(name: str) -> int:
            return index.get(name, len(index))

        arcs = tuple(sorted(set(self.arcs), key=lambda a: (decl(a[0]), decl(a[1]))))
        object.__setattr__(self, "arcs", arcs)
        for role in ("observables", "intermediates", "outputs"):
            names = tuple(sorted(set(getattr(self, role)), key=decl))
            object.__setattr__(self, role, names)
        object.__setattr__(
            self, "cpts", {name: tuple(tuple(row) for row in rows) for name, rows in self.cpts.items()}
        )
        object.__setattr__(self, "_index", index)

    # -- lookup helpers -------------------------------------------------

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def variable(self, name: str) -> Variable:
        try:
            return self.variables[self._index[name]]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def declaration_index(self, name: str) -> int:
        return self._index[name]

    def __contains__(self, name: str) -> bool:
        return name in self._index

    @property
    def output(self) -> str:
        if len(self.outputs) != 1:
            raise ValueError("network does not have exactly one output variable")
        return self.outputs[0]

    def parents(self, name: str) -> tuple[str, ...]:
        return tuple(p for p, c in self.arcs if c == name)

    def children(self, name: str) -> tuple[str, ...]:
        return tuple(c for p, c in self.arcs if p == name)

    def neighbours(self, name: str) -> tuple[str, ...]:
        seen = []
        for p, c in self.arcs:
            if p == name and c not in seen:
                seen.append(c)
            elif c == name and p not in seen:
                seen.append(p)
        return tuple(seen)

    def has_arc(self, parent: str, child: str) -> bool:
        return (parent, child) in set(self.arcs)

    def descendants(self, name: str) -> frozenset[str]:
        out: set[str] = set()
        stack = [name]
        while stack:
            for child in self.children(stack.pop()):
                if child not in out:
                    out.add(child)
                    stack.append(child)
        return frozenset(out)

    def topological_order(self) -> tuple[str, ...]:
        """Topological sort of the variables, or ValueError on a cycle."""
        order: list[str] = []
        marks: dict[str, int] = {}

        def visit(name: str) -> None:
            state = marks.get(name, 0)
            if state == 1:
                raise ValueError("cycle detected")
            if state == 2:
                return
            marks[name] = 1
            for parent in self.parents(name):
                visit(parent)
            marks[name] = 2
            order.append(name)

        for v in self.variables:
            visit(v.name)
        return tuple(order)

    def is_polytree(self) -> bool:
        """True iff the underlying undirected graph is acyclic."""
        parent_of: dict[str, str] = {}

        def find(x: str) -> str:
            while parent_of.get(x, x) != x:
                parent_of[x] = parent_of.get(parent_of[x], parent_of[x])
                x = parent_of[x]
            return x

        for p, c in self.arcs:
            rp, rc = find(p), find(c)
            if rp == rc:
                return False
            parent_of[rp] = rc
        return True

    # -- CPT indexing ---------------------------------------------------

    def row_index(self, name: str, assignment: Assignment) -> int:
        """Canonical CPT row index for the parents of ``name``."""
        idx = 0
        for parent in self.parents(name):
            idx = idx * self.variable(parent).cardinality + assignment[parent]
        return idx

    def cpt_entry(self, name: str, assignment: Assignment) -> float:
        """Pr(name = assignment[name] | parents as in assignment)."""
        return self.cpts[name][self.row_index(name, assignment)][assignment[name]]

    def renormalized(self) -> "Network":
        """Copy with every CPT row renormalized to sum exactly 1."""
        cpts = {
            name: tuple(_renormalize_row(row) for row in rows)
            for name, rows in self.cpts.items()
        }
        return Network(self.variables, self.arcs, self.observables, self.intermediates, self.outputs, cpts)


def _renormalize_row(row: Sequence[float]) -> tuple[float, ...]:
    """Scale a near-normalized row so math.fsum over it is exactly 1.0.

    The residual after division is folded into the largest entry, which makes
    the operation idempotent (a row already summing to 1.0 is returned as is).
    """
    out = list(row)
    for _ in range(4):
        total = math.fsum(out)
        if total == 1.0:
            return tuple(out)
        out = [x / total for x in out]
        residual = 1.0 - math.fsum(out)
        if residual != 0.0:
            k = max(range(len(out)), key=lambda i: out[i])
            out[k] += residual
    return tuple(out)


@dataclass(frozen=True)
class Violation:
    location: str
    message: str

    def __str__(self) -> str:
        return f"{self.location}: {self.message}"


def validate_network(net: Network) -> list[Violation]:
    """Check every structural invariant; an empty list means the network is valid."""
    violations: list[Violation] = []
    names = set(net.names)

    for p, c in net.arcs:
        for end in (p, c):
            if end not in names:
                violations.append(Violation(f"arc {p}->{c}", f"unknown variable {end!r}"))
    try:
        net.topological_order()
    except ValueError:
        violations.append(Violation("arcs", "cycle detected"))

    role_names = list(net.observables) + list(net.intermediates) + list(net.outputs)
    for name in role_names:
        if name not in names:
            violations.append(Violation(f"role {name}", "unknown variable"))
    seen: set[str] = set()
    for name in role_names:
        if name in seen:
            violations.append(Violation(f"role {name}", "variable assigned more than one role"))
        seen.add(name)
    for name in names - seen:
        violations.append(Violation(f"variable {name}", "no role assigned"))
    if len(net.outputs) != 1:
        violations.append(Violation("roles", f"exactly one output variable required, found {len(net.outputs)}"))
    if len(net.observables) < 1:
        violations.append(Violation("roles", "at least one observable variable required"))

    for var in net.variables:
        rows = net.cpts.get(var.name)
        if rows is None:
            violations.append(Violation(f"cpt {var.name}", "missing CPT"))
            continue
        expected = 1
        for parent in net.parents(var.name):
            if parent in names:
                expected *= net.variable(parent).cardinality
        if len(rows) != expected:
            violations.append(
                Violation(f"cpt {var.name}", f"expected {expected} rows, found {len(rows)}")
            )
        for r, row in enumerate(rows):
            if len(row) != var.cardinality:
                violations.append(
                    Violation(f"cpt {var.name} row {r}", f"expected {var.cardinality} entries, found {len(row)}")
                )
                continue
            if any(p < 0 for p in row):
                violations.append(Violation(f"cpt {var.name} row {r}", "negative probability"))
            total = math.fsum(row)
            if abs(total - 1.0) > TOLERANCE:
                violations.append(Violation(f"cpt {var.name} row {r}", f"row sum {total:.12g} != 1"))
    for name in net.cpts:
        if name not in names:
            violations.append(Violation(f"cpt {name}", "unknown variable"))
    return violations


def compare_assignments(x: Assignment, x2: Assignment) -> OrderRelation:
    """Coordinatewise comparison of two assignments over an identical scope."""
    if x.scope != x2.scope:
        raise ValueError("assignments have different scopes")
    any_less = any_greater = False
    for (name, a), (_, b) in zip(x.items, x2.items):
        if a < b:
            any_less = True
        elif a > b:
            any_greater = True
    if any_less and any_greater:
        return OrderRelation.INCOMPARABLE
    if any_less:
        return OrderRelation.LESS_EQ
    if any_greater:
        return OrderRelation.GREATER_EQ
    return OrderRelation.EQUAL


def precedes(x: Assignment, x2: Assignment) -> bool:
    """x <= x2 in the product partial order (Equal counts)."""
    return compare_assignments(x, x2) in (OrderRelation.LESS_EQ, OrderRelation.EQUAL)


def enumerate_assignments(net: Network, scope: Iterable[str]) -> Iterator[Assignment]:
    """Yield every joint assignment to ``scope`` in canonical order.

    Scope variables are taken in declaration order; the last one varies
    fastest (mixed-radix counter).  The empty scope yields the single empty
    assignment.
    """
    names = sorted(set(scope), key=net.declaration_index)
    for name in names:
        if name not in net:
            raise KeyError(f"unknown variable {name!r}")
    cards = [net.variable(n).cardinality for n in names]
    if not names:
        yield EMPTY_ASSIGNMENT
        return
    idx = [0] * len(names)
    while True:
        yield Assignment(tuple(zip(names, idx)))
        pos = len(names) - 1
        while pos >= 0:
            idx[pos] += 1
            if idx[pos] < cards[pos]:
                break
            idx[pos] = 0
            pos -= 1
        if pos < 0:
            return


def covering_successors(net: Network, x: Assignment) -> list[Assignment]:
    """All assignments obtained from x by raising one variable one step.

    Each result covers x in the product partial order: x strictly precedes
    it and nothing lies strictly in between.
    """
    names = sorted(x.scope, key=net.declaration_index)
    out = []
    for name in names:
        idx = x[name]
        if idx + 1 < net.variable(name).cardinality:
            items = tuple((k, idx + 1 if k == name else v) for k, v in x.items)
            out.append(Assignment(items))
    return out
