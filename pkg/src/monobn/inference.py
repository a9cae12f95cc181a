"""Exact discrete inference: chain-rule joints, posteriors, CDFs, modes.

Two independent routes to the posterior are kept side by side:

* :func:`posterior` — variable elimination over factors (min-degree order);
* :func:`posterior_by_enumeration` — full-joint enumeration, backed by a
  compiled kernel when available and a numpy fallback otherwise.

The enumeration backend is selected at import time; set the environment
variable ``MONOBN_PURE_PYTHON=1`` (or call :func:`set_enumeration_backend`)
to force the fallback.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass

import numpy as np

from . import _enum_py
from .model import TOLERANCE, Assignment, Network

try:
    from . import _enumc
except ImportError:  # extension not built; fall back to numpy
    _enumc = None

_BACKENDS = {"python": _enum_py}
if _enumc is not None:
    _BACKENDS["cython"] = _enumc

_backend_name = "cython" if (_enumc is not None and not os.environ.get("MONOBN_PURE_PYTHON")) else "python"


def enumeration_backend() -> str:
    """Name of the active enumeration backend ("cython" or "python")."""
    return _backend_name


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def set_enumeration_backend(name: str) -> None:
    global _backend_name
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")
    _backend_name = name


class ZeroEvidenceError(ValueError):
    """Raised when a posterior is requested given evidence of probability zero."""


@dataclass(frozen=True)
class Distribution:
    """A probability distribution over one variable's ordered values."""

    variable: str
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        if any(p < -TOLERANCE for p in self.probs):
            raise ValueError("negative probability")
        if abs(math.fsum(self.probs) - 1.0) > TOLERANCE:
            raise ValueError(f"probabilities sum to {math.fsum(self.probs):.12g}, not 1")


def cdf(d: Distribution) -> tuple[float, ...]:
    """Cumulative distribution: entry i is Pr(V <= value_i)."""
    return tuple(itertools.accumulate(d.probs))


def mode(d: Distribution) -> int:
    """Index of the most probable value; ties resolve to the lowest index."""
    best = 0
    for i, p in enumerate(d.probs):
        if p > d.probs[best]:
            best = i
    return best


def joint_probability(net: Network, x: Assignment) -> float:
    """Chain-rule probability of a full joint assignment."""
    if x.scope != set(net.names):
        raise ValueError("joint_probability requires a full assignment")
    p = 1.0
    for name in net.names:
        p *= net.cpt_entry(name, x)
    return p


# -- factors ------------------------------------------------------------


@dataclass
class Factor:
    """A nonnegative table over a scope of variables, in declaration order."""

    scope: tuple[str, ...]
    table: np.ndarray


def _cpt_factor(net: Network, name: str) -> Factor:
    parents = net.parents(name)
    axes = list(parents) + [name]
    shape = tuple(net.variable(a).cardinality for a in axes)
    table = np.array(net.cpts[name], dtype=np.float64).reshape(shape)
    order = sorted(range(len(axes)), key=lambda i: net.declaration_index(axes[i]))
    scope = tuple(axes[i] for i in order)
    return Factor(scope, np.ascontiguousarray(table.transpose(order)))


def _reduce(f: Factor, evidence: Assignment) -> Factor:
    index = []
    scope = []
    for name in f.scope:
        if name in evidence:
            index.append(evidence[name])
        else:
            index.append(slice(None))
            scope.append(name)
    return Factor(tuple(scope), f.table[tuple(index)])


def _product(net: Network, a: Factor, b: Factor) -> Factor:
    scope = tuple(sorted(set(a.scope) | set(b.scope), key=net.declaration_index))

    def view(f: Factor) -> np.ndarray:
        shape = tuple(
            net.variable(v).cardinality if v in f.scope else 1 for v in scope
        )
        return f.table.reshape(shape)

    return Factor(scope, view(a) * view(b))


def _sum_out(f: Factor, name: str) -> Factor:
    axis = f.scope.index(name)
    return Factor(f.scope[:axis] + f.scope[axis + 1 :], f.table.sum(axis=axis))


def _min_degree_order(scopes: list[tuple[str, ...]], keep: set[str]) -> list[str]:
    """Greedy min-degree elimination order over the factor interaction graph."""
    neighbours: dict[str, set[str]] = {}
    for scope in scopes:
        for v in scope:
            neighbours.setdefault(v, set()).update(scope)
    for v, ns in neighbours.items():
        ns.discard(v)
    order = []
    remaining = {v for v in neighbours if v not in keep}
    while remaining:
        v = min(remaining, key=lambda u: (len(neighbours[u] & remaining), u))
        order.append(v)
        ns = neighbours[v] & remaining
        for a in ns:
            neighbours[a].update(ns)
            neighbours[a].discard(a)
            neighbours[a].discard(v)
        remaining.discard(v)
    return order


def _eliminate(net: Network, evidence: Assignment, targets: tuple[str, ...],
               elimination_order: list[str] | None = None) -> Factor:
    factors = [_reduce(_cpt_factor(net, name), evidence) for name in net.names]
    keep = set(targets)
    if elimination_order is None:
        elimination_order = _min_degree_order([f.scope for f in factors], keep)
    else:
        hidden = {v for f in factors for v in f.scope} - keep
        if set(elimination_order) != hidden:
            raise ValueError("elimination order must cover exactly the hidden variables")
    for name in elimination_order:
        relevant = [f for f in factors if name in f.scope]
        if not relevant:
            continue
        product = relevant[0]
        for f in relevant[1:]:
            product = _product(net, f, product)
        factors = [f for f in factors if name not in f.scope] + [_sum_out(product, name)]
    result = factors[0]
    for f in factors[1:]:
        result = _product(net, f, result)
    order = tuple(sorted(targets, key=net.declaration_index))
    if result.scope != order:
        raise AssertionError("elimination left unexpected scope")
    return result


def posterior(net: Network, evidence: Assignment, target: str,
              elimination_order: list[str] | None = None) -> Distribution:
    """Pr(target | evidence) by variable elimination.

    Raises ZeroEvidenceError when the evidence has probability zero.
    """
    if target in evidence:
        raise ValueError(f"target {target!r} appears in the evidence")
    for name in evidence.scope | {target}:
        if name not in net:
            raise KeyError(f"unknown variable {name!r}")
    factor = _eliminate(net, evidence, (target,), elimination_order)
    total = float(factor.table.sum())
    if total <= 0.0:
        raise ZeroEvidenceError(f"evidence has probability zero: {dict(evidence.items)}")
    return Distribution(target, tuple(factor.table / total))


def evidence_probability(net: Network, evidence: Assignment) -> float:
    """Pr(evidence) by variable elimination."""
    for name in evidence.scope:
        if name not in net:
            raise KeyError(f"unknown variable {name!r}")
    factor = _eliminate(net, evidence, ())
    return float(factor.table)


def posterior_joint(net: Network, evidence: Assignment, targets: tuple[str, ...]) -> Factor:
    """Normalized joint posterior factor over ``targets`` (declaration order)."""
    for t in targets:
        if t in evidence:
            raise ValueError(f"target {t!r} appears in the evidence")
    if not targets:
        raise ValueError("at least one target required")
    factor = _eliminate(net, evidence, tuple(targets))
    total = float(factor.table.sum())
    if total <= 0.0:
        raise ZeroEvidenceError(f"evidence has probability zero: {dict(evidence.items)}")
    return Factor(factor.scope, factor.table / total)


# -- enumeration route ---------------------------------------------------


def _pack_network(net: Network):
    """Flatten the network into the packed arrays the kernels consume."""
    names = net.names
    index = {n: i for i, n in enumerate(names)}
    cards = np.array([v.cardinality for v in net.variables], dtype=np.int64)
    cpt_chunks = []
    cpt_offsets = np.zeros(len(names), dtype=np.int64)
    parent_chunks = []
    parent_offsets = np.zeros(len(names) + 1, dtype=np.int64)
    pos = 0
    ppos = 0
    for i, name in enumerate(names):
        flat = np.array(net.cpts[name], dtype=np.float64).reshape(-1)
        cpt_offsets[i] = pos
        cpt_chunks.append(flat)
        pos += flat.size
        pars = np.array([index[p] for p in net.parents(name)], dtype=np.int64)
        parent_offsets[i] = ppos
        parent_chunks.append(pars)
        ppos += pars.size
    parent_offsets[len(names)] = ppos
    cpt_data = np.concatenate(cpt_chunks) if cpt_chunks else np.zeros(0)
    parent_data = (
        np.concatenate(parent_chunks) if ppos else np.zeros(0, dtype=np.int64)
    )
    return cards, cpt_data, cpt_offsets, parent_data, parent_offsets


def posterior_by_enumeration(net: Network, evidence: Assignment, target: str) -> Distribution:
    """Pr(target | evidence) by summing the chain-rule joint over all assignments.

    Independent of the variable-elimination route; used as its oracle.
    """
    if target in evidence:
        raise ValueError(f"target {target!r} appears in the evidence")
    cards, cpt_data, cpt_offsets, parent_data, parent_offsets = _pack_network(net)
    ev = np.full(len(net.names), -1, dtype=np.int64)
    for name, idx in evidence.items:
        ev[net.declaration_index(name)] = idx
    kernel = _BACKENDS[_backend_name]
    masses = kernel.accumulate_target(
        cards, cpt_data, cpt_offsets, parent_data, parent_offsets, ev,
        net.declaration_index(target),
    )
    total = float(np.sum(masses))
    if total <= 0.0:
        raise ZeroEvidenceError(f"evidence has probability zero: {dict(evidence.items)}")
    return Distribution(target, tuple(np.asarray(masses) / total))
