"""Hardness-reduction gadget construction and random network generation.

``build_gadget`` wires three fresh binary variables onto a base network so
that a threshold question about hidden evidence becomes a question about
monotonicity in mode of the extended network.  ``random_network`` produces
reproducible test fixtures (Python's Mersenne Twister via ``random.Random``,
so identical seeds give identical networks on every platform).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .inference import ZeroEvidenceError, posterior
from .model import Assignment, Network, Variable, enumerate_assignments, validate_network

#: Suffix appended to the gadget's fresh variable names.
GADGET_SUFFIX = "~gadget"


@dataclass(frozen=True)
class GadgetSpec:
    """Inputs for the reduction: base network, hidden binary evidence, threshold."""

    base: Network
    evidence_variable: str
    evidence_value: str
    threshold: float

    def __post_init__(self) -> None:
        base = self.base
        e = self.evidence_variable
        if e not in base:
            raise ValueError(f"unknown evidence variable {e!r}")
        if e in base.observables:
            raise ValueError(f"evidence variable {e!r} must not be observable")
        if base.variable(e).cardinality != 2:
            raise ValueError(f"evidence variable {e!r} must be binary")
        base.variable(e).value_index(self.evidence_value)
        if not 0.0 <= self.threshold < 0.5:
            raise ValueError(
                f"threshold must lie in [0, 1/2), got {self.threshold!r}; at 1/2 and above "
                "the gadget's conditional probability would leave [0, 1]"
            )


def build_gadget(spec: GadgetSpec) -> Network:
    """Extend the base network with the three-variable reduction gadget.

    Adds binary A, B, C with arcs E->A, A->C, B->C; A copies the evidence
    with leak (1/2 - p)/(1 - p), B has a uniform prior, and C is 1 exactly
    when A is high and B is low.  B joins the observables and C becomes the
    output; every base variable that was the output or intermediate becomes
    intermediate.
    """
    base = spec.base
    p = spec.threshold
    names = {}
    for short in ("A", "B", "C"):
        fresh = short + GADGET_SUFFIX
        if fresh in base:
            raise ValueError(f"name collision: base network already has {fresh!r}")
        names[short] = fresh
    a, b, c = names["A"], names["B"], names["C"]
    e = spec.evidence_variable
    e_value_index = base.variable(e).value_index(spec.evidence_value)

    leak = (0.5 - p) / (1.0 - p)
    a_rows = []
    for row_value in range(2):
        if row_value == e_value_index:
            a_rows.append((0.0, 1.0))
        else:
            a_rows.append((1.0 - leak, leak))
    # Rows over (A, B), B fastest: (a-lo,b-lo), (a-lo,b-hi), (a-hi,b-lo), (a-hi,b-hi).
    c_rows = ((1.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 0.0))

    variables = base.variables + (
        Variable(a, ("lo", "hi")),
        Variable(b, ("lo", "hi")),
        Variable(c, ("lo", "hi")),
    )
    arcs = base.arcs + ((e, a), (a, c), (b, c))
    cpts = dict(base.cpts)
    cpts[a] = tuple(a_rows)
    cpts[b] = ((0.5, 0.5),)
    cpts[c] = c_rows
    observables = base.observables + (b,)
    intermediates = tuple(
        name for name in base.names if name not in base.observables
    ) + (a,)
    return Network(variables, arcs, observables, intermediates, (c,), cpts)


def condmap_exceeds(
    net: Network, evidence_variable: str, evidence_value: str, threshold: float
) -> tuple[bool, Assignment | None]:
    """Does any full observable assignment make the evidence more likely than the threshold?

    Brute force over observable assignments; returns a witness when one
    exists.  Zero-probability assignments are skipped.
    """
    if evidence_variable in net.observables:
        raise ValueError(f"evidence variable {evidence_variable!r} must not be observable")
    value_index = net.variable(evidence_variable).value_index(evidence_value)
    for x in enumerate_assignments(net, net.observables):
        try:
            d = posterior(net, x, evidence_variable)
        except ZeroEvidenceError:
            continue
        if d.probs[value_index] > threshold:
            return True, x
    return False, None


def random_network(
    n_nodes: int,
    seed: int,
    max_parents: int = 2,
    value_counts: int | Sequence[int] = 2,
    polytree: bool = False,
    n_observables: int | None = None,
    monotone_bias: float = 0.5,
) -> Network:
    """A random valid network, deterministic for a fixed seed.

    ``monotone_bias`` is the per-variable probability of drawing a CPT with
    a uniformly monotone dependence on each parent (random direction per
    parent); the rest are unconstrained.  CPT entries are kept strictly
    positive so every observable assignment has positive probability.
    """
    if not 2 <= n_nodes <= 16:
        raise ValueError("n_nodes must be between 2 and 16")
    rng = random.Random(seed)
    counts = [value_counts] if isinstance(value_counts, int) else list(value_counts)
    if any(c < 2 for c in counts):
        raise ValueError("value counts must be at least 2")

    names = [f"N{i}" for i in range(n_nodes)]
    variables = tuple(
        Variable(name, tuple(f"v{j}" for j in range(rng.choice(counts)))) for name in names
    )
    card = {v.name: v.cardinality for v in variables}

    arcs: list[tuple[str, str]] = []
    parent_lists: dict[str, list[str]] = {name: [] for name in names}
    if polytree:
        for i in range(1, n_nodes):
            j = rng.randrange(i)
            towards_new = rng.random() < 0.5 or len(parent_lists[names[j]]) >= max_parents
            if towards_new:
                arcs.append((names[j], names[i]))
                parent_lists[names[i]].append(names[j])
            else:
                arcs.append((names[i], names[j]))
                parent_lists[names[j]].append(names[i])
    else:
        for i in range(1, n_nodes):
            k = rng.randint(0, min(max_parents, i))
            for j in sorted(rng.sample(range(i), k)):
                arcs.append((names[j], names[i]))
                parent_lists[names[i]].append(names[j])

    output = rng.choice(names)
    rest = [n for n in names if n != output]
    max_obs = len(rest)
    wanted = rng.randint(1, min(3, max_obs)) if n_observables is None else n_observables
    if not 1 <= wanted <= max_obs:
        raise ValueError(f"cannot pick {wanted} observables from {max_obs} non-output variables")
    observables = rng.sample(rest, wanted)
    intermediates = [n for n in rest if n not in observables]

    def random_distribution(k: int) -> list[float]:
        raw = [rng.uniform(0.05, 1.0) for _ in range(k)]
        total = sum(raw)
        return [x / total for x in raw]

    def dominated_pair(k: int) -> tuple[list[float], list[float]]:
        low = random_distribution(k)
        other = random_distribution(k)
        cum_low, cum_other = 0.0, 0.0
        cdf_hi = []
        for pl, po in zip(low, other):
            cum_low += pl
            cum_other += po
            cdf_hi.append(min(cum_low, cum_other))
        high = [cdf_hi[0]] + [cdf_hi[i] - cdf_hi[i - 1] for i in range(1, k)]
        # Blend a little of the low distribution back in to keep every entry
        # strictly positive; dominance is preserved under the mixture.
        high = [0.95 * h + 0.05 * l for h, l in zip(high, low)]
        return low, high

    cpts: dict[str, tuple[tuple[float, ...], ...]] = {}
    for name in names:
        parents = parent_lists[name]
        k = card[name]
        n_rows = 1
        for p in parents:
            n_rows *= card[p]
        if parents and rng.random() < monotone_bias:
            low, high = dominated_pair(k)
            directions = [rng.choice((1, -1)) for _ in parents]
            rows = []
            for r in range(n_rows):
                idx = r
                ranks = []
                for p in reversed(parents):
                    ranks.append(idx % card[p])
                    idx //= card[p]
                ranks.reverse()
                weights = [
                    rank / (card[p] - 1) if d == 1 else 1.0 - rank / (card[p] - 1)
                    for p, rank, d in zip(parents, ranks, directions)
                ]
                t = sum(weights) / len(weights)
                rows.append(tuple((1.0 - t) * lo + t * hi for lo, hi in zip(low, high)))
            cpts[name] = tuple(rows)
        else:
            cpts[name] = tuple(tuple(random_distribution(k)) for _ in range(n_rows))

    net = Network(
        variables,
        tuple(arcs),
        tuple(observables),
        tuple(intermediates),
        (output,),
        cpts,
    ).renormalized()
    violations = validate_network(net)
    if violations:
        raise AssertionError(f"generated an invalid network: {violations}")
    return net
