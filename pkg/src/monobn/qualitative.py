"""Sound approximate verification of monotonicity in distribution.

Signs of qualitative influences are read off the CPTs arc by arc, combined
with the standard sign algebra, and propagated from each observable variable
to the output.  A returned isotone/antitone verdict is always correct; an
inconclusive one carries no information.  Unresolved '?' signs can be
refined with interval bounds on the distribution of the output variable's
unobservable parents.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from .inference import evidence_probability, posterior_joint
from .model import TOLERANCE, Assignment, Network, enumerate_assignments

PLUS = "+"
MINUS = "-"
ZERO = "0"
UNKNOWN = "?"
SIGNS = (PLUS, MINUS, ZERO, UNKNOWN)

# Serial (chain) composition.
_PRODUCT = {
    (PLUS, PLUS): PLUS, (PLUS, MINUS): MINUS, (PLUS, ZERO): ZERO, (PLUS, UNKNOWN): UNKNOWN,
    (MINUS, PLUS): MINUS, (MINUS, MINUS): PLUS, (MINUS, ZERO): ZERO, (MINUS, UNKNOWN): UNKNOWN,
    (ZERO, PLUS): ZERO, (ZERO, MINUS): ZERO, (ZERO, ZERO): ZERO, (ZERO, UNKNOWN): ZERO,
    (UNKNOWN, PLUS): UNKNOWN, (UNKNOWN, MINUS): UNKNOWN, (UNKNOWN, ZERO): ZERO, (UNKNOWN, UNKNOWN): UNKNOWN,
}

# Parallel (trail combination) composition.
_SUM = {
    (PLUS, PLUS): PLUS, (PLUS, MINUS): UNKNOWN, (PLUS, ZERO): PLUS, (PLUS, UNKNOWN): UNKNOWN,
    (MINUS, PLUS): UNKNOWN, (MINUS, MINUS): MINUS, (MINUS, ZERO): MINUS, (MINUS, UNKNOWN): UNKNOWN,
    (ZERO, PLUS): PLUS, (ZERO, MINUS): MINUS, (ZERO, ZERO): ZERO, (ZERO, UNKNOWN): UNKNOWN,
    (UNKNOWN, PLUS): UNKNOWN, (UNKNOWN, MINUS): UNKNOWN, (UNKNOWN, ZERO): UNKNOWN, (UNKNOWN, UNKNOWN): UNKNOWN,
}


def sign_product(a: str, b: str) -> str:
    return _PRODUCT[(a, b)]


def sign_sum(a: str, b: str) -> str:
    return _SUM[(a, b)]


def arc_sign(net: Network, parent: str, child: str) -> str:
    """Sign of the direct qualitative influence of ``parent`` on ``child``.

    Read directly off the child's CPT: '+' iff raising the parent never
    raises the child's CDF in any context, '-' for the reverse, '0' iff the
    rows are context-uniformly equal, '?' otherwise.
    """
    if not net.has_arc(parent, child):
        raise ValueError(f"no arc {parent}->{child}")
    parents = net.parents(child)
    cards = [net.variable(p).cardinality for p in parents]
    v_pos = parents.index(parent)
    rows = net.cpts[child]
    all_le = all_ge = True
    for combo in itertools.product(*(range(c) for c in cards)):
        if combo[v_pos] + 1 >= cards[v_pos]:
            continue
        hi_combo = combo[:v_pos] + (combo[v_pos] + 1,) + combo[v_pos + 1 :]
        lo_row = rows[_mixed_radix(combo, cards)]
        hi_row = rows[_mixed_radix(hi_combo, cards)]
        cum_lo = cum_hi = 0.0
        for p_lo, p_hi in zip(lo_row, hi_row):
            cum_lo += p_lo
            cum_hi += p_hi
            if cum_hi > cum_lo + TOLERANCE:
                all_le = False
            if cum_hi < cum_lo - TOLERANCE:
                all_ge = False
    if all_le and all_ge:
        return ZERO
    if all_le:
        return PLUS
    if all_ge:
        return MINUS
    return UNKNOWN


def _mixed_radix(combo: tuple[int, ...], cards: list[int]) -> int:
    idx = 0
    for value, card in zip(combo, cards):
        idx = idx * card + value
    return idx


def all_arc_signs(net: Network) -> dict[tuple[str, str], str]:
    return {arc: arc_sign(net, *arc) for arc in net.arcs}


def propagate(
    net: Network,
    source: str,
    observed: frozenset[str] | set[str] = frozenset(),
    arc_signs: dict[tuple[str, str], str] | None = None,
    trace: list[str] | None = None,
) -> dict[str, str]:
    """Sign of the net qualitative influence of observing ``source`` on each variable.

    Message passing over the arcs in both directions (symmetry), combining
    serial steps with the sign product and parallel trails with the sign sum.
    ``observed`` lists additionally observed variables: they block trails
    passing through them, while head-to-head nodes pass (an uninformative
    '?') only when they or one of their descendants is observed.
    """
    if source not in net:
        raise KeyError(f"unknown variable {source!r}")
    if arc_signs is None:
        arc_signs = all_arc_signs(net)
    arc_set = set(net.arcs)
    evidence = frozenset(observed) | {source}
    blocked_mid = frozenset(observed) - {source}
    signs = {name: ZERO for name in net.names}

    def link_sign(a: str, b: str) -> str:
        return arc_signs[(a, b)] if (a, b) in arc_set else arc_signs[(b, a)]

    def visit(trail: frozenset[str], frm: str | None, node: str, message: str) -> None:
        signs[node] = sign_sum(signs[node], message)
        if trace is not None:
            trace.append(node)
        for nxt in net.neighbours(node):
            if nxt in trail:
                continue
            head_to_head = (
                frm is not None and (frm, node) in arc_set and (nxt, node) in arc_set
            )
            if head_to_head:
                if not (({node} | net.descendants(node)) & evidence):
                    continue
                link = UNKNOWN
            elif node in blocked_mid:
                continue
            else:
                link = link_sign(node, nxt)
            message_out = sign_product(signs[node], link)
            if sign_sum(signs[nxt], message_out) != signs[nxt]:
                visit(trail | {node}, node, nxt, message_out)

    visit(frozenset(), None, source, PLUS)
    return signs


class Verdict(Enum):
    ISOTONE = "isotone-in-distribution"
    ANTITONE = "antitone-in-distribution"
    BOTH = "both"
    MIXED = "mixed"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Refinement:
    variable: str
    budget: int
    resolved_to: str


@dataclass(frozen=True)
class ApproxReport:
    arc_signs: dict[tuple[str, str], str]
    net_signs: dict[str, str]
    verdict: Verdict
    isotone_variables: tuple[str, ...]
    antitone_variables: tuple[str, ...]
    both_variables: tuple[str, ...]
    inconclusive_variables: tuple[str, ...]
    refinements: tuple[Refinement, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "arc_signs": {f"{p}->{c}": s for (p, c), s in self.arc_signs.items()},
            "net_signs": dict(self.net_signs),
            "verdict": self.verdict.value,
            "isotone_variables": list(self.isotone_variables),
            "antitone_variables": list(self.antitone_variables),
            "both_variables": list(self.both_variables),
            "inconclusive_variables": list(self.inconclusive_variables),
            "refinements": [
                {"variable": r.variable, "budget": r.budget, "resolved_to": r.resolved_to}
                for r in self.refinements
            ],
        }


def approx_verdict(net: Network, refine: int = 0) -> ApproxReport:
    """The three-step approximate check: arc signs, per-observable net signs, verdict.

    With ``refine > 0``, '?' net signs are first given to :func:`refine_sign`
    with that enumeration budget.  Isotone/antitone/both/mixed verdicts are
    sound; inconclusive carries no claim.
    """
    arc_signs = all_arc_signs(net)
    output = net.output
    observables = net.observables
    net_signs: dict[str, str] = {}
    for x in observables:
        others = frozenset(observables) - {x}
        net_signs[x] = propagate(net, x, observed=others, arc_signs=arc_signs)[output]
    refinements: list[Refinement] = []
    if refine > 0:
        for x in observables:
            if net_signs[x] == UNKNOWN:
                resolved = refine_sign(net, x, refine)
                refinements.append(Refinement(x, refine, resolved))
                if resolved != UNKNOWN:
                    net_signs[x] = resolved

    groups: dict[str, list[str]] = {PLUS: [], MINUS: [], ZERO: [], UNKNOWN: []}
    for x in observables:
        groups[net_signs[x]].append(x)
    values = set(net_signs.values())
    if values <= {ZERO}:
        verdict = Verdict.BOTH
    elif values <= {PLUS, ZERO}:
        verdict = Verdict.ISOTONE
    elif values <= {MINUS, ZERO}:
        verdict = Verdict.ANTITONE
    elif UNKNOWN not in values:
        verdict = Verdict.MIXED
    else:
        verdict = Verdict.INCONCLUSIVE
    return ApproxReport(
        arc_signs=arc_signs,
        net_signs=net_signs,
        verdict=verdict,
        isotone_variables=tuple(groups[PLUS]),
        antitone_variables=tuple(groups[MINUS]),
        both_variables=tuple(groups[ZERO]),
        inconclusive_variables=tuple(groups[UNKNOWN]),
        refinements=tuple(refinements),
    )


def refine_sign(net: Network, x: str, budget: int) -> str:
    """Try to resolve a '?' net sign of observable ``x`` on the output with bounds.

    Exact inference over assignments to the other observables (up to
    ``budget`` of them; beyond that the bounds widen to [0, 1]) yields an
    interval box for the distribution of the output's unobservable parents.
    The context-weighted CDF difference is then evaluated at the extreme
    points of the box; a sign is returned only when every extreme point
    agrees, so an upgrade is never incorrect.
    """
    if budget <= 0:
        return UNKNOWN
    output = net.output
    out_parents = net.parents(output)
    if x not in out_parents:
        return UNKNOWN
    observables = set(net.observables)
    hidden = [p for p in out_parents if p != x and p not in observables]
    obs_ctx = [p for p in out_parents if p != x and p in observables]
    others = [o for o in net.observables if o != x]
    # The decomposition over the output's parents is exact only when no
    # conditioned variable lies below the output in the graph.
    if net.descendants(output) & observables:
        return UNKNOWN

    hidden_cards = [net.variable(h).cardinality for h in hidden]
    hidden_states = list(itertools.product(*(range(c) for c in hidden_cards)))
    x_card = net.variable(x).cardinality

    total = 1
    for o in others:
        total *= net.variable(o).cardinality

    # boxes[o_state][s_state] = (lo, hi) bounds on Pr(s | observation)
    boxes: dict[tuple[int, ...], dict[tuple[int, ...], tuple[float, float]]] = {}
    if total <= budget:
        for x_minus in enumerate_assignments(net, others):
            weight_vectors = []
            for v in range(x_card):
                evidence = x_minus.extended(x, v)
                if evidence_probability(net, evidence) <= 0.0:
                    continue
                if hidden:
                    factor = posterior_joint(net, evidence, tuple(hidden))
                    flat = factor.table.reshape(-1)
                    weight_vectors.append(tuple(float(p) for p in flat))
                else:
                    weight_vectors.append(())
            if not weight_vectors:
                continue
            first = weight_vectors[0]
            for other_vec in weight_vectors[1:]:
                if any(abs(a - b) > TOLERANCE for a, b in zip(first, other_vec)):
                    # The weights depend on the value of x itself; the
                    # common-weight decomposition would be unsound here.
                    return UNKNOWN
            o_state = tuple(x_minus[p] for p in obs_ctx)
            box = boxes.setdefault(o_state, {})
            for s_state, weight in zip(hidden_states, first if hidden else [1.0]):
                w = float(weight)
                lo, hi = box.get(s_state, (w, w))
                box[s_state] = (min(lo, w), max(hi, w))
    else:
        obs_cards = [net.variable(p).cardinality for p in obs_ctx]
        widest = {s: (0.0, 1.0) for s in hidden_states} if hidden else {(): (1.0, 1.0)}
        for o_state in itertools.product(*(range(c) for c in obs_cards)):
            boxes[o_state] = dict(widest)
    if not boxes:
        return UNKNOWN

    parent_cards = [net.variable(p).cardinality for p in out_parents]
    x_pos = out_parents.index(x)
    rows = net.cpts[output]
    out_card = net.variable(output).cardinality

    def row_cdf(v: int, s_state: tuple[int, ...], o_state: tuple[int, ...]) -> list[float]:
        combo = []
        s_it = iter(s_state)
        o_it = iter(o_state)
        for p in out_parents:
            if p == x:
                combo.append(v)
            elif p in observables:
                combo.append(next(o_it))
            else:
                combo.append(next(s_it))
        row = rows[_mixed_radix(tuple(combo), parent_cards)]
        return list(itertools.accumulate(row))

    all_le = all_ge = True
    for o_state, box in boxes.items():
        states = list(box)
        for v in range(x_card - 1):
            deltas = {}
            for s_state in states:
                lo_cdf = row_cdf(v, s_state, o_state)
                hi_cdf = row_cdf(v + 1, s_state, o_state)
                deltas[s_state] = [h - l for h, l in zip(hi_cdf, lo_cdf)]
            for w in range(out_card):
                upper = sum(
                    (box[s][1] if deltas[s][w] > 0 else box[s][0]) * deltas[s][w]
                    for s in states
                )
                lower = sum(
                    (box[s][0] if deltas[s][w] > 0 else box[s][1]) * deltas[s][w]
                    for s in states
                )
                if upper > TOLERANCE:
                    all_le = False
                if lower < -TOLERANCE:
                    all_ge = False
    if all_le and all_ge:
        return ZERO
    if all_le:
        return PLUS
    if all_ge:
        return MINUS
    return UNKNOWN
