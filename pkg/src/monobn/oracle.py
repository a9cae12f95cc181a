"""Exact monotonicity decisions by enumeration over observable assignments.

MID: higher-ordered observations must yield stochastically dominant posteriors
over the output variable.  MIM: they must yield a mode at least as high.
Both are decided over covering pairs (one variable raised one step), which is
equivalent to quantifying over all comparable pairs because dominance and the
order on modes are transitive; the all-pairs mode is kept as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

from .inference import Distribution, ZeroEvidenceError, cdf, mode, posterior
from .model import (
    TOLERANCE,
    Assignment,
    Network,
    OrderRelation,
    compare_assignments,
    covering_successors,
    enumerate_assignments,
)

Direction = Literal["isotone", "antitone"]


def dominates(q: Distribution, p: Distribution) -> bool:
    """First-order stochastic dominance: q's CDF lies at or below p's everywhere."""
    if q.variable != p.variable or len(q.probs) != len(p.probs):
        raise ValueError("distributions are over different variables")
    return all(fq <= fp + TOLERANCE for fq, fp in zip(cdf(q), cdf(p)))


@dataclass(frozen=True)
class Counterexample:
    """A comparable pair of observable assignments violating the property."""

    low: Assignment
    high: Assignment
    #: For MID: first CDF index where the inequality fails; for MIM: None.
    cdf_index: int | None = None
    #: For MIM: the two (low, high) modes; for MID: None.
    modes: tuple[int, int] | None = None


@dataclass(frozen=True)
class OracleVerdict:
    property: Literal["mid", "mim"]
    direction: Direction
    holds: bool
    counterexample: Counterexample | None
    #: Observable assignments skipped because their probability is zero.
    skipped_assignments: tuple[Assignment, ...]
    skipped_pairs: int
    pairs_checked: int

    def to_json(self, net: Network) -> dict:
        ce = None
        if self.counterexample is not None:
            ce = {
                "low": self.counterexample.low.labels(net),
                "high": self.counterexample.high.labels(net),
                "cdf_index": self.counterexample.cdf_index,
                "modes": list(self.counterexample.modes) if self.counterexample.modes else None,
            }
        return {
            "property": self.property,
            "direction": self.direction,
            "holds": self.holds,
            "counterexample": ce,
            "skipped_assignments": [a.labels(net) for a in self.skipped_assignments],
            "skipped_pairs": self.skipped_pairs,
            "pairs_checked": self.pairs_checked,
        }


def _observable_posteriors(net: Network) -> tuple[dict[Assignment, Distribution], list[Assignment]]:
    """Posterior per full observable assignment; zero-probability ones listed apart."""
    posteriors: dict[Assignment, Distribution] = {}
    skipped: list[Assignment] = []
    target = net.output
    for x in enumerate_assignments(net, net.observables):
        try:
            posteriors[x] = posterior(net, x, target)
        except ZeroEvidenceError:
            skipped.append(x)
    return posteriors, skipped


def _pairs(net: Network, assignments: list[Assignment], all_pairs: bool) -> Iterator[tuple[Assignment, Assignment]]:
    """Comparable pairs (low, high) in canonical enumeration order."""
    if all_pairs:
        for x in assignments:
            for x2 in assignments:
                rel = compare_assignments(x, x2)
                if rel is OrderRelation.LESS_EQ:
                    yield x, x2
    else:
        for x in assignments:
            yield from ((x, x2) for x2 in covering_successors(net, x))


def _decide(net: Network, direction: Direction, all_pairs: bool, check) -> OracleVerdict:
    posteriors, skipped = _observable_posteriors(net)
    ordering = list(enumerate_assignments(net, net.observables))
    counterexample = None
    skipped_pairs = 0
    checked = 0
    skipped_set = set(skipped)
    for low, high in _pairs(net, ordering, all_pairs):
        if low in skipped_set or high in skipped_set:
            skipped_pairs += 1
            continue
        if direction == "antitone":
            low_d, high_d = posteriors[high], posteriors[low]
        else:
            low_d, high_d = posteriors[low], posteriors[high]
        checked += 1
        failure = check(low_d, high_d)
        if failure is not None:
            counterexample = Counterexample(low, high, **failure)
            break
    return OracleVerdict(
        property="mid" if check is _check_mid else "mim",
        direction=direction,
        holds=counterexample is None,
        counterexample=counterexample,
        skipped_assignments=tuple(skipped),
        skipped_pairs=skipped_pairs,
        pairs_checked=checked,
    )


def _check_mid(low_d: Distribution, high_d: Distribution) -> dict | None:
    low_cdf, high_cdf = cdf(low_d), cdf(high_d)
    for i, (fl, fh) in enumerate(zip(low_cdf, high_cdf)):
        if fh > fl + TOLERANCE:
            return {"cdf_index": i}
    return None


def _check_mim(low_d: Distribution, high_d: Distribution) -> dict | None:
    ml, mh = mode(low_d), mode(high_d)
    if ml > mh:
        return {"modes": (ml, mh)}
    return None


def decide_mid(net: Network, direction: Direction = "isotone", all_pairs: bool = False) -> OracleVerdict:
    """Decide monotonicity in distribution by brute force.

    Zero-probability observable assignments are skipped (vacuous truth) and
    reported in the verdict.  The first violating pair in canonical order is
    returned as the counterexample.
    """
    return _decide(net, direction, all_pairs, _check_mid)


def decide_mim(net: Network, direction: Direction = "isotone", all_pairs: bool = False) -> OracleVerdict:
    """Decide monotonicity in mode by brute force (ties broken to the lowest value)."""
    return _decide(net, direction, all_pairs, _check_mim)
