import math

import pytest

from monobn import (
    Assignment,
    GadgetSpec,
    Network,
    Variable,
    build_gadget,
    condmap_exceeds,
    decide_mim,
    posterior,
    random_network,
    validate_network,
)
from monobn.gadget import GADGET_SUFFIX
from fixtures import evidence_base_network


def test_gadget_leak_arithmetic():
    # Pr(a | E != e) = (1/2 - p) / (1 - p)
    base = evidence_base_network()
    gadget = build_gadget(GadgetSpec(base, "E", "e", 0.3))
    a = "A" + GADGET_SUFFIX
    assert gadget.cpts[a][1] == (0.0, 1.0)  # evidence row copies E
    assert gadget.cpts[a][0][1] == pytest.approx(2.0 / 7.0, abs=1e-12)

    gadget_zero = build_gadget(GadgetSpec(base, "E", "e", 0.0))
    assert gadget_zero.cpts[a][0][1] == pytest.approx(0.5, abs=1e-12)


def test_gadget_roles_and_structure():
    base = evidence_base_network()
    gadget = build_gadget(GadgetSpec(base, "E", "e", 0.25))
    a, b, c = (s + GADGET_SUFFIX for s in "ABC")
    assert validate_network(gadget) == []
    assert gadget.observables == ("X", b)
    assert gadget.outputs == (c,)
    assert set(gadget.intermediates) == {"E", a}
    assert set(gadget.arcs) - set(base.arcs) == {("E", a), (a, c), (b, c)}
    for row in gadget.cpts[a] + gadget.cpts[b] + gadget.cpts[c]:
        assert math.fsum(row) == pytest.approx(1.0, abs=1e-12)


def test_gadget_preserves_polytree():
    base = random_network(n_nodes=7, seed=11, polytree=True)
    hidden = [
        n
        for n in base.intermediates
        if n != base.output and base.variable(n).cardinality == 2
    ]
    if not hidden:
        pytest.skip("no hidden binary variable in this base")
    assert base.is_polytree()
    gadget = build_gadget(GadgetSpec(base, hidden[0], "v1", 0.2))
    assert gadget.is_polytree()
    assert len(gadget.arcs) == len(gadget.variables) - 1


def test_gadget_spec_rejections():
    base = evidence_base_network()
    with pytest.raises(ValueError, match="threshold"):
        GadgetSpec(base, "E", "e", 0.5)
    with pytest.raises(ValueError, match="observable"):
        GadgetSpec(base, "X", "x", 0.25)
    with pytest.raises(ValueError):
        GadgetSpec(base, "nope", "e", 0.25)
    ternary = Network(
        (Variable("X", ("x0", "x1")), Variable("E", ("e0", "e1", "e2"))),
        (("X", "E"),),
        ("X",),
        (),
        ("E",),
        {"X": ((0.5, 0.5),), "E": ((0.2, 0.3, 0.5), (0.1, 0.4, 0.5))},
    )
    with pytest.raises(ValueError, match="binary"):
        GadgetSpec(ternary, "E", "e1", 0.25)


def test_gadget_rejects_name_collision():
    base = Network(
        (Variable("A" + GADGET_SUFFIX, ("a0", "a1")), Variable("E", ("ebar", "e"))),
        (("A" + GADGET_SUFFIX, "E"),),
        ("A" + GADGET_SUFFIX,),
        (),
        ("E",),
        {
            "A" + GADGET_SUFFIX: ((0.5, 0.5),),
            "E": ((0.8, 0.2), (0.4, 0.6)),
        },
    )
    with pytest.raises(ValueError, match="collision"):
        build_gadget(GadgetSpec(base, "E", "e", 0.25))


def test_gadget_posterior_arithmetic():
    # Pr(a | x) = q + (1 - q) * (1/2 - p) / (1 - p) with q = Pr(e | x),
    # which exceeds 1/2 exactly when q > p.
    for q, p in ((0.5, 0.25), (0.1, 0.25), (0.25, 0.25), (0.4, 0.1)):
        base = evidence_base_network(p_e_low=0.05, p_e_high=q)
        gadget = build_gadget(GadgetSpec(base, "E", "e", p))
        d = posterior(gadget, Assignment.of({"X": 1}), "A" + GADGET_SUFFIX)
        expected = q + (1.0 - q) * (0.5 - p) / (1.0 - p)
        assert d.probs[1] == pytest.approx(expected, abs=1e-9)
        assert (d.probs[1] > 0.5 + 1e-9) == (q > p + 1e-9)


def test_gadget_output_zero_when_b_high():
    base = evidence_base_network()
    gadget = build_gadget(GadgetSpec(base, "E", "e", 0.25))
    b, c = "B" + GADGET_SUFFIX, "C" + GADGET_SUFFIX
    for x in (0, 1):
        d = posterior(gadget, Assignment.of({"X": x, b: 1}), c)
        assert d.probs[1] == pytest.approx(0.0, abs=1e-12)


def test_condmap_examples():
    base = evidence_base_network(p_e_low=0.2, p_e_high=0.6)
    exceeds, witness = condmap_exceeds(base, "E", "e", 0.5)
    assert exceeds
    assert witness == Assignment.of({"X": 1})
    assert condmap_exceeds(base, "E", "e", 0.7) == (False, None)
    assert condmap_exceeds(base, "E", "e", 1.0) == (False, None)


def test_condmap_rejects_observable_evidence():
    with pytest.raises(ValueError):
        condmap_exceeds(evidence_base_network(), "X", "x", 0.3)


def test_condmap_equivalent_to_mode_violation():
    # the threshold question and the monotonicity-in-mode question coincide
    thresholds = (0.1, 0.25, 0.4, 0.45)
    for seed in range(15):
        base = random_network(n_nodes=5 + seed % 4, seed=1000 + seed)
        hidden = [
            n
            for n in base.names
            if n not in base.observables and base.variable(n).cardinality == 2
        ]
        if not hidden:
            continue
        e = hidden[0]
        for p in thresholds:
            gadget = build_gadget(GadgetSpec(base, e, "v1", p))
            exceeds, _ = condmap_exceeds(base, e, "v1", p)
            assert exceeds == (not decide_mim(gadget, "isotone").holds)


def test_random_network_deterministic_for_seed():
    assert random_network(n_nodes=8, seed=42) == random_network(n_nodes=8, seed=42)
    assert random_network(n_nodes=8, seed=42) != random_network(n_nodes=8, seed=43)


def test_random_network_validates(corpus200):
    for net in corpus200[:50]:
        assert validate_network(net) == []


def test_random_network_polytree_arc_count():
    for seed in range(10):
        net = random_network(n_nodes=9, seed=seed, polytree=True)
        assert net.is_polytree()
        assert len(net.arcs) == len(net.variables) - 1


def test_random_network_respects_requested_shape():
    net = random_network(n_nodes=6, seed=3, n_observables=4, value_counts=(2, 3))
    assert len(net.observables) == 4
    assert len(net.intermediates) + len(net.outputs) == 2
    assert all(v.cardinality in (2, 3) for v in net.variables)


def test_random_network_argument_errors():
    with pytest.raises(ValueError):
        random_network(n_nodes=1, seed=0)
    with pytest.raises(ValueError):
        random_network(n_nodes=4, seed=0, value_counts=(1,))
    with pytest.raises(ValueError):
        random_network(n_nodes=4, seed=0, n_observables=4)
