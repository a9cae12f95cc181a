import json

import pytest

from monobn import (
    MbnParseError,
    MbnValidationError,
    decide_mid,
    parse_mbn,
    serialize_mbn,
)
from monobn.cli import run_cli
from monobn.qualitative import Verdict, approx_verdict
from fixtures import chain_network, mixture_network, ternary_output_network

MINIMAL_DOC = """\
# smallest useful network
var X : xbar x
var C : cbar c

role observable X
role output C

arc X -> C

cpt X
row 0.5 0.5
cpt C
row 0.7 0.3
row 0.2 0.8
"""


def test_parse_minimal_document():
    net = parse_mbn(MINIMAL_DOC)
    assert net.names == ("X", "C")
    assert net.variable("C").values == ("cbar", "c")
    assert net.observables == ("X",)
    assert net.outputs == ("C",)
    assert net.arcs == (("X", "C"),)
    assert net.cpts["C"] == ((0.7, 0.3), (0.2, 0.8))


def test_roundtrip_identity_on_fixtures():
    for net in (chain_network(), ternary_output_network(), mixture_network()):
        canonical = net.renormalized()
        assert parse_mbn(serialize_mbn(canonical)) == canonical


def test_roundtrip_identity_on_random_corpus(corpus200):
    for net in corpus200[:50]:
        assert parse_mbn(serialize_mbn(net)) == net


def test_serialize_is_idempotent(corpus200):
    for net in corpus200[:20]:
        text = serialize_mbn(net)
        assert serialize_mbn(parse_mbn(text)) == text


def test_parse_error_missing_output_role():
    doc = MINIMAL_DOC.replace("role output C\n", "")
    with pytest.raises(MbnValidationError, match="exactly one output"):
        parse_mbn(doc)


def test_parse_error_row_count_names_variable():
    doc = MINIMAL_DOC.replace("row 0.2 0.8\n", "")
    with pytest.raises(MbnValidationError, match="C"):
        parse_mbn(doc)


def test_parse_error_bad_number_has_position():
    doc = MINIMAL_DOC.replace("row 0.7 0.3", "row 0.7 oops")
    with pytest.raises(MbnParseError) as exc_info:
        parse_mbn(doc)
    assert exc_info.value.line == 13
    assert exc_info.value.column == 9
    assert "oops" in str(exc_info.value)


def test_parse_error_unknown_directive():
    with pytest.raises(MbnParseError, match="unknown directive"):
        parse_mbn("vars X : a b\n")


def test_parse_error_use_before_declaration():
    with pytest.raises(MbnParseError, match="unknown variable 'C'"):
        parse_mbn("var X : a b\narc X -> C\n")


def test_parse_error_row_outside_cpt():
    with pytest.raises(MbnParseError, match="outside a cpt"):
        parse_mbn("var X : a b\nrow 0.5 0.5\n")


def test_parse_renormalizes_tiny_drift():
    import math

    doc = MINIMAL_DOC.replace("row 0.7 0.3", "row 0.70000000003 0.3")
    net = parse_mbn(doc)
    assert math.fsum(net.cpts["C"][0]) == 1.0


def test_parse_rejects_rows_far_from_one():
    doc = MINIMAL_DOC.replace("row 0.7 0.3", "row 7 3")
    with pytest.raises(MbnValidationError, match="row sum"):
        parse_mbn(doc)


@pytest.fixture
def chain_file(tmp_path):
    path = tmp_path / "chain.mbn"
    path.write_text(serialize_mbn(chain_network()), encoding="utf-8")
    return str(path)


def test_cli_verify_ok(chain_file, capsys):
    assert run_cli(["verify", chain_file]) == 0
    out = capsys.readouterr().out
    assert "verdict: isotone-in-distribution" in out
    assert "net sign of X on C: +" in out


def test_cli_verify_json(chain_file, capsys):
    assert run_cli(["verify", chain_file, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "isotone-in-distribution"
    assert payload["net_signs"] == {"X": "+"}
    assert payload["arc_signs"] == {"X->C": "+"}


def test_cli_oracle_json(chain_file, capsys):
    assert run_cli(["oracle", chain_file, "--property", "mid",
                    "--direction", "antitone", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["property"] == "mid"
    assert payload["direction"] == "antitone"
    assert payload["holds"] is False
    assert payload["counterexample"]["low"] == {"X": "xbar"}
    assert payload["counterexample"]["high"] == {"X": "x"}


def test_cli_signs(chain_file, capsys):
    assert run_cli(["signs", chain_file]) == 0
    out = capsys.readouterr().out
    assert "arc X -> C: +" in out
    assert "net X -> C: +" in out


def test_cli_exit_2_on_bad_network(tmp_path, capsys):
    bad = tmp_path / "bad.mbn"
    bad.write_text("var X : a\n", encoding="utf-8")
    assert run_cli(["verify", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err
    assert run_cli(["verify", str(tmp_path / "missing.mbn")]) == 2
    capsys.readouterr()


def test_cli_exit_3_on_usage_error(chain_file, capsys):
    assert run_cli(["oracle", chain_file, "--property", "nope",
                    "--direction", "isotone"]) == 3
    assert run_cli(["gadget", chain_file, "--evidence", "C=c",
                    "--p", "0.6", "-o", "-"]) == 3
    err = capsys.readouterr().err
    assert "threshold" in err


def test_cli_exit_4_on_zero_evidence(tmp_path, capsys):
    doc = MINIMAL_DOC.replace("row 0.5 0.5", "row 0 1")
    path = tmp_path / "zero.mbn"
    path.write_text(doc, encoding="utf-8")
    assert run_cli(["infer", str(path), "--evidence", "X=xbar", "--target", "C"]) == 4
    assert "error:" in capsys.readouterr().err


def test_cli_infer_output(chain_file, capsys):
    assert run_cli(["infer", chain_file, "--evidence", "X=x", "--target", "C"]) == 0
    out = capsys.readouterr().out
    assert "Pr(C=c | X=x) = 0.800000000" in out


def test_cli_gadget_and_random_roundtrip(tmp_path, capsys):
    base = tmp_path / "base.mbn"
    assert run_cli(["random", "--nodes", "6", "--seed", "7", "-o", str(base)]) == 0
    net = parse_mbn(base.read_text(encoding="utf-8"))
    hidden = [
        n
        for n in net.names
        if n not in net.observables and net.variable(n).cardinality == 2
    ]
    out = tmp_path / "gadget.mbn"
    assert run_cli(["gadget", str(base), "--evidence", f"{hidden[0]}=v1",
                    "--p", "0.25", "-o", str(out)]) == 0
    extended = parse_mbn(out.read_text(encoding="utf-8"))
    assert extended.output == "C~gadget"
    capsys.readouterr()


def test_cli_verify_never_contradicts_oracle(tmp_path, capsys, corpus200):
    for i, net in enumerate(corpus200[:40]):
        path = tmp_path / f"n{i}.mbn"
        path.write_text(serialize_mbn(net), encoding="utf-8")
        assert run_cli(["verify", str(path), "--json"]) == 0
        verdict = json.loads(capsys.readouterr().out)["verdict"]
        if verdict == Verdict.ISOTONE.value:
            assert decide_mid(net, "isotone").holds
        elif verdict == Verdict.ANTITONE.value:
            assert decide_mid(net, "antitone").holds
        elif verdict == Verdict.BOTH.value:
            assert decide_mid(net, "isotone").holds
            assert decide_mid(net, "antitone").holds


def test_cli_verify_refine_resolves_mixture(tmp_path, capsys):
    path = tmp_path / "mix.mbn"
    path.write_text(serialize_mbn(mixture_network()), encoding="utf-8")
    assert run_cli(["verify", str(path)]) == 0
    assert "inconclusive" in capsys.readouterr().out
    assert run_cli(["verify", str(path), "--refine", "4"]) == 0
    out = capsys.readouterr().out
    assert "verdict: isotone-in-distribution" in out
    assert "refined X1" in out


def test_bundled_network_parses_and_verifies():
    from importlib import resources

    text = (resources.files("monobn") / "data" / "oesophagus_like.mbn").read_text()
    net = parse_mbn(text)
    assert len(net.observables) == 7
    assert approx_verdict(net).verdict is Verdict.ISOTONE
