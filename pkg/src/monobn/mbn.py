"""The MBN network file format: line-oriented, diff-friendly, bit-exact.

Grammar (UTF-8, '#' starts a comment, blank lines ignored)::

    var <name> : <v0> <v1> ...        # value order = declaration order
    role observable|intermediate|output <name>
    arc <parent> -> <child>
    cpt <name>
    row <p0> <p1> ...                 # one row per parent assignment,
                                      # canonical order (last parent fastest)

Variables must be declared before they are referenced.  Parsing validates
the network and renormalizes every CPT row once; serialization emits the
shortest decimals that round-trip, so parse -> serialize -> parse is the
identity.
"""

from __future__ import annotations

import re

from .model import Network, Variable, Violation, validate_network

_ROLES = ("observable", "intermediate", "output")


class MbnParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class MbnValidationError(ValueError):
    def __init__(self, violations: list[Violation]):
        super().__init__("invalid network:\n" + "\n".join(f"  {v}" for v in violations))
        self.violations = violations


def parse_mbn(text: str) -> Network:
    """Parse and validate an MBN document; CPT rows are renormalized once."""
    variables: list[Variable] = []
    known: dict[str, Variable] = {}
    arcs: list[tuple[str, str]] = []
    roles: dict[str, list[str]] = {role: [] for role in _ROLES}
    cpts: dict[str, list[tuple[float, ...]]] = {}
    current_cpt: str | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not tokens:
            continue
        keyword, col = tokens[0]
        rest = tokens[1:]

        def need(name: str, at: tuple[str, int]) -> str:
            if at[0] not in known:
                raise MbnParseError(f"unknown variable {at[0]!r} in {name}", lineno, at[1])
            return at[0]

        if keyword == "var":
            if len(rest) < 4 or rest[1][0] != ":":
                raise MbnParseError("expected 'var <name> : <v0> <v1> ...'", lineno, col)
            name = rest[0][0]
            if name in known:
                raise MbnParseError(f"variable {name!r} declared twice", lineno, rest[0][1])
            try:
                variable = Variable(name, tuple(t for t, _ in rest[2:]))
            except ValueError as exc:
                raise MbnParseError(str(exc), lineno, rest[0][1]) from None
            variables.append(variable)
            known[name] = variable
            current_cpt = None
        elif keyword == "role":
            if len(rest) != 2 or rest[0][0] not in _ROLES:
                raise MbnParseError(
                    "expected 'role observable|intermediate|output <name>'", lineno, col
                )
            roles[rest[0][0]].append(need("role", rest[1]))
            current_cpt = None
        elif keyword == "arc":
            if len(rest) != 3 or rest[1][0] != "->":
                raise MbnParseError("expected 'arc <parent> -> <child>'", lineno, col)
            arcs.append((need("arc", rest[0]), need("arc", rest[2])))
            current_cpt = None
        elif keyword == "cpt":
            if len(rest) != 1:
                raise MbnParseError("expected 'cpt <name>'", lineno, col)
            current_cpt = need("cpt", rest[0])
            if current_cpt in cpts:
                raise MbnParseError(f"duplicate cpt for {current_cpt!r}", lineno, rest[0][1])
            cpts[current_cpt] = []
        elif keyword == "row":
            if current_cpt is None:
                raise MbnParseError("'row' outside a cpt block", lineno, col)
            values = []
            for token, tcol in rest:
                try:
                    values.append(float(token))
                except ValueError:
                    raise MbnParseError(f"not a number: {token!r}", lineno, tcol) from None
            cpts[current_cpt].append(tuple(values))
        else:
            raise MbnParseError(f"unknown directive {keyword!r}", lineno, col)

    net = Network(
        tuple(variables),
        tuple(arcs),
        tuple(roles["observable"]),
        tuple(roles["intermediate"]),
        tuple(roles["output"]),
        {name: tuple(rows) for name, rows in cpts.items()},
    )
    violations = validate_network(net)
    if violations:
        raise MbnValidationError(violations)
    return net.renormalized()


def _format_probability(p: float) -> str:
    """Shortest decimal that parses back to exactly p, preferring 12 significant digits."""
    for digits in range(1, 18):
        s = format(p, f".{digits}g")
        if float(s) == p:
            return s
    return repr(p)


def serialize_mbn(net: Network) -> str:
    """Canonical MBN text: declaration order preserved, rows in canonical order."""
    lines = []
    for v in net.variables:
        lines.append(f"var {v.name} : " + " ".join(v.values))
    lines.append("")
    for name in net.observables:
        lines.append(f"role observable {name}")
    for name in net.intermediates:
        lines.append(f"role intermediate {name}")
    for name in net.outputs:
        lines.append(f"role output {name}")
    lines.append("")
    for parent, child in net.arcs:
        lines.append(f"arc {parent} -> {child}")
    if net.arcs:
        lines.append("")
    for v in net.variables:
        lines.append(f"cpt {v.name}")
        for row in net.cpts[v.name]:
            lines.append("row " + " ".join(_format_probability(p) for p in row))
    lines.append("")
    return "\n".join(lines)
