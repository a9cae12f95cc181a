"""Hand-built networks shared across the test modules."""

from monobn import Network, Variable


def chain_network(p_low: float = 0.3, p_high: float = 0.8) -> Network:
    """X (binary, observable) -> C (binary, output) with Pr(c|x̄), Pr(c|x) given."""
    return Network(
        (Variable("X", ("xbar", "x")), Variable("C", ("cbar", "c"))),
        (("X", "C"),),
        ("X",),
        (),
        ("C",),
        {
            "X": ((0.5, 0.5),),
            "C": ((1.0 - p_low, p_low), (1.0 - p_high, p_high)),
        },
    )


def ternary_output_network() -> Network:
    """One binary observable; ternary output with the dominance-versus-mode posteriors.

    Posteriors: (0.25, 0.35, 0.4) at the low observation, (0, 0.55, 0.45) at
    the high one.  Isotone in distribution but not in mode.
    """
    return Network(
        (Variable("X", ("xbar", "x")), Variable("C", ("c1", "c2", "c3"))),
        (("X", "C"),),
        ("X",),
        (),
        ("C",),
        {
            "X": ((0.5, 0.5),),
            "C": ((0.25, 0.35, 0.4), (0.0, 0.55, 0.45)),
        },
    )


def binary_output_network() -> Network:
    """One binary observable; binary output isotone in mode but not in distribution.

    Posteriors: (0.6, 0.4) at the low observation, (0.9, 0.1) at the high one.
    """
    return chain_network(p_low=0.4, p_high=0.1)


def mixture_network() -> Network:
    """Non-monotone direct influence that is positive once the hidden context is averaged.

    Y is hidden with Pr(y) = 0.32; the influence of X1 on C is negative given
    y and positive given ȳ, yet Pr(c|x1) = 0.87 > Pr(c|x̄1) = 0.56, so the
    network is isotone for X1 while the arc sign is '?'.
    """
    return Network(
        (
            Variable("Y", ("ybar", "y")),
            Variable("X1", ("x1bar", "x1")),
            Variable("C", ("cbar", "c")),
        ),
        (("X1", "C"), ("Y", "C")),
        ("X1",),
        ("Y",),
        ("C",),
        {
            "Y": ((0.68, 0.32),),
            "X1": ((0.5, 0.5),),
            # rows over (Y, X1), X1 fastest
            "C": ((0.6, 0.4), (0.05, 0.95), (0.1, 0.9), (0.3, 0.7)),
        },
    )


def mixture_network_two_observables(p_y_low: float = 0.3, p_y_high: float = 0.5) -> Network:
    """Variant of :func:`mixture_network` where a second observable drives Y."""
    return Network(
        (
            Variable("X2", ("x2bar", "x2")),
            Variable("Y", ("ybar", "y")),
            Variable("X1", ("x1bar", "x1")),
            Variable("C", ("cbar", "c")),
        ),
        (("X2", "Y"), ("X1", "C"), ("Y", "C")),
        ("X2", "X1"),
        ("Y",),
        ("C",),
        {
            "X2": ((0.5, 0.5),),
            "Y": ((1.0 - p_y_low, p_y_low), (1.0 - p_y_high, p_y_high)),
            "X1": ((0.5, 0.5),),
            "C": ((0.6, 0.4), (0.05, 0.95), (0.1, 0.9), (0.3, 0.7)),
        },
    )


def evidence_base_network(p_e_low: float = 0.2, p_e_high: float = 0.6) -> Network:
    """X (observable) -> E (hidden, binary): the minimal base for the gadget."""
    return Network(
        (Variable("X", ("xbar", "x")), Variable("E", ("ebar", "e"))),
        (("X", "E"),),
        ("X",),
        (),
        ("E",),  # E doubles as the base's output so the role partition is valid
        {
            "X": ((0.5, 0.5),),
            "E": ((1.0 - p_e_low, p_e_low), (1.0 - p_e_high, p_e_high)),
        },
    )
