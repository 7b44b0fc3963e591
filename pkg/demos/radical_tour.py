"""Radicals and representability of a few small semigroups.

Run: python demos/radical_tour.py
"""

from rhodes import corpus
from rhodes.congruence import quotient
from rhodes.radical import parse_field, rhodes_radical, rhodes_radical_oracle
from rhodes.varieties import classify_representability


def show(name, S, field):
    K = parse_field(field)
    res = rhodes_radical(S, K)
    oracle = rhodes_radical_oracle(S, K)
    Q, _ = quotient(S, res.congruence)
    flags = classify_representability(S, K).flags()
    granted = [k for k, v in flags.items() if v] or ["none"]
    print(f"{name:>14} over {field:<5} radical classes {list(map(list, res.congruence.classes))}")
    print(f"{'':>14}   oracle agrees: {res.congruence == oracle}; quotient order {Q.order}")
    print(f"{'':>14}   representability: {', '.join(granted)}")


if __name__ == "__main__":
    c = corpus.curated()
    # T2: the two constant maps collapse over any field, leaving Z2 with a zero.
    show("T2", c["T2"], "Q")
    show("T2", c["T2"], "F2")
    # A 2-group collapses completely in characteristic 2 but not in characteristic 0.
    show("Z4", c["Z4"], "Q")
    show("Z4", c["Z4"], "F2")
    # B2 is its own radical quotient and is never triangularizable.
    show("B2", c["B2"], "Q")
    # S3 keeps its sign character in characteristic 3.
    show("S3", c["S3"], "F3")
