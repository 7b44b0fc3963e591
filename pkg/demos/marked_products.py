"""Marked products: counting factorizations mod p and unambiguity.

Run: python demos/marked_products.py
"""

from rhodes import corpus
from rhodes.automata import (
    MarkedProductSpec,
    count_factorizations,
    counter_matrix,
    is_unambiguous,
    letter_dfa,
)

SIGMA = ("a", "b")


if __name__ == "__main__":
    # (Sigma* a Sigma*) with an odd number of factorizations: words with an odd number of a's
    spec = MarkedProductSpec((letter_dfa(SIGMA, SIGMA), letter_dfa(SIGMA, SIGMA)), ("a",), (1, 2), "counter")
    cm = counter_matrix(spec)
    print("letter matrices over F2:")
    for a, m in cm.letters.items():
        print(f"  {a}: {m.tolist()}")
    for w in ("a", "ab", "aba", "abaa", "bbb"):
        print(f"  {w!r}: {count_factorizations(spec, w)} factorizations, member {cm.member(w)}")

    print("unambiguity of letter-set products over {a, b, c}:")
    for s in corpus.schutzenberger_products():
        sets = ["{" + "".join(a for a in f.alphabet if f.delta[a][0] == 0) + "}*" for f in s.factors]
        shape = sets[0] + "".join(f" {a} {x}" for a, x in zip(s.letters, sets[1:]))
        rep = is_unambiguous(s)
        extra = "" if rep.unambiguous else f", e.g. {''.join(rep.witness)!r} has {rep.factorizations} factorizations"
        print(f"  {shape:<24} unambiguous: {rep.unambiguous}{extra}")
