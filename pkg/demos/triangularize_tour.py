"""Explicit triangular bases for regular representations.

Run: python demos/triangularize_tour.py
"""

from rhodes import corpus
from rhodes.errors import Refusal
from rhodes.linrep import composition_flag, exact_field, regular_representation, triangularize


def show_matrix(M, F):
    for row in M:
        print("      ", " ".join(f"{str(F.to_json(x)):>5}" for x in row))


def attempt(name, S, field, mode="triangular"):
    print(f"{name} over {field} ({mode}):")
    rep = regular_representation(S, field)
    print(f"    composition factors have dimensions {composition_flag(rep).block_sizes}")
    try:
        t = triangularize(S, field, mode)
    except Refusal as exc:
        print(f"    refused: {exc}")
        return
    F = exact_field(field)
    for s, M in t.images.items():
        print(f"    element {s}:")
        show_matrix(M, F)


if __name__ == "__main__":
    c = corpus.curated()
    attempt("Z2", c["Z2"], "F2", "unitriangular")   # the swap becomes a Jordan block
    attempt("Z2", c["Z2"], "Q", "unitriangular")    # eigenvalue -1 blocks it
    attempt("Z3", c["Z3"], "Q")                     # x^3 - 1 does not split over Q
    attempt("Z3", c["Z3"], "F4")                    # ... but does over F4
    attempt("B2", c["B2"], "Q")                     # a 2-dimensional irreducible survives
