"""Named small semigroups and the exhaustive table generator."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

import numpy as np

from .errors import CapExceeded
from .semigroup import FiniteSemigroup, adjoin_identity, from_cayley_table, from_transformations

EXHAUSTIVE_MAX = 3


def trivial() -> FiniteSemigroup:
    return from_cayley_table(1, [[0]])


def u1() -> FiniteSemigroup:
    """``{e, f}`` with ``e`` absorbing and ``f`` the identity."""
    return from_cayley_table(2, [[0, 0], [0, 1]])


def right_zero(n: int = 2) -> FiniteSemigroup:
    return from_cayley_table(n, [list(range(n))] * n)


def left_zero(n: int = 2) -> FiniteSemigroup:
    return from_cayley_table(n, [[i] * n for i in range(n)])


def null(n: int = 2) -> FiniteSemigroup:
    """All products equal element 0."""
    return from_cayley_table(n, [[0] * n for _ in range(n)])


def rectangular_band(rows: int = 2, cols: int = 2) -> FiniteSemigroup:
    """Pairs ``(i, j)`` indexed ``i*cols + j`` with ``(i, j)(k, l) = (i, l)``."""
    n = rows * cols
    table = [[(s // cols) * cols + (t % cols) for t in range(n)] for s in range(n)]
    return from_cayley_table(n, table)


def brandt_b2() -> FiniteSemigroup:
    """``{0, E11, E12, E21, E22}``: 2x2 matrix units with zero, indexed in that order."""
    units = [None, (0, 0), (0, 1), (1, 0), (1, 1)]
    index = {u: i for i, u in enumerate(units)}

    def mul(s, t):
        if s is None or t is None or s[1] != t[0]:
            return 0
        return index[(s[0], t[1])]

    return from_cayley_table(5, [[mul(s, t) for t in units] for s in units])


def cyclic_group(n: int) -> FiniteSemigroup:
    return from_cayley_table(n, [[(i + j) % n for j in range(n)] for i in range(n)])


def symmetric_group(k: int = 3) -> FiniteSemigroup:
    gens = {"s": [1, 0] + list(range(2, k)), "c": list(range(1, k)) + [0]}
    return from_transformations(k, gens, monoid=True)


def full_transformation_monoid(k: int = 2) -> FiniteSemigroup:
    gens = {"".join(map(str, f)): list(f) for f in itertools.product(range(k), repeat=k)}
    return from_transformations(k, gens, monoid=True)


def monogenic(index: int, period: int) -> FiniteSemigroup:
    """``<a | a^(index+period) = a^index>``; element ``i`` is ``a^(i+1)``."""
    n = index + period - 1

    def power(k):
        return k if k <= n else index + (k - index) % period

    return from_cayley_table(n, [[power(i + j + 2) - 1 for j in range(n)] for i in range(n)])


def curated() -> dict[str, FiniteSemigroup]:
    return {
        "U1": u1(),
        "right_zero_2": right_zero(2),
        "left_zero_2": left_zero(2),
        "null_2": null(2),
        "rect_band_2x2": rectangular_band(2, 2),
        "B2": brandt_b2(),
        "B2_1": adjoin_identity(brandt_b2()),
        "T2": full_transformation_monoid(2),
        "Z2": cyclic_group(2),
        "Z3": cyclic_group(3),
        "Z4": cyclic_group(4),
        "Z6": cyclic_group(6),
        "S3": symmetric_group(3),
        "monogenic_3_2": monogenic(2, 1),
    }


def groups() -> dict[str, FiniteSemigroup]:
    c = curated()
    return {k: c[k] for k in ("Z2", "Z3", "Z4", "Z6", "S3")}


def associative_tables(order: int) -> np.ndarray:
    """Every associative table on ``order`` labeled elements, as an array of tables."""
    if order > EXHAUSTIVE_MAX:
        raise CapExceeded(EXHAUSTIVE_MAX, "exhaustive order")
    n = order
    cells = np.array(list(itertools.product(range(n), repeat=n * n)), dtype=np.int64)
    tables = cells.reshape(-1, n, n)
    ok = np.ones(len(tables), dtype=bool)
    idx = np.arange(len(tables))
    for x, y, z in itertools.product(range(n), repeat=3):
        xy = tables[:, x, y]
        yz = tables[:, y, z]
        ok &= tables[idx, xy, z] == tables[idx, x, yz]
    return tables[ok]


def generate_corpus(max_order: int) -> Iterator[FiniteSemigroup]:
    """All associative tables of order ``1..max_order`` (labeled, not up to isomorphism)."""
    for n in range(1, max_order + 1):
        for t in associative_tables(n):
            yield FiniteSemigroup(t)


def exhaustive(max_order: int = EXHAUSTIVE_MAX) -> dict[str, FiniteSemigroup]:
    out = {}
    for n in range(1, max_order + 1):
        for i, t in enumerate(associative_tables(n)):
            out[f"table{n}_{i}"] = FiniteSemigroup(t)
    return out


# ---------------------------------------------------------------------------
# automata and marked products


def _random_idempotent_map(n: int, rng: random.Random, decreasing: bool) -> tuple[int, ...]:
    """Pick an image set, send it to itself and everything else into it."""
    while True:
        image = sorted(rng.sample(range(n), rng.randint(1, n)))
        f = []
        for q in range(n):
            if q in image:
                f.append(q)
            else:
                choices = [r for r in image if r <= q] if decreasing else image
                if not choices:
                    break
                f.append(rng.choice(choices))
        else:
            return tuple(f)


def random_ds_automata(count: int, seed: int = 0, max_states: int = 6) -> list[dict[str, tuple[int, ...]]]:
    """Synchronizing automata whose transition monoid lies in DS.

    Letters are idempotent maps, mostly order-decreasing ones (whose monoids
    are J-trivial); candidates are kept only if they pass both filters.
    """
    from .automata import is_synchronizing, transition_monoid
    from .varieties import variety_member

    rng = random.Random(seed)
    out = []
    seen = set()
    while len(out) < count:
        n = rng.randint(2, max_states)
        k = rng.randint(1, 3)
        decreasing = rng.random() < 0.8
        letters = "abc"[:k]
        acts = {a: _random_idempotent_map(n, rng, decreasing) for a in letters}
        key = tuple(sorted(acts.items()))
        if key in seen or not is_synchronizing(acts):
            continue
        seen.add(key)
        if variety_member(transition_monoid(acts)[0], "DS"):
            out.append(acts)
    return out


def random_dfa(alphabet, rng: random.Random, max_states: int = 3):
    """A small partial DFA accepting at least one word, trimmed."""
    from .automata import Dfa

    while True:
        n = rng.randint(1, max_states)
        delta = {a: tuple(rng.choice([-1] + list(range(n))) for _ in range(n)) for a in alphabet}
        finals = frozenset(q for q in range(n) if rng.random() < 0.5)
        d = Dfa(n, tuple(alphabet), delta, 0, finals)
        if d.reachable() & d.coreachable():
            return d.trimmed()


def random_marked_products(count: int, seed: int = 0, alphabet=("a", "b"), mode: str = "counter"):
    from .automata import MarkedProductSpec

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, 2)
        factors = tuple(random_dfa(alphabet, rng) for _ in range(n + 1))
        letters = tuple(rng.choice(alphabet) for _ in range(n))
        counter = None
        if mode == "counter":
            p = rng.choice([2, 3])
            counter = (rng.randrange(p), p)
        out.append(MarkedProductSpec(factors, letters, counter, mode))
    return out


def schutzenberger_products():
    """``A_0* a_1 A_1* ... a_n A_n*`` with letter-set factors, some unambiguous by design."""
    from .automata import MarkedProductSpec, letter_dfa

    sigma = ("a", "b", "c")
    shapes = [
        (("b",), "a", ("c",)),
        (("b", "c"), "a", ("b", "c")),
        (("b",), "a", ("a", "b")),
        (("a", "b"), "a", ("b",)),
        (("a", "b", "c"), "a", ("a", "b", "c")),
        (("c",), "a", ("b", "c"), "b", ("a", "c")),
        (("b", "c"), "a", ("c",), "b", ("a", "b", "c")),
        ((), "a", ("b",), "c", ()),
        (("a",), "b", ("a",), "b", ("a",)),
        (("a", "c"), "b", ("a", "b"), "c", ("a",)),
    ]
    out = []
    for shape in shapes:
        sets, marks = shape[0::2], shape[1::2]
        out.append(MarkedProductSpec(tuple(letter_dfa(sigma, s) for s in sets), tuple(marks), None, "unambiguous"))
    return out
