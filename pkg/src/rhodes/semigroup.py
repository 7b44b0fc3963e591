"""Finite semigroups given by Cayley tables, and their Green structure."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import CapExceeded, IndexOutOfRange, NotAssociative, NotIdempotent, SemigroupError

DEFAULT_CAP = 100_000


@dataclass(frozen=True)
class Decision:
    """A yes/no answer together with a finite witness explaining a ``no``."""

    value: bool
    witness: object = None

    def __bool__(self):
        return self.value


def _canonical_labels(labels) -> np.ndarray:
    """Relabel so class ids appear in order of their least element."""
    labels = np.asarray(labels)
    out = np.empty(len(labels), dtype=np.int64)
    seen: dict[int, int] = {}
    for i, c in enumerate(labels.tolist()):
        if c not in seen:
            seen[c] = len(seen)
        out[i] = seen[c]
    return out


def _classes(labels: np.ndarray) -> tuple[tuple[int, ...], ...]:
    buckets: dict[int, list[int]] = {}
    for i, c in enumerate(labels.tolist()):
        buckets.setdefault(c, []).append(i)
    return tuple(tuple(buckets[c]) for c in sorted(buckets))


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    """A semigroup on ``0..n-1``; ``table[s, t]`` is the product ``s*t``.

    ``generators`` maps labels to elements that generate the semigroup and
    ``gen_words`` gives, per element, a shortest word over those labels.
    ``labels`` optionally records what each element stands for (a
    transformation, an element of a parent semigroup, ...).
    """

    table: np.ndarray
    identity: int | None = None
    generators: Mapping[str, int] | None = None
    gen_words: tuple[tuple[str, ...], ...] | None = None
    labels: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        table = np.array(self.table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise SemigroupError(f"table must be a nonempty square array, got shape {table.shape}")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            bad = np.argwhere((table < 0) | (table >= n))[0]
            raise IndexOutOfRange(f"entry table[{bad[0]}][{bad[1]}] = {table[tuple(bad)]} outside [0, {n})")
        table.flags.writeable = False
        object.__setattr__(self, "table", table)
        if self.generators is not None:
            object.__setattr__(self, "generators", dict(self.generators))
            self._check_generated()
        self._check_associative()
        ident = self.identity
        if ident is None:
            ident = _find_identity(table)
        elif not (np.all(table[ident] == np.arange(n)) and np.all(table[:, ident] == np.arange(n))):
            raise SemigroupError(f"element {ident} is not an identity")
        object.__setattr__(self, "identity", None if ident is None else int(ident))

    def _check_generated(self):
        gens = sorted(set(self.generators.values()))
        n = self.order
        seen = np.zeros(n, dtype=bool)
        seen[gens] = True
        frontier = list(gens)
        while frontier:
            nxt = np.unique(self.table[np.ix_(frontier, gens)])
            nxt = nxt[~seen[nxt]]
            seen[nxt] = True
            frontier = nxt.tolist()
        if self.identity is not None:
            seen[self.identity] = True
        if not seen.all():
            raise SemigroupError("generators do not generate the semigroup")

    def _check_associative(self):
        T = self.table
        n = len(T)
        if self.generators is not None:
            # Light's test: middle factor ranging over a generating set suffices
            middles = sorted(set(self.generators.values()))
            if self.identity is not None:
                middles.append(self.identity)
        else:
            middles = range(n)
        for g in middles:
            left = T[T[:, g], :]  # (x g) y
            right = T[:, T[g, :]]  # x (g y)
            bad = np.argwhere(left != right)
            if len(bad):
                x, y = bad[0]
                raise NotAssociative((x, g, y))

    # -- basic accessors -------------------------------------------------

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.order

    def mul(self, s: int, t: int) -> int:
        return int(self.table[s, t])

    def product(self, elements: Iterable[int]) -> int:
        it = iter(elements)
        acc = next(it)
        for x in it:
            acc = self.table[acc, x]
        return int(acc)

    def evaluate(self, word: Sequence[str]) -> int:
        """Element represented by a nonempty word over the generator labels."""
        if not word:
            if self.identity is None:
                raise SemigroupError("empty word in a semigroup without identity")
            return self.identity
        return self.product(self.generators[a] for a in word)

    def power(self, s: int, k: int) -> int:
        acc = s
        for _ in range(k - 1):
            acc = self.table[acc, s]
        return int(acc)

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        d = self.table[np.arange(self.order), np.arange(self.order)]
        return tuple(int(i) for i in np.flatnonzero(d == np.arange(self.order)))

    def is_idempotent(self, e: int) -> bool:
        return self.table[e, e] == e

    @cached_property
    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def zero(self) -> int | None:
        n = self.order
        for z in range(n):
            if np.all(self.table[z] == z) and np.all(self.table[:, z] == z):
                return z
        return None

    def is_closed(self, elements: Iterable[int]) -> bool:
        el = sorted(set(elements))
        if not el:
            return False
        prods = self.table[np.ix_(el, el)]
        return bool(np.isin(prods, el).all())

    def subsemigroup(self, elements: Iterable[int]) -> FiniteSemigroup:
        """Restriction to a multiplicatively closed subset; ``labels`` are the parent indices."""
        el = sorted(set(int(x) for x in elements))
        if not self.is_closed(el):
            raise SemigroupError("subset is not closed under multiplication")
        index = {x: i for i, x in enumerate(el)}
        sub = self.table[np.ix_(el, el)]
        table = np.vectorize(index.__getitem__, otypes=[np.int64])(sub)
        return FiniteSemigroup(table, labels=tuple(el))

    def generated(self, elements: Iterable[int]) -> frozenset[int]:
        """Subsemigroup generated by ``elements``."""
        gens = sorted(set(int(x) for x in elements))
        seen = set(gens)
        frontier = list(gens)
        while frontier:
            nxt = set(self.table[np.ix_(frontier, gens)].ravel().tolist()) - seen
            seen |= nxt
            frontier = sorted(nxt)
        return frozenset(seen)

    def _translation_gens(self) -> list[int]:
        if self.generators is not None:
            return sorted(set(self.generators.values()))
        return list(range(self.order))

    @cached_property
    def greens(self) -> GreensStructure:
        return greens(self)

    def __repr__(self):
        return f"FiniteSemigroup(order={self.order}, identity={self.identity})"


def _find_identity(table: np.ndarray) -> int | None:
    n = len(table)
    ar = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar):
            return e
    return None


def from_cayley_table(order: int, table, identity: int | None = None) -> FiniteSemigroup:
    """Validated semigroup from an ``order x order`` table."""
    arr = np.asarray(table)
    if arr.shape != (order, order):
        raise SemigroupError(f"table has shape {arr.shape}, expected ({order}, {order})")
    if not np.issubdtype(arr.dtype, np.integer):
        raise SemigroupError("table entries must be integers")
    return FiniteSemigroup(arr, identity=identity)


def compose(s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
    """Right action: apply ``s`` then ``t``."""
    return tuple(t[q] for q in s)


def from_transformations(
    degree: int,
    generators: Mapping[str, Sequence[int]] | Sequence[Sequence[int]],
    cap: int = DEFAULT_CAP,
    monoid: bool = False,
) -> FiniteSemigroup:
    """Close a set of maps on ``{0..degree-1}`` under composition.

    Maps act on the right, ``q.(st) = (q.s).t``.  Elements are numbered in
    breadth-first order, so ``gen_words`` holds shortest words.  With
    ``monoid=True`` the identity map is included (as element 0, empty word).
    """
    if not isinstance(generators, Mapping):
        generators = {str(i): g for i, g in enumerate(generators)}
    gens = {}
    for label, g in generators.items():
        g = tuple(int(x) for x in g)
        if len(g) != degree or any(not 0 <= x < degree for x in g):
            raise SemigroupError(f"generator {label!r} is not a total map on {degree} points")
        gens[str(label)] = g
    if not gens and not monoid:
        raise SemigroupError("need at least one generator")

    elements: list[tuple[int, ...]] = []
    words: list[tuple[str, ...]] = []
    index: dict[tuple[int, ...], int] = {}

    def add(x, w):
        if x in index:
            return False
        if len(elements) >= cap:
            raise CapExceeded(cap)
        index[x] = len(elements)
        elements.append(x)
        words.append(w)
        return True

    if monoid:
        add(tuple(range(degree)), ())
    for label, g in gens.items():
        add(g, (label,))
    i = 0
    while i < len(elements):
        x, w = elements[i], words[i]
        for label, g in gens.items():
            add(compose(x, g), w + (label,))
        i += 1

    E = np.array(elements, dtype=np.int64).reshape(len(elements), degree)
    n = len(elements)
    radix = np.int64(degree) ** np.arange(degree, dtype=np.int64) if degree else np.zeros(0, dtype=np.int64)
    codes = E @ radix if degree else np.zeros(n, dtype=np.int64)
    order = np.argsort(codes)
    sorted_codes = codes[order]
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        prods = E[:, E[x]]  # row y holds (x then y)
        pos = np.searchsorted(sorted_codes, prods @ radix)
        table[x] = order[pos]
    gen_index = {label: index[g] for label, g in gens.items()}
    return FiniteSemigroup(
        table,
        identity=0 if monoid else None,
        generators=gen_index,
        gen_words=tuple(words),
        labels=tuple(elements),
    )


def adjoin_identity(S: FiniteSemigroup) -> FiniteSemigroup:
    """``S`` itself if it is a monoid, else ``S`` with a new identity ``n``."""
    if S.identity is not None:
        return S
    n = S.order
    T = np.empty((n + 1, n + 1), dtype=np.int64)
    T[:n, :n] = S.table
    T[n, :] = np.arange(n + 1)
    T[:, n] = np.arange(n + 1)
    gens = None
    words = None
    if S.generators is not None:
        gens = dict(S.generators)
        words = tuple(S.gen_words) + ((),) if S.gen_words is not None else None
    labels = tuple(S.labels) + ("1",) if S.labels is not None else None
    return FiniteSemigroup(T, identity=n, generators=gens, gen_words=words, labels=labels)


# ---------------------------------------------------------------------------
# Green's relations


@dataclass(frozen=True, eq=False)
class GreensStructure:
    r_class: np.ndarray
    l_class: np.ndarray
    j_class: np.ndarray
    h_class: np.ndarray
    r_classes: tuple[tuple[int, ...], ...]
    l_classes: tuple[tuple[int, ...], ...]
    j_classes: tuple[tuple[int, ...], ...]
    h_classes: tuple[tuple[int, ...], ...]
    j_leq: np.ndarray  # j_leq[a, b]: J-class a lies below J-class b
    regular: frozenset[int]
    idempotents: tuple[int, ...]
    table: np.ndarray = field(repr=False)

    def idempotent_leq(self, e: int, f: int) -> bool:
        """Natural order on idempotents: ``e <= f`` iff ``ef = fe = e``."""
        T = self.table
        return T[e, f] == e and T[f, e] == e

    def j_below(self, s: int, t: int) -> bool:
        """``s <=_J t``."""
        return bool(self.j_leq[self.j_class[s], self.j_class[t]])

    def is_regular_element(self, s: int) -> bool:
        return int(self.j_class[s]) in self.regular

    def r_classes_of(self, j: int) -> list[int]:
        return sorted({int(self.r_class[x]) for x in self.j_classes[j]})

    def l_classes_of(self, j: int) -> list[int]:
        return sorted({int(self.l_class[x]) for x in self.j_classes[j]})


def _scc_labels(n: int, edges_src: np.ndarray, edges_dst: np.ndarray) -> np.ndarray:
    g = csr_matrix((np.ones(len(edges_src), dtype=np.int8), (edges_src, edges_dst)), shape=(n, n))
    _, labels = connected_components(g, directed=True, connection="strong")
    return _canonical_labels(labels)


def greens(S: FiniteSemigroup) -> GreensStructure:
    """Green's relations by strong components of the Cayley graphs.

    ``t`` lies in ``sS^1`` iff it is reachable from ``s`` in the right
    Cayley graph, so R-classes are the strong components of that graph;
    likewise for L (left graph) and J (both).
    """
    T = S.table
    n = S.order
    gens = np.array(S._translation_gens(), dtype=np.int64)
    src = np.repeat(np.arange(n), len(gens))
    right_dst = T[:, gens].ravel()
    left_dst = T[gens, :].T.ravel()
    r = _scc_labels(n, src, right_dst)
    l = _scc_labels(n, src, left_dst)
    j = _scc_labels(n, np.concatenate([src, src]), np.concatenate([right_dst, left_dst]))
    h = _canonical_labels(r * n + l)

    m = int(j.max()) + 1
    # reachability between J-classes: b reaches a means a <=_J b
    adj = np.zeros((m, m), dtype=bool)
    adj[j[np.concatenate([src, src])], j[np.concatenate([right_dst, left_dst])]] = True
    reach = adj | np.eye(m, dtype=bool)
    while True:
        nxt = reach | ((reach.astype(np.int64) @ reach.astype(np.int64)) > 0)
        if np.array_equal(nxt, reach):
            break
        reach = nxt
    j_leq = reach.T.copy()

    idem = S.idempotents
    regular = frozenset(int(j[e]) for e in idem)
    for arr in (r, l, j, h, j_leq):
        arr.flags.writeable = False
    return GreensStructure(
        r_class=r,
        l_class=l,
        j_class=j,
        h_class=h,
        r_classes=_classes(r),
        l_classes=_classes(l),
        j_classes=_classes(j),
        h_classes=_classes(h),
        j_leq=j_leq,
        regular=regular,
        idempotents=idem,
        table=T,
    )


def principal_ideals(S: FiniteSemigroup):
    """``(sS^1, S^1s, S^1sS^1)`` for every ``s`` by direct set computation.

    Quadratic in memory; the independent route to Green's relations used to
    check ``greens``.
    """
    T = S.table
    n = S.order
    out = []
    for s in range(n):
        right = frozenset(T[s].tolist()) | {s}
        left = frozenset(T[:, s].tolist()) | {s}
        two = frozenset(T[np.ix_(list(left), range(n))].ravel().tolist()) | left
        out.append((right, left, two))
    return out


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True, eq=False)
class SubgroupTable:
    """A subgroup of ``semigroup`` with the given identity element."""

    semigroup: FiniteSemigroup
    carrier: tuple[int, ...]
    identity: int
    inverse: Mapping[int, int]

    @property
    def order(self) -> int:
        return len(self.carrier)

    def __len__(self):
        return len(self.carrier)

    def __contains__(self, g):
        return g in self._carrier_set

    @cached_property
    def _carrier_set(self) -> frozenset[int]:
        return frozenset(self.carrier)

    def mul(self, a: int, b: int) -> int:
        return int(self.semigroup.table[a, b])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        from math import lcm

        e = 1
        for g in self.carrier:
            e = lcm(e, self.element_order(g))
        return e

    @cached_property
    def is_abelian(self) -> bool:
        T = self.semigroup.table
        c = list(self.carrier)
        return bool(np.array_equal(T[np.ix_(c, c)], T[np.ix_(c, c)].T))

    def generated(self, elements: Iterable[int]) -> frozenset[int]:
        return self.semigroup.generated(set(elements) | {self.identity})

    def normal_closure(self, elements: Iterable[int]) -> frozenset[int]:
        conj = set()
        for x in elements:
            for g in self.carrier:
                conj.add(self.mul(self.mul(self.inverse[g], x), g))
        return self.generated(conj)

    def is_normal(self, sub: Iterable[int]) -> bool:
        sub = frozenset(sub)
        if not sub <= self._carrier_set or self.identity not in sub:
            return False
        if self.generated(sub) != sub:
            return False
        return all(self.mul(self.mul(self.inverse[g], x), g) in sub for g in self.carrier for x in sub)

    def coset_labels(self, normal: Iterable[int]) -> dict[int, int]:
        """Map each element to the index of its coset ``gN``."""
        normal = sorted(normal)
        labels: dict[int, int] = {}
        for g in self.carrier:
            if g in labels:
                continue
            c = len(set(labels.values()))
            for x in normal:
                labels[self.mul(g, x)] = c
        return labels

    def quotient_exponent(self, normal: Iterable[int]) -> int:
        """Exponent of ``G/N``."""
        from math import lcm

        normal = frozenset(normal)
        e = 1
        for g in self.carrier:
            k, x = 1, g
            while x not in normal:
                x = self.mul(x, g)
                k += 1
            e = lcm(e, k)
        return e

    def quotient_is_abelian(self, normal: Iterable[int]) -> bool:
        normal = frozenset(normal)
        inv = self.inverse
        for a in self.carrier:
            for b in self.carrier:
                comm = self.mul(self.mul(inv[a], inv[b]), self.mul(a, b))
                if comm not in normal:
                    return False
        return True

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1


def maximal_subgroup(S: FiniteSemigroup, e: int) -> SubgroupTable:
    """The H-class of the idempotent ``e`` as a group."""
    if not S.is_idempotent(e):
        raise NotIdempotent(f"element {e} is not idempotent")
    G = S.greens
    carrier = G.h_classes[G.h_class[e]]
    T = S.table
    inverse = {}
    for g in carrier:
        for h in carrier:
            if T[g, h] == e:
                inverse[g] = h
                break
    return SubgroupTable(S, tuple(carrier), int(e), inverse)


def local_monoid(S: FiniteSemigroup, e: int) -> FiniteSemigroup:
    """``eSe`` with identity ``e``; ``labels`` holds the parent indices."""
    if not S.is_idempotent(e):
        raise NotIdempotent(f"element {e} is not idempotent")
    T = S.table
    elements = np.unique(T[T[e, :], e])
    return S.subsemigroup(elements.tolist())


def power_ideals(S: FiniteSemigroup) -> list[frozenset[int]]:
    """The chain ``S ⊇ S^2 ⊇ ...`` up to the first repeat (which is dropped)."""
    T = S.table
    n = S.order
    chain = [frozenset(range(n))]
    while True:
        cur = sorted(chain[-1])
        nxt = frozenset(np.unique(T[np.ix_(cur, range(n))]).tolist())
        if nxt == chain[-1]:
            return chain
        chain.append(nxt)


def nth_power(S: FiniteSemigroup, k: int) -> frozenset[int]:
    chain = power_ideals(S)
    return chain[min(k, len(chain)) - 1]


def minimal_ideal(S: FiniteSemigroup) -> frozenset[int]:
    G = S.greens
    m = len(G.j_classes)
    for a in range(m):
        if G.j_leq[:, a].sum() == 1:
            return frozenset(G.j_classes[a])
    raise AssertionError("finite semigroup without minimal ideal")


def is_simple(S: FiniteSemigroup) -> bool:
    return len(S.greens.j_classes) == 1


def is_0_simple(S: FiniteSemigroup) -> bool:
    z = S.zero
    if z is None or S.order < 2:
        return False
    if len(S.greens.j_classes) != 2:
        return False
    return bool(np.any(S.table != z))


def semilattice_pair(S: FiniteSemigroup) -> tuple[int, int] | None:
    """Least pair of idempotents ``e != f`` with ``ef = fe = e``, or None."""
    T = S.table
    for e in S.idempotents:
        for f in S.idempotents:
            if e != f and T[e, f] == e and T[f, e] == e:
                return (e, f)
    return None


def local_group_conditions(S: FiniteSemigroup) -> dict[str, bool]:
    """The four characterisations of local groups, evaluated separately."""
    n = S.order
    every_local_monoid_group = True
    for e in S.idempotents:
        M = local_monoid(S, e)
        if len(M.greens.h_classes) != 1:
            every_local_monoid_group = False
            break
    Sn = nth_power(S, n)
    power_simple = is_simple(S.subsemigroup(Sn))
    power_minimal = Sn == minimal_ideal(S)
    return {
        "local_monoids_are_groups": every_local_monoid_group,
        "power_is_simple": power_simple,
        "power_is_minimal_ideal": power_minimal,
        "no_semilattice_pair": semilattice_pair(S) is None,
    }


def is_local_group(S: FiniteSemigroup, group_predicate: Callable[[SubgroupTable], bool] | None = None) -> Decision:
    """Local group whose maximal subgroups satisfy ``group_predicate``.

    Witness on failure: ``("semilattice", (e, f))`` or ``("subgroup", e)``.
    """
    pair = semilattice_pair(S)
    if pair is not None:
        return Decision(False, ("semilattice", pair))
    conds = local_group_conditions(S)
    assert all(conds.values()), conds
    if group_predicate is not None:
        for e in S.idempotents:
            if not group_predicate(maximal_subgroup(S, e)):
                return Decision(False, ("subgroup", e))
    return Decision(True)
