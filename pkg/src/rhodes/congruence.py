"""Congruences: closure, enumeration, GGM congruences, quotients."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import CapExceeded, NotMorphism, NotNormal, NotRegular, NotSurjective, SemigroupError
from .semigroup import FiniteSemigroup, SubgroupTable, _canonical_labels, _classes, maximal_subgroup

ENUMERATION_CAP = 8


@dataclass(frozen=True, eq=False)
class Congruence:
    """A partition of ``0..n-1`` given by class labels.

    Labels are canonical: class ids increase with the least element, so two
    congruences are equal exactly when their label arrays are.
    """

    labels: np.ndarray

    def __post_init__(self):
        labels = _canonical_labels(self.labels)
        labels.flags.writeable = False
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> Congruence:
        labels = np.full(n, -1, dtype=np.int64)
        for c, cls_ in enumerate(classes):
            for x in cls_:
                if labels[x] != -1:
                    raise SemigroupError(f"element {x} appears in two classes")
                labels[x] = c
        if (labels < 0).any():
            raise SemigroupError("classes do not cover all elements")
        return cls(labels)

    @classmethod
    def equality(cls, n: int) -> Congruence:
        return cls(np.arange(n))

    @classmethod
    def universal(cls, n: int) -> Congruence:
        return cls(np.zeros(n, dtype=np.int64))

    @property
    def order(self) -> int:
        return len(self.labels)

    @cached_property
    def class_count(self) -> int:
        return int(self.labels.max()) + 1

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        return _classes(self.labels)

    @cached_property
    def _key(self) -> bytes:
        return self.labels.tobytes()

    def __eq__(self, other):
        return isinstance(other, Congruence) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Congruence({[list(c) for c in self.classes]})"

    def related(self, s: int, t: int) -> bool:
        return self.labels[s] == self.labels[t]

    def meet(self, other: Congruence) -> Congruence:
        return Congruence(self.labels * other.class_count + other.labels)

    def join(self, other: Congruence) -> Congruence:
        uf = _UnionFind(self.order)
        for lab in (self.labels, other.labels):
            for cls_ in _classes(lab):
                for x in cls_[1:]:
                    uf.union(cls_[0], x)
        return Congruence(uf.labels())

    def refines(self, other: Congruence) -> bool:
        """Every class of ``self`` lies inside a class of ``other``."""
        return self.meet(other) == self

    def sort_key(self):
        return (-self.class_count, self.classes)

    def to_json(self):
        return {"classes": [list(c) for c in self.classes]}

    @classmethod
    def from_json(cls, data, n: int | None = None) -> Congruence:
        classes = data["classes"]
        if n is None:
            n = sum(len(c) for c in classes)
        return cls.from_classes(n, classes)


def is_congruence(S: FiniteSemigroup, labels: Sequence[int] | Congruence) -> bool:
    lab = labels.labels if isinstance(labels, Congruence) else np.asarray(labels)
    T = S.table
    for cls_ in _classes(_canonical_labels(lab)):
        rows = lab[T[list(cls_), :]]
        cols = lab[T[:, list(cls_)]]
        if not ((rows == rows[0]).all() and (cols == cols[:, :1]).all()):
            return False
    return True


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def labels(self):
        return [self.find(x) for x in range(len(self.parent))]


def congruence_closure(S: FiniteSemigroup, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence containing ``pairs``."""
    T = S.table
    n = S.order
    gens = S._translation_gens()
    uf = _UnionFind(n)
    pending = [(int(a), int(b)) for a, b in pairs]
    while pending:
        for a, b in pending:
            uf.union(a, b)
        pending = []
        for s in range(n):
            r = uf.find(s)
            if r == s:
                continue
            for g in gens:
                for x, y in ((T[s, g], T[r, g]), (T[g, s], T[g, r])):
                    if uf.find(int(x)) != uf.find(int(y)):
                        pending.append((int(x), int(y)))
    return Congruence(uf.labels())


def principal_congruences(S: FiniteSemigroup) -> list[Congruence]:
    n = S.order
    seen = {}
    for s, t in itertools.combinations(range(n), 2):
        c = congruence_closure(S, [(s, t)])
        seen.setdefault(c, None)
    return list(seen)


def enumerate_congruences(S: FiniteSemigroup, cap: int = ENUMERATION_CAP) -> list[Congruence]:
    """All congruences of ``S``, finest first, ties broken by classes.

    Every congruence is a join of principal ones, so closing the principal
    congruences under joins (plus the equality) yields the whole lattice.
    """
    if S.order > cap:
        raise CapExceeded(cap, "congruence enumeration order")
    principal = principal_congruences(S)
    found = {Congruence.equality(S.order)}
    found.update(principal)
    frontier = list(principal)
    while frontier:
        nxt = []
        for c in frontier:
            for p in principal:
                j = c.join(p)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found, key=Congruence.sort_key)


def is_v_congruence(S: FiniteSemigroup, cong: Congruence, v_predicate: Callable[[FiniteSemigroup], bool]) -> bool:
    """Every class that is a subsemigroup lies in the variety."""
    for cls_ in cong.classes:
        if S.is_closed(cls_) and not v_predicate(S.subsemigroup(cls_)):
            return False
    return True


def quotient(S: FiniteSemigroup, cong: Congruence) -> tuple[FiniteSemigroup, np.ndarray]:
    """``S/cong`` indexed by class ids, together with the projection."""
    reps = [c[0] for c in cong.classes]
    table = cong.labels[S.table[np.ix_(reps, reps)]]
    gens = None
    if S.generators is not None:
        gens = {a: int(cong.labels[g]) for a, g in S.generators.items()}
    ident = None if S.identity is None else int(cong.labels[S.identity])
    Q = FiniteSemigroup(table, identity=ident, generators=gens)
    return Q, cong.labels


# ---------------------------------------------------------------------------
# GGM congruences


@dataclass(frozen=True, eq=False)
class GgmData:
    """Coordinates on a regular J-class: base group and Green's-lemma translations."""

    j_class: int
    base_group: SubgroupTable
    r_coords: Mapping[int, int]  # R-class id -> r_a
    l_coords: Mapping[int, int]  # L-class id -> l_b
    normal_subgroup: frozenset[int]


def _left_translators(S: FiniteSemigroup, j: int, base_r: int) -> dict[int, list[int]]:
    """For each R-class in J, all r in J with x -> r x a bijection onto the base R-class."""
    G = S.greens
    T = S.table
    J = G.j_classes[j]
    target = frozenset(G.r_classes[base_r])
    out = {}
    for a in G.r_classes_of(j):
        R_a = list(G.r_classes[a])
        out[a] = [r for r in J if frozenset(T[r, R_a].tolist()) == target and len(target) == len(R_a)]
    return out


def _right_translators(S: FiniteSemigroup, j: int, base_l: int) -> dict[int, list[int]]:
    G = S.greens
    T = S.table
    J = G.j_classes[j]
    target = frozenset(G.l_classes[base_l])
    out = {}
    for b in G.l_classes_of(j):
        L_b = list(G.l_classes[b])
        out[b] = [l for l in J if frozenset(T[L_b, l].tolist()) == target and len(target) == len(L_b)]
    return out


def default_base_idempotent(S: FiniteSemigroup, j: int) -> int:
    """Least idempotent of the least R-class of ``J`` that contains one."""
    G = S.greens
    if j not in G.regular:
        raise NotRegular(f"J-class {j} contains no idempotent")
    for a in G.r_classes_of(j):
        idem = [x for x in G.r_classes[a] if S.is_idempotent(x)]
        if idem:
            return min(idem)
    raise AssertionError("regular J-class without idempotent")


def ggm_data(S: FiniteSemigroup, j: int, normal: Iterable[int] | None = None, base: int | None = None) -> GgmData:
    """Deterministic coordinates for ``J``; ``normal`` defaults to the trivial subgroup."""
    G = S.greens
    if j not in G.regular:
        raise NotRegular(f"J-class {j} contains no idempotent")
    e = default_base_idempotent(S, j) if base is None else base
    if G.j_class[e] != j:
        raise SemigroupError(f"base idempotent {e} is not in J-class {j}")
    H = maximal_subgroup(S, e)
    N = frozenset([e]) if normal is None else frozenset(int(x) for x in normal)
    if not H.is_normal(N):
        raise NotNormal(f"{sorted(N)} is not a normal subgroup of the maximal subgroup at {e}")
    rs = _left_translators(S, j, int(G.r_class[e]))
    ls = _right_translators(S, j, int(G.l_class[e]))
    return GgmData(j, H, {a: v[0] for a, v in rs.items()}, {b: v[0] for b, v in ls.items()}, N)


def all_ggm_choices(S: FiniteSemigroup, j: int, normal_for: Callable[[SubgroupTable], Iterable[int]]):
    """Every valid coordinate choice on ``J``; ``normal_for`` picks N inside each base group."""
    G = S.greens
    for e in G.j_classes[j]:
        if not S.is_idempotent(e):
            continue
        H = maximal_subgroup(S, e)
        N = frozenset(normal_for(H))
        rs = _left_translators(S, j, int(G.r_class[e]))
        ls = _right_translators(S, j, int(G.l_class[e]))
        ra_keys, la_keys = sorted(rs), sorted(ls)
        for rchoice in itertools.product(*(rs[a] for a in ra_keys)):
            for lchoice in itertools.product(*(ls[b] for b in la_keys)):
                yield GgmData(j, H, dict(zip(ra_keys, rchoice)), dict(zip(la_keys, lchoice)), N)


def ggm_signatures(S: FiniteSemigroup, data: GgmData) -> np.ndarray:
    """Row ``s`` lists, over pairs ``(x, y)`` in J, the coset of ``r_a xsy l_b`` or -1."""
    G = S.greens
    T = S.table
    J = np.array(G.j_classes[data.j_class], dtype=np.int64)
    in_j = np.zeros(S.order, dtype=bool)
    in_j[J] = True
    cosets = data.base_group.coset_labels(data.normal_subgroup)
    coset_of = np.full(S.order, -1, dtype=np.int64)
    for g, c in cosets.items():
        coset_of[g] = c
    r = np.array([data.r_coords[int(G.r_class[x])] for x in J])
    l = np.array([data.l_coords[int(G.l_class[y])] for y in J])
    xs = T[J, :]  # xs[i, s] = x_i s
    prod = T[xs[:, :, None], J[None, None, :]]  # prod[i, s, k] = x_i s y_k
    coord = T[T[r[:, None, None], prod], l[None, None, :]]
    sig = np.where(in_j[prod], coset_of[coord], -1)
    if (sig[in_j[prod]] < 0).any():
        raise AssertionError("translated product fell outside the base group")
    return sig.transpose(1, 0, 2).reshape(S.order, -1)


def congruence_from_signatures(sig: np.ndarray) -> Congruence:
    _, labels = np.unique(sig, axis=0, return_inverse=True)
    return Congruence(labels.ravel())


def ggm_congruence(S: FiniteSemigroup, j: int, normal: Iterable[int] | None = None,
                   data: GgmData | None = None) -> Congruence:
    """The congruence whose quotient is GGM over the regular J-class ``j``.

    ``s`` and ``t`` are identified when, for all ``x, y`` in J, ``xsy`` and
    ``xty`` are both outside J, or both inside with ``r_a xsy l_b`` and
    ``r_a xty l_b`` in the same coset of ``N``.
    """
    if data is None:
        data = ggm_data(S, j, normal)
    return congruence_from_signatures(ggm_signatures(S, data))


def faithful_on(S: FiniteSemigroup, ideal: Iterable[int]) -> bool:
    I = sorted(ideal)
    T = S.table
    left = T[:, I]  # row s: s acting on the left
    right = T[I, :].T
    return len(np.unique(left, axis=0)) == S.order and len(np.unique(right, axis=0)) == S.order


def candidate_apexes(S: FiniteSemigroup) -> list[frozenset[int]]:
    """The minimal ideal, and every 0-minimal ideal when ``S`` has a zero."""
    from .semigroup import minimal_ideal

    G = S.greens
    out = [minimal_ideal(S)]
    z = S.zero
    if z is not None and S.order > 1:
        zj = int(G.j_class[z])
        for a in range(len(G.j_classes)):
            if a == zj:
                continue
            below = [b for b in range(len(G.j_classes)) if G.j_leq[b, a] and b != a]
            if below == [zj]:
                out.append(frozenset(G.j_classes[a]) | {z})
    return out


def is_ggm(S: FiniteSemigroup) -> bool:
    """Acts faithfully on both sides of its minimal or some 0-minimal ideal."""
    return any(faithful_on(S, I) for I in candidate_apexes(S))


# ---------------------------------------------------------------------------
# kernel category


def check_morphism(S: FiniteSemigroup, T: FiniteSemigroup, phi: Sequence[int], surjective: bool = True) -> np.ndarray:
    phi = np.asarray(phi, dtype=np.int64)
    if phi.shape != (S.order,) or phi.min() < 0 or phi.max() >= T.order:
        raise NotMorphism("map has the wrong shape or range")
    lhs = phi[S.table]
    rhs = T.table[phi[:, None], phi[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        s, t = bad[0]
        raise NotMorphism(f"phi({s}*{t}) != phi({s})*phi({t})")
    if surjective and len(np.unique(phi)) != T.order:
        raise NotSurjective("map is not onto")
    return phi


def kernel_category_local_monoid(S: FiniteSemigroup, T: FiniteSemigroup, phi: Sequence[int],
                                 n_left: int, n_right: int) -> FiniteSemigroup:
    """Loop monoid at the object ``(n_left, n_right)`` of the kernel category of ``phi``.

    Loops are ``m`` with ``n_left phi(m) = n_left`` and ``phi(m) n_right =
    n_right``; two loops coincide when ``mL m mR`` agrees for all ``mL`` over
    ``n_left`` and ``mR`` over ``n_right``.  ``labels`` holds one
    representative loop per element.
    """
    if S.identity is None:
        raise SemigroupError("kernel category needs a monoid")
    phi = check_morphism(S, T, phi)
    TT = S.table
    loops = [m for m in range(S.order) if T.table[n_left, phi[m]] == n_left and T.table[phi[m], n_right] == n_right]
    left_pre = np.flatnonzero(phi == n_left)
    right_pre = np.flatnonzero(phi == n_right)
    sig = {m: TT[TT[left_pre][:, m][:, None], right_pre[None, :]].tobytes() for m in loops}
    classes: dict[bytes, int] = {}
    cls_of = {}
    reps = []
    for m in loops:
        k = sig[m]
        if k not in classes:
            classes[k] = len(reps)
            reps.append(m)
        cls_of[m] = classes[k]
    k = len(reps)
    table = np.empty((k, k), dtype=np.int64)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            table[i, j] = cls_of[int(TT[a, b])]
    return FiniteSemigroup(table, identity=cls_of[S.identity], labels=tuple(reps))
