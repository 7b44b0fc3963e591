import itertools

import numpy as np
import pytest
from sympy.utilities.iterables import multiset_partitions

from rhodes import corpus
from rhodes.congruence import (
    Congruence,
    all_ggm_choices,
    check_morphism,
    congruence_closure,
    enumerate_congruences,
    ggm_congruence,
    is_congruence,
    is_ggm,
    is_v_congruence,
    kernel_category_local_monoid,
    quotient,
)
from rhodes.errors import CapExceeded, NotMorphism, NotNormal, NotRegular, NotSurjective
from rhodes.radical import is_lg_k, parse_field, unipotent_radical
from rhodes.semigroup import from_cayley_table, is_local_group, maximal_subgroup


def compatible(S, classes):
    """Direct check that a partition is stable under both translations."""
    label = {x: i for i, c in enumerate(classes) for x in c}
    T = S.table
    for c in classes:
        for s, t in itertools.combinations(c, 2):
            for u in range(S.order):
                if label[T[s, u]] != label[T[t, u]] or label[T[u, s]] != label[T[u, t]]:
                    return False
    return True


def brute_force_congruences(S):
    parts = multiset_partitions(list(range(S.order))) if S.order > 1 else [[[0]]]
    return {Congruence.from_classes(S.order, p) for p in parts if compatible(S, p)}


def small(full_corpus, limit=6):
    return {k: S for k, S in full_corpus.items() if S.order <= limit}


# -- basic objects ----------------------------------------------------------


def test_canonical_labels():
    c = Congruence.from_classes(4, [[3, 1], [0, 2]])
    assert c.labels.tolist() == [0, 1, 0, 1]
    assert c.classes == ((0, 2), (1, 3))
    assert c == Congruence(np.array([5, 7, 5, 7]))
    assert Congruence.from_json(c.to_json()) == c


def test_meet_join_refines():
    a = Congruence.from_classes(4, [[0, 1], [2], [3]])
    b = Congruence.from_classes(4, [[1, 2], [0], [3]])
    assert a.join(b) == Congruence.from_classes(4, [[0, 1, 2], [3]])
    assert a.meet(b) == Congruence.equality(4)
    assert a.refines(a.join(b)) and not a.join(b).refines(a)
    assert Congruence.equality(4).refines(a) and a.refines(Congruence.universal(4))


def test_closure_t2(curated):
    T2 = curated["T2"]
    # collapsing the two constants is already a congruence
    assert congruence_closure(T2, [(1, 3)]) == Congruence.from_classes(4, [[0], [2], [1, 3]])
    # collapsing id with a constant collapses everything
    assert congruence_closure(T2, [(0, 1)]).class_count == 1


def test_enumeration_examples(curated):
    assert enumerate_congruences(corpus.trivial()) == [Congruence.equality(1)]
    assert enumerate_congruences(curated["Z2"]) == [Congruence.equality(2), Congruence.universal(2)]
    assert len(enumerate_congruences(curated["U1"])) == 2
    # normal subgroups of S3: 1, A3, S3
    assert len(enumerate_congruences(curated["S3"])) == 3
    with pytest.raises(CapExceeded):
        enumerate_congruences(corpus.cyclic_group(9))


def test_enumeration_matches_brute_force(full_corpus):
    for name, S in small(full_corpus).items():
        found = enumerate_congruences(S)
        assert len(found) == len(set(found))
        assert set(found) == brute_force_congruences(S), name
        assert all(is_congruence(S, c) for c in found)


def test_enumeration_closed_under_meet(full_corpus):
    for S in full_corpus.values():
        found = set(enumerate_congruences(S))
        for a, b in itertools.combinations(found, 2):
            assert a.meet(b) in found


def test_enumeration_is_deterministic(curated):
    B = curated["B2_1"]
    assert enumerate_congruences(B) == enumerate_congruences(B)


def test_is_v_congruence_examples(curated):
    U1, T2 = curated["U1"], curated["T2"]
    trivial = lambda T: T.order == 1
    for S in (U1, T2, curated["B2"]):
        assert is_v_congruence(S, Congruence.equality(S.order), trivial)
    assert not is_v_congruence(U1, Congruence.universal(2), lambda T: bool(is_lg_k(T, parse_field("Q"))))
    part = Congruence.from_classes(4, [[0], [2], [1, 3]])
    assert is_v_congruence(T2, part, lambda T: bool(is_local_group(T, lambda H: H.order == 1)))


def test_quotient_examples(curated):
    T2 = curated["T2"]
    Q, proj = quotient(T2, Congruence.equality(4))
    assert (Q.table == T2.table).all() and proj.tolist() == [0, 1, 2, 3]
    Q, _ = quotient(T2, Congruence.universal(4))
    assert Q.order == 1
    Q, proj = quotient(T2, Congruence.from_classes(4, [[0], [2], [1, 3]]))
    assert Q.order == 3 and Q.identity == proj[0]
    z = proj[1]
    assert Q.zero == z and Q.mul(proj[2], proj[2]) == proj[0]


def test_quotient_map_is_morphism(full_corpus):
    for S in small(full_corpus, 5).values():
        for c in enumerate_congruences(S):
            Q, proj = quotient(S, c)
            check_morphism(S, Q, proj)


# -- GGM --------------------------------------------------------------------


def test_ggm_examples(curated):
    for name in ("Z2", "Z4", "S3"):
        G = curated[name]
        assert ggm_congruence(G, 0, normal=range(G.order)).class_count == 1
        assert ggm_congruence(G, 0) == Congruence.equality(G.order)
    B2 = curated["B2"]
    j = int(B2.greens.j_class[1])
    assert ggm_congruence(B2, j) == Congruence.equality(5)
    T2 = curated["T2"]
    top = int(T2.greens.j_class[0])
    assert ggm_congruence(T2, top) == Congruence.from_classes(4, [[0], [2], [1, 3]])
    # the bottom J-class of T2 is a right-zero band: everything is identified
    # except by the action on it, which separates id and swap but not the constants
    low = int(T2.greens.j_class[1])
    assert is_congruence(T2, ggm_congruence(T2, low))


def test_ggm_errors(curated):
    null = corpus.null(2)
    nonregular = int(null.greens.j_class[1])
    with pytest.raises(NotRegular):
        ggm_congruence(null, nonregular)
    S3 = curated["S3"]
    transposition = next(g for g in range(6) if g != S3.identity and S3.power(g, 2) == S3.identity)
    with pytest.raises(NotNormal):
        ggm_congruence(S3, 0, normal=[S3.identity, transposition])


def test_is_ggm_examples(curated):
    assert is_ggm(curated["B2"])
    for name in ("Z2", "Z3", "S3"):
        assert is_ggm(curated[name])
    # U1 acts faithfully on its 0-minimal ideal {0, 1}
    assert is_ggm(curated["U1"])
    assert not is_ggm(curated["null_2"])
    assert not is_ggm(curated["T2"])


def _normal_choices():
    return {
        "trivial": lambda H: [H.identity],
        "whole": lambda H: H.carrier,
        "O2": lambda H: unipotent_radical(H, parse_field("F2")),
        "O3": lambda H: unipotent_radical(H, parse_field("F3")),
    }


def test_ggm_choice_independence(full_corpus):
    for name, S in full_corpus.items():
        G = S.greens
        for j in sorted(G.regular):
            for pick in _normal_choices().values():
                results = {ggm_congruence(S, j, data=d) for d in all_ggm_choices(S, j, pick)}
                assert len(results) == 1, (name, j)


def test_ggm_quotients_are_ggm(full_corpus):
    for name, S in full_corpus.items():
        for j in sorted(S.greens.regular):
            c = ggm_congruence(S, j)
            assert is_congruence(S, c)
            Q, _ = quotient(S, c)
            assert is_ggm(Q), (name, j)


# -- kernel category --------------------------------------------------------


def test_check_morphism_errors(curated):
    Z2, Z4 = curated["Z2"], curated["Z4"]
    check_morphism(Z4, Z2, [0, 1, 0, 1])
    with pytest.raises(NotMorphism):
        check_morphism(Z4, Z2, [0, 1, 1, 0])
    with pytest.raises(NotSurjective):
        check_morphism(Z4, Z2, [0, 0, 0, 0])
    with pytest.raises(NotMorphism):
        check_morphism(Z4, Z2, [0, 1])


def test_kernel_category_examples(curated):
    S3 = curated["S3"]
    M = kernel_category_local_monoid(S3, S3, list(range(6)), S3.identity, S3.identity)
    assert M.order == 1
    triv = corpus.trivial()
    M = kernel_category_local_monoid(S3, triv, [0] * 6, 0, 0)
    assert M.order == 6 and M.identity is not None
    # {I, E} with E = [[1, 1], [0, 1]] over F2 is a copy of Z2
    unitri = from_cayley_table(2, [[0, 1], [1, 0]])
    M = kernel_category_local_monoid(unitri, triv, [0, 0], 0, 0)
    assert M.order == 2 and M.is_commutative


def test_kernel_category_identity_map_is_trivial(curated):
    for name in ("T2", "B2_1", "U1"):
        S = curated[name]
        for a, b in itertools.product(range(S.order), repeat=2):
            assert kernel_category_local_monoid(S, S, list(range(S.order)), a, b).order == 1


def test_trivial_local_monoids_give_li_morphism(full_corpus):
    li = lambda T: bool(is_local_group(T, lambda H: H.order == 1))
    checked = 0
    for S in small(full_corpus, 6).values():
        if S.identity is None:
            continue
        for c in enumerate_congruences(S):
            Q, proj = quotient(S, c)
            locals_trivial = all(
                kernel_category_local_monoid(S, Q, proj, a, b).order == 1
                for a, b in itertools.product(range(Q.order), repeat=2)
            )
            if locals_trivial:
                checked += 1
                for e in Q.idempotents:
                    pre = np.flatnonzero(proj == e).tolist()
                    assert li(S.subsemigroup(pre))
    assert checked > 0
