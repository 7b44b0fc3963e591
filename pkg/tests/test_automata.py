import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rhodes import corpus
from rhodes.automata import (
    Dfa,
    MarkedProductSpec,
    accepting_elements,
    ambiguity_by_matrices,
    apply_word,
    boolean_matrix_monoid,
    cerny_automaton,
    count_factorizations,
    counter_matrix,
    ds_sync_word,
    glued_automaton,
    is_synchronizing,
    is_unambiguous,
    letter_dfa,
    minimize,
    only_zero_one_matrices,
    shortest_sync_word,
    sync_rep,
    synchronizes,
    syntactic_monoid,
    transition_monoid,
    words,
)
from rhodes.congruence import is_ggm
from rhodes.errors import NotInDS, NotSynchronizing, NotTrim, SemigroupError
from rhodes.varieties import variety_member

AB = ("a", "b")


def contains_a(alphabet=AB):
    """Sigma* a Sigma*: state 1 is an accepting sink."""
    return Dfa(2, alphabet, {x: ((1, 1) if x == "a" else (0, 1)) for x in alphabet}, 0, {1})


def star(alphabet=AB):
    return letter_dfa(alphabet, alphabet)


def same(a, b):
    return a.order == b.order and sorted(np.bincount(a.table.ravel(), minlength=a.order)) == \
        sorted(np.bincount(b.table.ravel(), minlength=b.order))


# -- DFAs and monoids -------------------------------------------------------


def test_dfa_json_round_trip():
    d = contains_a()
    assert Dfa.from_json(d.to_json()).to_json() == d.to_json()
    partial = Dfa.from_json({"states": 2, "alphabet": ["a"], "delta": {"a": [1, None]}, "start": 0, "finals": [1]})
    assert partial.delta["a"] == (1, -1) and not partial.is_complete
    with pytest.raises(SemigroupError):
        Dfa(2, ("a",), {"a": (0, 2)}, 0, {1})


def test_trim():
    d = Dfa(3, ("a",), {"a": (1, 1, 2)}, 0, {1})
    t = d.trimmed()
    assert t.states == 2 and t.is_trim
    with pytest.raises(NotTrim):
        Dfa(2, ("a",), {"a": (0, 0)}, 0, {1}).trimmed()


def test_transition_monoid_examples(curated):
    one = Dfa(1, AB, {"a": (0,), "b": (0,)}, 0, {0})
    assert transition_monoid(one)[0].order == 1
    even = Dfa(2, ("a",), {"a": (1, 0)}, 0, {0})
    M, letters = transition_monoid(even)
    assert M.order == 2 and M.identity is not None and M.mul(letters["a"], letters["a"]) == M.identity
    M, _ = transition_monoid(contains_a())
    assert M.order == 2 and variety_member(M, "Sl") and M.identity is not None


def test_boolean_matrix_monoid():
    M, letters = boolean_matrix_monoid({"a": [[1, 1], [0, 1]], "b": [[0, 0], [1, 0]]})
    assert M.identity is not None and M.order > 2
    assert M.evaluate(("a", "a")) == letters["a"]


def test_syntactic_monoid_examples():
    M, _, m = syntactic_monoid(star())
    assert M.order == 1 and m.states == 1
    even = Dfa(4, ("a",), {"a": (1, 2, 3, 0)}, 0, {0, 2})
    M, _, m = syntactic_monoid(even)
    assert M.order == 2 and m.states == 2
    M, _, _ = syntactic_monoid(contains_a())
    assert same(M, corpus.u1())


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_syntactic_monoid_recognizes_language(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    dfa = Dfa(n, AB, {a: tuple(rng.randrange(n) for _ in range(n)) for a in AB}, 0,
              frozenset(q for q in range(n) if rng.random() < 0.5))
    M, _, m = syntactic_monoid(dfa)
    accept = accepting_elements(M, m)
    assert m.states <= n
    for w in words(AB, 8):
        assert (M.evaluate(w) in accept) == dfa.accepts(w)
    assert minimize(m).states == m.states


# -- synchronization --------------------------------------------------------


def test_sync_examples():
    acts = {"a": (0, 0, 2), "b": (0, 1, 1)}
    assert is_synchronizing(acts)
    w = shortest_sync_word(acts)
    assert len(w) == 2 and synchronizes(acts, w)
    res = ds_sync_word(acts)
    assert len(res.word) <= 4 and synchronizes(acts, res.word)
    with pytest.raises(NotSynchronizing):
        shortest_sync_word({"a": (1, 2, 0), "b": (1, 0, 2)})
    assert not is_synchronizing({"a": (1, 2, 0)})
    with pytest.raises(NotSynchronizing):
        ds_sync_word({"a": (0, 1, 2)})


def test_constant_letter():
    acts = {"a": (1, 2, 0, 3), "c": (2, 2, 2, 2), "e": (0, 0, 2, 3)}
    assert shortest_sync_word(acts) == ("c",)
    res = ds_sync_word({"c": (2, 2, 2, 2), "e": (0, 0, 2, 3)})
    assert set(res.word) <= {"c", "e"} and len(res.word) <= 9


@pytest.mark.parametrize("n", [3, 4, 5])
def test_cerny_is_not_ds(n):
    acts = cerny_automaton(n)
    assert len(shortest_sync_word(acts)) == (n - 1) ** 2
    with pytest.raises(NotInDS) as exc:
        ds_sync_word(acts)
    assert exc.value.witness["j_class_size"] > 1


def test_sync_rep_kills_exactly_constants():
    acts = {"a": (0, 0, 2, 1), "b": (3, 1, 2, 3)}
    M, _ = transition_monoid(acts)
    rep = sync_rep(acts)
    from rhodes.exact import identity, matmul

    for s, word in enumerate(M.gen_words):
        P = identity(3, rep.field)
        for a in word:
            P = matmul(P, rep.images[a])
        is_zero = all(not x for row in P for x in row)
        assert is_zero == (len(set(M.labels[s])) == 1)


def test_ds_pipeline_on_generated_automata():
    for acts in corpus.random_ds_automata(40, seed=7):
        n = len(next(iter(acts.values())))
        res = ds_sync_word(acts)
        assert synchronizes(acts, res.word)
        assert len(res.word) <= (n - 1) ** 2
        assert len(res.word) <= res.refined_bound
        assert len(shortest_sync_word(acts)) <= len(res.word)
        assert sum(res.block_sizes) == n - 1


def test_ds_ggm_nonzero_elements_closed(full_corpus):
    checked = 0
    for S in full_corpus.values():
        z = S.zero
        if z is None or S.order == 1 or not is_ggm(S) or not variety_member(S, "DS"):
            continue
        checked += 1
        assert S.is_closed([s for s in range(S.order) if s != z])
    assert checked > 0


def test_apply_word():
    assert apply_word({"a": (1, 2, 0)}, "aa", 3) == (2, 0, 1)


# -- marked products ---------------------------------------------------------


def spec(factors, letters, counter=None, mode="plain"):
    return MarkedProductSpec(tuple(factors), tuple(letters), counter, mode)


def test_count_examples():
    s = spec([star(), star()], ["a"])
    assert count_factorizations(s, "aa") == 2
    s2 = spec([star(), star(), star()], ["a", "a"])
    assert count_factorizations(s2, "aaa") == 3
    assert count_factorizations(s2, "bbb") == 0
    with pytest.raises(ValueError):
        count_factorizations(s, "a" * 21)


def test_counter_examples():
    s = spec([star(("a",)), star(("a",))], ["a"], (1, 2), "counter")
    cm = counter_matrix(s)
    assert cm.member("a") and not cm.member("aa") and cm.member("aaa")
    s = spec([letter_dfa(AB, "b"), star()], ["a"], (1, 2), "counter")
    cm = counter_matrix(s)
    assert count_factorizations(s, "aba") == 1 and cm.member("aba")
    assert not cm.member("bbb")


def test_counter_matrices_count_mod_p():
    for s in corpus.random_marked_products(15, seed=3):
        cm = counter_matrix(s)
        g = glued_automaton(s)
        for w in words(s.alphabet, 6):
            c = count_factorizations(s, w)
            assert cm.count_mod_p(w) == c % s.counter[1]
            assert g.count(w) == c


def test_spec_validation_and_json():
    with pytest.raises(SemigroupError):
        spec([star()], ["a"])
    with pytest.raises(SemigroupError):
        spec([star(), star()], ["a"], (2, 2), "counter")
    s = spec([star(), contains_a()], ["b"], (0, 3), "counter")
    t = MarkedProductSpec.from_json(s.to_json())
    assert t.counter == (0, 3) and t.letters == ("b",) and t.to_json() == s.to_json()


def test_unambiguity_examples():
    sigma = ("a", "b", "c")
    assert is_unambiguous(spec([letter_dfa(AB, "b"), star()], ["a"])).unambiguous
    rep = is_unambiguous(spec([star(), star()], ["a"]))
    assert not rep.unambiguous and rep.witness == ("a", "a") and rep.factorizations == 2
    disjoint = spec([letter_dfa(sigma, "b"), letter_dfa(sigma, "c")], ["a"])
    assert is_unambiguous(disjoint).unambiguous


def test_ambiguity_split_across_finals():
    # a* . a . {empty, a}: "aa" splits as (, a, a) and (a, a, ), ending in different states
    a_star = letter_dfa(("a",), "a")
    eps_or_a = Dfa(2, ("a",), {"a": (1, -1)}, 0, {0, 1})
    s = spec([a_star, eps_or_a], ["a"])
    rep = is_unambiguous(s)
    assert not rep.unambiguous and rep.witness == ("a", "a")
    assert not ambiguity_by_matrices(s)


def test_unambiguity_cross_checks():
    specs = corpus.schutzenberger_products() + corpus.random_marked_products(25, seed=11, mode="unambiguous")
    for s in specs:
        rep = is_unambiguous(s)
        brute = all(count_factorizations(s, w) <= 1 for w in words(s.alphabet, 7))
        if rep.unambiguous:
            assert brute and only_zero_one_matrices(s)
        else:
            assert count_factorizations(s, rep.witness) >= 2
        assert ambiguity_by_matrices(s) == rep.unambiguous
