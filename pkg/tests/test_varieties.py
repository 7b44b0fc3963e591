import itertools

import pytest

from rhodes import corpus
from rhodes.errors import MissingParameter, SemigroupError
from rhodes.radical import FieldSpec, parse_field
from rhodes.varieties import VarietyId, classify_representability, parse_variety, variety_member


def omega(S, x):
    """The idempotent power of ``x``."""
    y = x
    for _ in range(S.order):
        if S.is_idempotent(y):
            return y
        y = S.mul(y, x)
    raise AssertionError("no idempotent power")


def holds(S, lhs, rhs, arity=2):
    return all(lhs(S, *xs) == rhs(S, *xs) for xs in itertools.product(range(S.order), repeat=arity))


# Pseudoidentity oracles, written independently of the structural tests.
def w(S, x, y):
    return omega(S, S.mul(x, y))


def wxy_wyx_wxy(S, x, y):
    return S.product([w(S, x, y), w(S, y, x), w(S, x, y)])


IDENTITIES = {
    "A": lambda S: holds(S, lambda S, x: S.mul(omega(S, x), x), lambda S, x: omega(S, x), 1),
    "DS": lambda S: holds(S, lambda S, x, y: omega(S, wxy_wyx_wxy(S, x, y)), w),
    "DO": lambda S: holds(S, wxy_wyx_wxy, w),
    "DA": lambda S: IDENTITIES["A"](S) and IDENTITIES["DS"](S),
    "LI": lambda S: holds(S, lambda S, x, y: S.product([omega(S, x), y, omega(S, x)]), lambda S, x, y: omega(S, x)),
    "Sl": lambda S: holds(S, lambda S, x, y: S.mul(x, y), lambda S, x, y: S.mul(y, x)) and
    all(S.is_idempotent(x) for x in range(S.order)),
}


@pytest.mark.parametrize("tag", sorted(IDENTITIES))
def test_membership_matches_identities(full_corpus, tag):
    for name, S in full_corpus.items():
        assert bool(variety_member(S, tag)) == IDENTITIES[tag](S), (tag, name)


def test_parse_variety():
    assert parse_variety("DA") == VarietyId("DA")
    v = parse_variety("LGK@F2")
    assert v.tag == "LGK" and v.field == parse_field("F2")
    assert parse_variety("EGbar@2") == VarietyId("EGbarP", prime=2)
    assert parse_variety("DGbar@F3").prime == 3
    assert str(parse_variety("DK@F4")) == "DK@F4"
    with pytest.raises(MissingParameter):
        parse_variety("AbK")
    with pytest.raises(MissingParameter):
        parse_variety("Gp@4")
    with pytest.raises(MissingParameter):
        parse_variety("DGpMalAbK_capEGbarP@Q")
    with pytest.raises(SemigroupError):
        parse_variety("Nonsense")


def test_membership_examples(curated):
    assert variety_member(curated["U1"], "Sl")
    assert not variety_member(curated["Z3"], "AbK@Q")
    assert variety_member(curated["Z3"], "AbK@F4")
    d = variety_member(curated["B2"], "DA")
    # E12 * E12 = 0, so the nonzero J-class is not even closed
    assert not d and d.witness == {"j_class": [1, 2, 3, 4]}
    assert not variety_member(curated["B2"], "DS")
    d = variety_member(curated["Z2"], "DA")
    assert not d and d.witness == {"j_class": [0, 1], "non_idempotent": 1}
    assert variety_member(curated["Z4"], "Gp@2") and not variety_member(curated["Z6"], "Gp@2")
    assert variety_member(curated["rect_band_2x2"], "Band")
    assert not variety_member(curated["rect_band_2x2"], "Com")
    assert variety_member(curated["S3"], "Groups") and not variety_member(curated["S3"], "Ab")
    assert variety_member(corpus.trivial(), "Trivial")


def test_witnesses_are_smallest(curated):
    d = variety_member(curated["T2"], "Sl")
    assert d.witness == {"non_idempotent": 2}
    d = variety_member(curated["rect_band_2x2"], "Com")
    assert d.witness == {"pair": [0, 1]}


def test_dk_examples(curated):
    assert variety_member(curated["Z2"], "DK@Q")
    assert not variety_member(curated["Z2"], "DK@F2")
    assert not variety_member(curated["Z3"], "DK@R")
    assert variety_member(curated["Z3"], "DK@C")
    assert variety_member(curated["U1"], "DK@F2")
    assert not variety_member(curated["null_2"], "DK@C")


# -- classification ---------------------------------------------------------


def test_classify_examples(curated, fields):
    for K in fields.values():
        assert all(classify_representability(curated["U1"], K).flags().values())
        assert not classify_representability(curated["B2"], K).triangularizable
    r = classify_representability(curated["Z2"], parse_field("Q"))
    assert r.diagonalizable and r.triangularizable and not r.unitriangularizable
    r = classify_representability(curated["Z2"], parse_field("F2"))
    assert r.unitriangularizable and not r.diagonalizable
    assert "diagonalizable" in r.witnesses


def test_classify_implications(full_corpus, fields):
    for S in full_corpus.values():
        for K in fields.values():
            r = classify_representability(S, K)
            assert not r.unidiagonalizable or r.diagonalizable
            assert not r.diagonalizable or r.triangularizable
            assert not r.unitriangularizable or r.triangularizable
            assert not r.triangularizable or r.basic
            assert r.split_basic == r.triangularizable


def test_unitriangularizable_depends_on_characteristic(full_corpus):
    F2, F4, F8 = (parse_field(x) for x in ("F2", "F4", "F8"))
    custom = FieldSpec.custom(2, lambda e: 63 % e == 0, name="F64")
    for S in full_corpus.values():
        answers = {classify_representability(S, K).unitriangularizable for K in (F2, F4, F8, custom)}
        assert len(answers) == 1
    Q, R, C = (parse_field(x) for x in "QRC")
    for S in full_corpus.values():
        assert len({classify_representability(S, K).unitriangularizable for K in (Q, R, C)}) == 1
