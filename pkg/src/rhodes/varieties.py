"""Membership in named varieties and the representability classifier."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd

from .errors import MissingParameter, SemigroupError
from .radical import (
    FieldSpec,
    in_ab_k,
    is_lg_k,
    is_p_power,
    lcm_all,
    parse_field,
    rhodes_radical,
    unipotent_radical,
)
from .congruence import quotient
from .exact import _is_prime
from .semigroup import Decision, FiniteSemigroup, SubgroupTable, is_local_group, maximal_subgroup

FIELD_TAGS = {"AbK", "DK", "SlJoinAbK", "DOcapAbBar", "LGK", "DGpMalAbK_capEGbarP"}
PRIME_TAGS = {"Gp", "EGbarP", "DGbarP"}
PLAIN_TAGS = {"Trivial", "Sl", "Band", "Com", "Groups", "Ab", "SlJoinAb", "DS", "DA", "DO", "LI", "A"}
ALIASES = {"EGbar": "EGbarP", "DGbar": "DGbarP", "I": "Trivial", "G": "Groups", "LG": "LGK"}


@dataclass(frozen=True)
class VarietyId:
    tag: str
    field: FieldSpec | None = None
    prime: int | None = None

    def __post_init__(self):
        tag = ALIASES.get(self.tag, self.tag)
        object.__setattr__(self, "tag", tag)
        if tag not in FIELD_TAGS | PRIME_TAGS | PLAIN_TAGS:
            raise SemigroupError(f"unknown variety {tag!r}")
        if tag in FIELD_TAGS and self.field is None:
            raise MissingParameter(f"{tag} needs a field")
        if tag in PRIME_TAGS:
            if self.prime is None and self.field is not None and self.field.characteristic:
                object.__setattr__(self, "prime", self.field.characteristic)
            if self.prime is None or not _is_prime(self.prime):
                raise MissingParameter(f"{tag} needs a prime")
        if tag == "DGpMalAbK_capEGbarP" and self.field.characteristic == 0:
            raise MissingParameter(f"{tag} needs a field of positive characteristic")

    def __str__(self):
        if self.field is not None:
            return f"{self.tag}@{self.field}"
        if self.prime is not None:
            return f"{self.tag}@{self.prime}"
        return self.tag


def parse_variety(text: str) -> VarietyId:
    """``Sl``, ``DA``, ``LGK@F2``, ``AbK@Q``, ``EGbar@2``, ..."""
    m = re.fullmatch(r"\s*([A-Za-z_]+)(?:@(\w+))?\s*", text)
    if not m:
        raise SemigroupError(f"cannot parse variety {text!r}")
    tag, param = ALIASES.get(m.group(1), m.group(1)), m.group(2)
    if param is None:
        return VarietyId(tag)
    if tag in PRIME_TAGS and param.isdigit():
        return VarietyId(tag, prime=int(param))
    return VarietyId(tag, field=parse_field(param))


# ---------------------------------------------------------------------------
# structural helpers


def _subgroups(S: FiniteSemigroup) -> list[SubgroupTable]:
    return [maximal_subgroup(S, e) for e in S.idempotents]


def _first_failing_subgroup(S, pred) -> Decision:
    for H in _subgroups(S):
        if not pred(H):
            return Decision(False, {"subgroup_at": H.identity, "order": H.order})
    return Decision(True)


def _non_commuting_pair(S: FiniteSemigroup):
    bad = S.table != S.table.T
    if bad.any():
        s, t = (int(x) for x in next(zip(*bad.nonzero())))
        return Decision(False, {"pair": [s, t]})
    return Decision(True)


def _completely_regular(S: FiniteSemigroup) -> Decision:
    G = S.greens
    with_idem = {int(G.h_class[e]) for e in S.idempotents}
    for s in range(S.order):
        if int(G.h_class[s]) not in with_idem:
            return Decision(False, {"element_outside_subgroups": s})
    return Decision(True)


def _regular_j_closed(S: FiniteSemigroup) -> Decision:
    G = S.greens
    for j in sorted(G.regular):
        if not S.is_closed(G.j_classes[j]):
            return Decision(False, {"j_class": list(G.j_classes[j])})
    return Decision(True)


def _regular_j_subsemigroups(S: FiniteSemigroup):
    G = S.greens
    return [(j, S.subsemigroup(G.j_classes[j])) for j in sorted(G.regular)]


def _all(*decisions) -> Decision:
    for d in decisions:
        d = d() if callable(d) else d
        if not d:
            return d
    return Decision(True)


def _is_group(S: FiniteSemigroup) -> Decision:
    if S.identity is not None and len(S.idempotents) == 1 and len(S.greens.h_classes) == 1:
        return Decision(True)
    return Decision(False, {"not_a_group": True})


def _as_group(S: FiniteSemigroup) -> SubgroupTable:
    return maximal_subgroup(S, S.idempotents[0])


def normal_sylow_quotient_ok(H: SubgroupTable, K: FieldSpec) -> bool:
    """``O_p(H)`` is a Sylow subgroup and ``H/O_p(H)`` is abelian with split exponent."""
    p = K.characteristic
    N = unipotent_radical(H, K)
    if (H.order // len(N)) % p == 0:
        return False
    return H.quotient_is_abelian(N) and K.splits(H.quotient_exponent(N))


def idempotent_generated(S: FiniteSemigroup) -> FiniteSemigroup:
    return S.subsemigroup(S.generated(S.idempotents))


# ---------------------------------------------------------------------------
# membership


def variety_member(S: FiniteSemigroup, v: VarietyId | str) -> Decision:
    if isinstance(v, str):
        v = parse_variety(v)
    tag, K, p = v.tag, v.field, v.prime
    T = S.table

    if tag == "Trivial":
        return Decision(S.order == 1, None if S.order == 1 else {"order": S.order})
    if tag == "Band":
        for s in range(S.order):
            if not S.is_idempotent(s):
                return Decision(False, {"non_idempotent": s})
        return Decision(True)
    if tag == "Com":
        return _non_commuting_pair(S)
    if tag == "Sl":
        return _all(lambda: variety_member(S, VarietyId("Band")), lambda: _non_commuting_pair(S))
    if tag == "Groups":
        return _is_group(S)
    if tag == "Ab":
        return _all(_is_group(S), lambda: _non_commuting_pair(S))
    if tag == "Gp":
        return _all(_is_group(S), lambda: Decision(is_p_power(S.order, p), {"order": S.order}))
    if tag == "AbK":
        return _all(
            _is_group(S),
            lambda: _non_commuting_pair(S),
            lambda: Decision(K.splits(_as_group(S).exponent), {"exponent": _as_group(S).exponent}),
        )
    if tag == "SlJoinAb":
        return _all(_completely_regular(S), lambda: _non_commuting_pair(S))
    if tag in ("DK", "SlJoinAbK"):
        structural = _all(
            _completely_regular(S),
            lambda: _central_idempotents(S),
            lambda: _first_failing_subgroup(S, lambda H: in_ab_k(H, K)),
        )
        if bool(structural) != _identity_test_dk(S, K):
            raise AssertionError("diagonalizability tests disagree")
        return structural
    if tag == "DS":
        return _regular_j_closed(S)
    if tag == "DA":
        closed = _regular_j_closed(S)
        if not closed:
            return closed
        G = S.greens
        for j in sorted(G.regular):
            for s in G.j_classes[j]:
                if not S.is_idempotent(s):
                    return Decision(False, {"j_class": list(G.j_classes[j]), "non_idempotent": s})
        return Decision(True)
    if tag in ("DO", "DOcapAbBar"):
        closed = _regular_j_closed(S)
        if not closed:
            return closed
        G = S.greens
        for j in sorted(G.regular):
            E = [e for e in G.j_classes[j] if S.is_idempotent(e)]
            if not S.is_closed(E):
                return Decision(False, {"j_class": list(G.j_classes[j]), "idempotents_not_closed": E})
        if tag == "DOcapAbBar":
            return _first_failing_subgroup(S, lambda H: in_ab_k(H, K))
        return Decision(True)
    if tag == "LGK":
        return is_lg_k(S, K)
    if tag == "LI":
        return is_local_group(S, lambda H: H.order == 1)
    if tag == "A":
        return _first_failing_subgroup(S, lambda H: H.order == 1)
    if tag == "EGbarP":
        E = idempotent_generated(S)
        d = _first_failing_subgroup(E, lambda H: is_p_power(H.order, p))
        if not d:
            return Decision(False, {"idempotent_generated_subgroup_order": d.witness["order"]})
        return d
    if tag == "DGbarP":
        return _all(_regular_j_closed(S), lambda: _first_failing_subgroup(S, lambda H: is_p_power(H.order, p)))
    if tag == "DGpMalAbK_capEGbarP":
        return _all(
            _regular_j_closed(S),
            lambda: _first_failing_subgroup(S, lambda H: normal_sylow_quotient_ok(H, K)),
            lambda: variety_member(S, VarietyId("EGbarP", prime=K.characteristic)),
        )
    raise AssertionError(tag)


def _central_idempotents(S: FiniteSemigroup) -> Decision:
    T = S.table
    for e in S.idempotents:
        bad = (T[e, :] != T[:, e]).nonzero()[0]
        if len(bad):
            return Decision(False, {"idempotent": e, "does_not_commute_with": int(bad[0])})
    return Decision(True)


def _identity_test_dk(S: FiniteSemigroup, K: FieldSpec) -> bool:
    """Commutative, ``x^(m+1) = x`` with ``m`` the group exponent, and ``x^m - 1`` splits."""
    if not S.is_commutative:
        return False
    m = lcm_all(H.exponent for H in _subgroups(S))
    return all(S.power(s, m + 1) == s for s in range(S.order)) and K.splits(m)


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class RepReport:
    field: str
    diagonalizable: bool
    unidiagonalizable: bool
    triangularizable: bool
    unitriangularizable: bool
    basic: bool
    split_basic: bool
    radical_classes: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    def flags(self) -> dict:
        return {
            "diagonalizable": self.diagonalizable,
            "unidiagonalizable": self.unidiagonalizable,
            "triangularizable": self.triangularizable,
            "unitriangularizable": self.unitriangularizable,
            "basic": self.basic,
            "split_basic": self.split_basic,
        }


def classify_representability(S: FiniteSemigroup, K: FieldSpec | str) -> RepReport:
    if isinstance(K, str):
        K = parse_field(K)
    rad = rhodes_radical(S, K).congruence
    Q, _ = quotient(S, rad)
    diag = variety_member(S, VarietyId("DK", field=K))
    unidiag = variety_member(S, VarietyId("Sl"))
    tri = variety_member(Q, VarietyId("DK", field=K))
    unitri = variety_member(Q, VarietyId("Sl"))
    basic = variety_member(Q, VarietyId("SlJoinAb"))
    witnesses = {}
    for name, d in (("diagonalizable", diag), ("unidiagonalizable", unidiag), ("triangularizable", tri),
                    ("unitriangularizable", unitri), ("basic", basic)):
        if not d:
            witnesses[name] = d.witness
    return RepReport(
        field=str(K),
        diagonalizable=bool(diag),
        unidiagonalizable=bool(unidiag),
        triangularizable=bool(tri),
        unitriangularizable=bool(unitri),
        basic=bool(basic),
        split_basic=bool(tri),
        radical_classes=[list(c) for c in rad.classes],
        witnesses=witnesses,
    )
