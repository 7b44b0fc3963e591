"""Field descriptions, unipotent radicals and the Rhodes radical congruence."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Callable, Mapping

from .congruence import (
    Congruence,
    GgmData,
    enumerate_congruences,
    ggm_congruence,
    ggm_data,
    is_v_congruence,
    quotient,
)
from .errors import SemigroupError, UnsupportedField
from .exact import _is_prime, prime_power
from .semigroup import Decision, FiniteSemigroup, SubgroupTable, is_local_group


@dataclass(frozen=True)
class FieldSpec:
    """Just enough about a field K: its characteristic and which ``x^e - 1`` split.

    ``kind`` is one of ``Q, R, C, F, Fbar, custom``; ``q`` is the order for
    ``F`` and the prime for ``Fbar``.
    """

    kind: str
    q: int | None = None
    custom_char: int = 0
    custom_splits: Callable[[int], bool] | None = field(default=None, compare=False, repr=False)
    name: str | None = None

    @property
    def characteristic(self) -> int:
        if self.kind in ("Q", "R", "C"):
            return 0
        if self.kind == "F":
            return prime_power(self.q)[0]
        if self.kind == "Fbar":
            return self.q
        return self.custom_char

    def splits(self, e: int) -> bool:
        """``x^e - 1`` has ``e`` distinct roots in K."""
        if e < 1:
            raise ValueError("exponent must be positive")
        if self.kind in ("Q", "R"):
            return e <= 2
        if self.kind == "C":
            return True
        if self.kind == "F":
            return (self.q - 1) % e == 0
        if self.kind == "Fbar":
            return gcd(e, self.q) == 1
        return bool(self.custom_splits(e))

    def __str__(self):
        if self.name:
            return self.name
        if self.kind in ("F", "Fbar"):
            return f"{self.kind}{self.q}"
        return self.kind

    @classmethod
    def custom(cls, characteristic: int, splits: Callable[[int], bool], name: str = "custom",
               check_up_to: int = 64) -> FieldSpec:
        """A user-described field; ``splits`` is checked for the closure rules up to ``check_up_to``."""
        if characteristic and not _is_prime(characteristic):
            raise UnsupportedField(f"characteristic {characteristic} is not prime")
        spec = cls("custom", None, characteristic, splits, name)
        validate_splitting(spec, check_up_to)
        return spec


def validate_splitting(K: FieldSpec, up_to: int = 64) -> None:
    """Check ``splits(1)``, closure under divisors and lcm, and coprimality to the characteristic."""
    if not K.splits(1):
        raise UnsupportedField("x - 1 must split")
    ok = [e for e in range(1, up_to + 1) if K.splits(e)]
    okset = set(ok)
    p = K.characteristic
    for e in ok:
        if p and e % p == 0:
            raise UnsupportedField(f"x^{e} - 1 cannot have distinct roots in characteristic {p}")
        for d in range(1, e):
            if e % d == 0 and d not in okset:
                raise UnsupportedField(f"splits({e}) but not splits({d})")
        for f in ok:
            m = e * f // gcd(e, f)
            if m <= up_to and m not in okset:
                raise UnsupportedField(f"splits({e}) and splits({f}) but not splits({m})")


_FIELD_RE = re.compile(r"^(Q|R|C|F(\d+)|Fbar(\d+))$")


def parse_field(text: str) -> FieldSpec:
    """Parse ``Q``, ``R``, ``C``, ``F<q>`` or ``Fbar<p>``."""
    m = _FIELD_RE.match(text.strip())
    if not m:
        raise UnsupportedField(f"cannot parse field {text!r}")
    if m.group(2):
        q = int(m.group(2))
        if prime_power(q) is None:
            raise UnsupportedField(f"F{q}: {q} is not a prime power")
        return FieldSpec("F", q)
    if m.group(3):
        p = int(m.group(3))
        if not _is_prime(p):
            raise UnsupportedField(f"Fbar{p}: {p} is not prime")
        return FieldSpec("Fbar", p)
    return FieldSpec(m.group(1))


Q = FieldSpec("Q")


# ---------------------------------------------------------------------------
# groups


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def unipotent_radical(G: SubgroupTable, field: FieldSpec) -> frozenset[int]:
    """Largest normal subgroup in G_K: trivial in characteristic 0, else ``O_p(G)``."""
    p = field.characteristic
    if p == 0:
        return frozenset([G.identity])
    good = [x for x in G.carrier if is_p_power(G.element_order(x), p) and is_p_power(len(G.normal_closure([x])), p)]
    return G.generated(good)


def in_group_variety(G: SubgroupTable, field: FieldSpec) -> bool:
    """Membership in G_K: trivial (char 0) or a p-group (char p)."""
    p = field.characteristic
    return G.order == 1 if p == 0 else is_p_power(G.order, p)


def in_ab_k(G: SubgroupTable, field: FieldSpec) -> bool:
    return G.is_abelian and field.splits(G.exponent)


def is_lg_k(S: FiniteSemigroup, field: FieldSpec) -> Decision:
    return is_local_group(S, lambda H: in_group_variety(H, field))


# ---------------------------------------------------------------------------
# the radical


@dataclass(frozen=True, eq=False)
class RadicalResult:
    congruence: Congruence
    per_j_class: Mapping[int, tuple[GgmData, Congruence]]


def rhodes_radical(S: FiniteSemigroup, field: FieldSpec) -> RadicalResult:
    """Meet, over regular J-classes, of the GGM congruences with N the unipotent radical."""
    G = S.greens
    per = {}
    cong = Congruence.universal(S.order)
    for j in sorted(G.regular):
        base = ggm_data(S, j)
        N = unipotent_radical(base.base_group, field)
        data = GgmData(base.j_class, base.base_group, base.r_coords, base.l_coords, N)
        c = ggm_congruence(S, j, data=data)
        per[j] = (data, c)
        cong = cong.meet(c)
    return RadicalResult(cong, per)


def rhodes_radical_oracle(S: FiniteSemigroup, field: FieldSpec) -> Congruence:
    """The largest LG_K-congruence, found among all congruences."""
    good = [c for c in enumerate_congruences(S) if is_v_congruence(S, c, lambda T: bool(is_lg_k(T, field)))]
    top = [c for c in good if all(d.refines(c) for d in good)]
    if len(top) != 1:
        raise AssertionError(f"no unique largest LG_K-congruence among {len(good)}")
    return top[0]


def radical_quotient(S: FiniteSemigroup, field: FieldSpec) -> FiniteSemigroup:
    return quotient(S, rhodes_radical(S, field).congruence)[0]


def malcev_member(S: FiniteSemigroup, v_predicate: Callable[[FiniteSemigroup], bool], field: FieldSpec) -> bool:
    """Membership in the Mal'cev product of LG_K with V, via the radical quotient."""
    return bool(v_predicate(radical_quotient(S, field)))


def augmentation_ideal_nilpotent(S: FiniteSemigroup, field: FieldSpec) -> tuple[bool, int | None]:
    """Nilpotency of the span of ``s - t`` inside the regular representation."""
    from .linrep import regular_representation, span_ideal_nilpotent

    rep = regular_representation(S, field)
    diffs = [(s, 0) for s in range(1, S.order)]
    return span_ideal_nilpotent(rep, [rep.difference(s, t) for s, t in diffs])


def lcm_all(values) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def require_field(K) -> FieldSpec:
    if isinstance(K, FieldSpec):
        return K
    if isinstance(K, str):
        return parse_field(K)
    raise SemigroupError(f"not a field description: {K!r}")
