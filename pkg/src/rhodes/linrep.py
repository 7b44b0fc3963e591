"""Exact matrix representations, composition flags and triangular forms.

Vectors are rows and matrices act on the right, ``v -> v @ M``.  A flag is
stored as an adapted basis whose first ``k_1`` vectors span ``V_1``, the
next ``k_2`` extend it to ``V_2`` and so on.  Since ``V_1`` is invariant,
writing it *last* makes every image block upper triangular.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

import numpy as np

from . import exact
from .errors import Refusal, UnsupportedField
from .exact import QQ, Subspace, galois_field, left_nullspace, matmul, spin, transpose, vecmat
from .radical import FieldSpec, require_field
from .semigroup import FiniteSemigroup

MEATAXE_TRIALS = 64
EXHAUSTIVE_VECTOR_LIMIT = 1 << 16


def exact_field(K: FieldSpec | str, char_only: bool = False):
    """Exact arithmetic for ``K``.

    With ``char_only`` a field of the same characteristic is accepted
    (prime subfield or Q), which is enough for computations with integer
    matrices whose answers depend only on the characteristic.
    """
    K = require_field(K)
    if K.kind == "Q":
        return QQ
    if K.kind == "F":
        return galois_field(K.q)
    if char_only:
        p = K.characteristic
        return QQ if p == 0 else galois_field(p)
    raise UnsupportedField(f"no exact arithmetic for {K}; use Q or F<q>")


@dataclass(frozen=True, eq=False)
class MatrixRep:
    """Images of elements as ``dim x dim`` matrices over ``field``.

    ``generators`` lists the keys whose images generate the image monoid;
    invariant subspaces are computed from these alone.
    """

    field: object
    dim: int
    images: Mapping[Hashable, list]
    generators: tuple
    basis_labels: tuple = ()
    semigroup: FiniteSemigroup | None = field(default=None, repr=False)

    def image(self, key):
        return self.images[key]

    def generator_images(self) -> list:
        return [self.images[g] for g in self.generators]

    def difference(self, s, t):
        return exact.msub(self.images[s], self.images[t])

    def is_multiplicative(self) -> bool:
        S = self.semigroup
        if S is None:
            raise ValueError("representation is not attached to a semigroup")
        for s in range(S.order):
            for t in range(S.order):
                if matmul(self.images[s], self.images[t]) != self.images[S.mul(s, t)]:
                    return False
        return True


def regular_representation(S: FiniteSemigroup, field: FieldSpec | str) -> MatrixRep:
    """Right multiplication on the space with basis ``S^1``.

    The basis is ``0..n-1`` followed, when ``S`` has no identity, by an
    adjoined identity labelled ``"1"``.
    """
    F = exact_field(field, char_only=True)
    n = S.order
    extra = S.identity is None
    d = n + 1 if extra else n
    T = S.table
    images = {}
    for s in range(n):
        M = exact.zeros(d, d, F)
        for x in range(n):
            M[x][T[x, s]] = F.one
        if extra:
            M[n][s] = F.one
        images[s] = M
    gens = tuple(sorted(set(S.generators.values()))) if S.generators else tuple(range(n))
    labels = tuple(range(n)) + (("1",) if extra else ())
    return MatrixRep(F, d, images, gens, labels, S)


# ---------------------------------------------------------------------------
# invariant subspaces


def _algebra_basis(gens, F, d):
    """Basis (as matrices) of the unital algebra generated by ``gens``."""
    W = Subspace(d * d, F)
    I = exact.identity(d, F)
    basis = []
    queue = []
    if W.add(exact.flatten(I)):
        basis.append(I)
        queue.append(I)
    i = 0
    while i < len(queue):
        A = queue[i]
        i += 1
        for g in gens:
            B = matmul(A, g)
            if W.add(exact.flatten(B)):
                basis.append(B)
                queue.append(B)
    return basis


def _dual_submodule(w, gens, F, d):
    """Annihilator of the column-spin of ``w``, or None if that spin is everything."""
    U = spin([w], [transpose(g) for g in gens], F, d)
    if len(U) == d:
        return None
    return left_nullspace(transpose(U.basis()), F)


def _norton_search(gens, F, d, rng):
    """Random-element search; returns (basis of a proper submodule | None, certified)."""
    algebra = _algebra_basis(gens, F, d)
    for _ in range(MEATAXE_TRIALS):
        a = exact.zeros(d, d, F)
        for B in algebra:
            c = F.random(rng)
            if c:
                a = exact.madd(a, exact.mscale(c, B))
        for g in exact.factor_polynomial(exact.minimal_polynomial(a, F), F):
            theta = exact.poly_eval_matrix(g, a, F)
            kernel = left_nullspace(theta, F)
            v = kernel[0]
            W = spin([v], gens, F, d)
            if len(W) < d:
                return W.basis(), True
            if len(kernel) == len(g) - 1:
                col = exact.right_nullspace(theta, F)[0]
                sub = _dual_submodule(col, gens, F, d)
                if sub is not None:
                    return sub, True
                return None, True
    return None, False


def _exhaustive_search(gens, F, d):
    if F.char == 0 or F.order ** d > EXHAUSTIVE_VECTOR_LIMIT:
        raise RuntimeError("could not decide irreducibility")
    for lead in range(d):
        for tail in itertools.product(F.elements, repeat=d - lead - 1):
            v = [F.zero] * lead + [F.one] + list(tail)
            W = spin([v], gens, F, d)
            if len(W) < d:
                return W.basis()
    return None


def proper_submodule(gens, F, d, rng=None):
    """Basis of a proper nonzero invariant subspace, or None when irreducible."""
    if d <= 1:
        return None
    rng = rng or random.Random(0)
    sub, certified = _norton_search(gens, F, d, rng)
    if certified:
        return sub
    return _exhaustive_search(gens, F, d)


@dataclass(frozen=True, eq=False)
class Flag:
    """``V_i`` is spanned by the first ``sum(block_sizes[:i])`` rows of ``basis``."""

    basis: list
    block_sizes: tuple[int, ...]

    def subspaces(self) -> list[list]:
        out, k = [], 0
        for b in self.block_sizes:
            k += b
            out.append(self.basis[:k])
        return out


def _restrict(gens, W: Subspace):
    return [[W.coords(vecmat(w, g)) for w in W.rows] for g in gens]


def _quotient(gens, W: Subspace):
    cols = W.complement_columns()
    out = []
    for g in gens:
        M = []
        for c in cols:
            r = W.reduce(g[c])
            M.append([r[k] for k in cols])
        out.append(M)
    return out, cols


def _flag_basis(gens, F, d, rng):
    if d == 0:
        return [], []
    sub = proper_submodule(gens, F, d, rng)
    if sub is None:
        return exact.identity(d, F), [d]
    W = Subspace(d, F, sub)
    lower_basis, lower_blocks = _flag_basis(_restrict(gens, W), F, len(W), rng)
    qgens, cols = _quotient(gens, W)
    upper_basis, upper_blocks = _flag_basis(qgens, F, len(cols), rng)
    basis = [exact.vecmat(b, W.rows) for b in lower_basis]
    for b in upper_basis:
        v = [F.zero] * d
        for x, c in zip(b, cols):
            v[c] = x
        basis.append(v)
    return basis, lower_blocks + upper_blocks


def composition_flag(rep: MatrixRep, seed: int = 0) -> Flag:
    """A composition series of the right module, as an adapted basis."""
    rng = random.Random(seed)
    basis, blocks = _flag_basis(rep.generator_images(), rep.field, rep.dim, rng)
    return Flag(basis, tuple(blocks))


def flag_is_invariant(rep: MatrixRep, flag: Flag) -> bool:
    for V in flag.subspaces():
        W = Subspace(rep.dim, rep.field, V)
        for M in rep.images.values():
            if any(vecmat(v, M) not in W for v in V):
                return False
    return True


def conjugate(M, P, Pinv):
    return matmul(matmul(P, M), Pinv)


@dataclass(frozen=True, eq=False)
class BlockForm:
    basis_change: list  # rows are the new basis; images become P M P^-1
    images: Mapping[Hashable, list]
    blocks: tuple[tuple[int, int], ...]  # (start, size) along the diagonal
    block_monoids: tuple[tuple[FiniteSemigroup, dict], ...]


def _matrix_semigroup(mats: Mapping[Hashable, list]):
    """Distinct matrices among ``mats`` with their product table."""
    keys = list(mats)
    index: dict[tuple, int] = {}
    reps = []
    morphism = {}
    for k in keys:
        key = tuple(map(tuple, mats[k]))
        if key not in index:
            index[key] = len(reps)
            reps.append(mats[k])
        morphism[k] = index[key]
    n = len(reps)
    table = np.empty((n, n), dtype=np.int64)
    for i, A in enumerate(reps):
        for j, B in enumerate(reps):
            key = tuple(map(tuple, matmul(A, B)))
            if key not in index:
                raise ValueError("images are not closed under multiplication")
            table[i, j] = index[key]
    return FiniteSemigroup(table, labels=tuple(tuple(map(tuple, r)) for r in reps)), morphism


def block_form(rep: MatrixRep, flag: Flag, with_monoids: bool = True) -> BlockForm:
    """Conjugate to block upper triangular form along ``flag``."""
    F = rep.field
    P = list(reversed(flag.basis))
    Pinv = exact.inverse(P, F) if P else []
    images = {k: conjugate(M, P, Pinv) for k, M in rep.images.items()}
    blocks, start = [], 0
    for b in reversed(flag.block_sizes):
        blocks.append((start, b))
        start += b
    monoids = []
    if with_monoids:
        for st, b in blocks:
            sub = {k: [row[st:st + b] for row in M[st:st + b]] for k, M in images.items()}
            monoids.append(_matrix_semigroup(sub))
    return BlockForm(P, images, tuple(blocks), tuple(monoids))


def is_block_upper_triangular(M, blocks) -> bool:
    for st, b in blocks:
        for i in range(st + b, len(M)):
            if any(M[i][j] for j in range(st, st + b)):
                return False
    return True


def is_upper_triangular(M, unitriangular: bool = False) -> bool:
    for i, row in enumerate(M):
        if any(row[j] for j in range(i)):
            return False
        if unitriangular:
            x = row[i]
            if x and x != 1:
                return False
    return True


@dataclass(frozen=True, eq=False)
class Triangularization:
    basis_change: list
    images: Mapping[Hashable, list]


def triangularize(S: FiniteSemigroup, field: FieldSpec | str, mode: str = "triangular", seed: int = 0) -> Triangularization:
    """Basis of the regular representation making every image (uni)triangular.

    Decided by building a composition series: success needs every factor to
    be one-dimensional, and in unitriangular mode every diagonal entry to be
    0 or 1.  Composition factors are unique up to isomorphism, so a failure
    for one series is a failure for all.
    """
    if mode not in ("triangular", "unitriangular"):
        raise ValueError(f"unknown mode {mode!r}")
    K = require_field(field)
    F = exact_field(K)
    rep = regular_representation(S, K)
    flag = composition_flag(rep, seed)
    big = [b for b in flag.block_sizes if b > 1]
    if big:
        raise Refusal(
            f"composition factor of dimension {big[0]} over {K}",
            {"reason": "irreducible block", "block_sizes": list(flag.block_sizes), "field": str(K),
             "obstruction": _obstruction(S, K, "triangularizable")},
        )
    form = block_form(rep, flag, with_monoids=False)
    if mode == "unitriangular":
        for s in range(S.order):
            M = form.images[s]
            for i in range(rep.dim):
                if M[i][i] and M[i][i] != 1:
                    raise Refusal(
                        f"element {s} has eigenvalue {M[i][i]} != 0, 1",
                        {"reason": "diagonal entry", "element": s, "position": i, "value": str(M[i][i]),
                         "obstruction": _obstruction(S, K, "unitriangularizable")},
                    )
    for s in range(S.order):
        if not is_upper_triangular(form.images[s], mode == "unitriangular"):
            raise AssertionError("flag did not triangularize")
    return Triangularization(form.basis_change, {s: form.images[s] for s in range(S.order)})


def _obstruction(S, K, flag):
    """Why the radical quotient misses the class, for the refusal report only."""
    from .varieties import classify_representability

    return classify_representability(S, K).witnesses.get(flag)


# ---------------------------------------------------------------------------
# ideals of the enveloping algebra


def span_ideal_nilpotent(rep: MatrixRep, spanning: Sequence[list]) -> tuple[bool, int | None]:
    """Is the two-sided ideal generated by ``spanning`` nilpotent, and its index.

    The index is the least ``k`` with ``I^k = 0``.
    """
    F = rep.field
    d = rep.dim
    gens = rep.generator_images()
    I = Subspace(d * d, F)
    queue = []
    for X in spanning:
        if I.add(exact.flatten(X)):
            queue.append(X)
    i = 0
    while i < len(queue):
        X = queue[i]
        i += 1
        for g in gens:
            for Y in (matmul(X, g), matmul(g, X)):
                if I.add(exact.flatten(Y)):
                    queue.append(Y)
    ideal = [_unflatten(r, d) for r in I.rows]
    if not ideal:
        return True, 1
    power = ideal
    k = 1
    while power:
        k += 1
        P = Subspace(d * d, F)
        for X in power:
            for Y in ideal:
                P.add(exact.flatten(matmul(X, Y)))
        if len(P) == len(power):
            return False, None
        power = [_unflatten(r, d) for r in P.rows]
    return True, k


def _unflatten(v, d):
    return [list(v[i * d:(i + 1) * d]) for i in range(d)]


def kernel_ideal_nilpotent(S: FiniteSemigroup, phi: Sequence[int], field: FieldSpec | str) -> tuple[bool, int | None]:
    """Nilpotency of the ideal spanned by ``s - t`` with ``phi(s) = phi(t)``."""
    rep = regular_representation(S, field)
    phi = list(phi)
    first = {}
    diffs = []
    for s in range(S.order):
        r = first.setdefault(phi[s], s)
        if r != s:
            diffs.append(rep.difference(s, r))
    return span_ideal_nilpotent(rep, diffs)
