"""Automata, transition and syntactic monoids, synchronizing words, marked products."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import CapExceeded, NotInDS, NotSynchronizing, NotTrim, SemigroupError
from .exact import QQ
from .linrep import MatrixRep, block_form, composition_flag
from .semigroup import DEFAULT_CAP, FiniteSemigroup, from_transformations

SUBSET_BFS_MAX_STATES = 16
FACTORIZATION_MAX_LENGTH = 20


@dataclass(frozen=True, eq=False)
class Dfa:
    """Deterministic automaton; ``delta[a][q] == -1`` means no transition."""

    states: int
    alphabet: tuple[str, ...]
    delta: Mapping[str, tuple[int, ...]]
    start: int
    finals: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        delta = {}
        for a in self.alphabet:
            row = tuple(-1 if x is None else int(x) for x in self.delta[a])
            if len(row) != self.states or any(not -1 <= x < self.states for x in row):
                raise SemigroupError(f"transition row for {a!r} is malformed")
            delta[a] = row
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "finals", frozenset(int(f) for f in self.finals))
        if not 0 <= self.start < self.states or any(not 0 <= f < self.states for f in self.finals):
            raise SemigroupError("start or final state out of range")

    def step(self, q: int, a: str) -> int:
        return -1 if q < 0 else self.delta[a][q]

    def run(self, word: Sequence[str], q: int | None = None) -> int:
        q = self.start if q is None else q
        for a in word:
            q = self.step(q, a)
        return q

    def accepts(self, word: Sequence[str]) -> bool:
        return self.run(word) in self.finals

    @property
    def is_complete(self) -> bool:
        return all(x >= 0 for row in self.delta.values() for x in row)

    def completed(self) -> Dfa:
        """Total automaton, adding a sink state if needed."""
        if self.is_complete:
            return self
        sink = self.states
        delta = {a: tuple(sink if x < 0 else x for x in row) + (sink,) for a, row in self.delta.items()}
        return Dfa(self.states + 1, self.alphabet, delta, self.start, self.finals)

    def reachable(self) -> set[int]:
        seen = {self.start}
        queue = deque([self.start])
        while queue:
            q = queue.popleft()
            for a in self.alphabet:
                r = self.delta[a][q]
                if r >= 0 and r not in seen:
                    seen.add(r)
                    queue.append(r)
        return seen

    def coreachable(self) -> set[int]:
        seen = set(self.finals)
        changed = True
        while changed:
            changed = False
            for a in self.alphabet:
                for q, r in enumerate(self.delta[a]):
                    if r in seen and q not in seen:
                        seen.add(q)
                        changed = True
        return seen

    @property
    def is_trim(self) -> bool:
        useful = self.reachable() & self.coreachable()
        return len(useful) == self.states

    def trimmed(self) -> Dfa:
        """Restrict to useful states; undefined transitions become -1."""
        useful = sorted(self.reachable() & self.coreachable())
        if self.start not in useful:
            raise NotTrim("automaton accepts no word")
        index = {q: i for i, q in enumerate(useful)}
        delta = {a: tuple(index.get(self.delta[a][q], -1) for q in useful) for a in self.alphabet}
        return Dfa(len(useful), self.alphabet, delta, index[self.start], frozenset(index[f] for f in self.finals if f in index))

    def to_json(self):
        return {
            "states": self.states,
            "alphabet": list(self.alphabet),
            "delta": {a: list(self.delta[a]) for a in self.alphabet},
            "start": self.start,
            "finals": sorted(self.finals),
        }

    @classmethod
    def from_json(cls, data) -> Dfa:
        return cls(int(data["states"]), tuple(data["alphabet"]), data["delta"], int(data.get("start", 0)), frozenset(data["finals"]))


def letter_dfa(alphabet: Sequence[str], loops: Sequence[str]) -> Dfa:
    """One state, final, looping on ``loops``: the language ``loops*``."""
    return Dfa(1, tuple(alphabet), {a: (0 if a in loops else -1,) for a in alphabet}, 0, frozenset([0]))


# ---------------------------------------------------------------------------
# monoids of automata


def _actions(x) -> tuple[int, dict[str, tuple[int, ...]]]:
    """State count and total letter actions of a DFA or a mapping of maps."""
    if isinstance(x, Dfa):
        d = x.completed()
        return d.states, {a: d.delta[a] for a in d.alphabet}
    acts = {str(a): tuple(int(v) for v in m) for a, m in x.items()}
    sizes = {len(m) for m in acts.values()}
    if len(sizes) != 1:
        raise SemigroupError("letter actions have different degrees")
    n = sizes.pop()
    if any(not 0 <= v < n for m in acts.values() for v in m):
        raise SemigroupError("letter actions must be total maps")
    return n, acts


def transition_monoid(x, cap: int = DEFAULT_CAP) -> tuple[FiniteSemigroup, dict[str, int]]:
    """Monoid of state maps induced by words; returns it with the letter map."""
    n, acts = _actions(x)
    M = from_transformations(n, acts, cap=cap, monoid=True)
    return M, dict(M.generators)


def boolean_matrix_monoid(letters: Mapping[str, np.ndarray], cap: int = DEFAULT_CAP) -> tuple[FiniteSemigroup, dict[str, int]]:
    """Monoid generated by boolean relation matrices (an NFA's letters)."""
    return _matrix_closure({a: np.asarray(m, dtype=np.uint8) != 0 for a, m in letters.items()},
                           lambda A, B: (A.astype(np.int64) @ B.astype(np.int64)) > 0, cap)


def _matrix_closure(letters, mul, cap):
    mats = list(letters.values())
    d = mats[0].shape[0]
    ident = np.eye(d, dtype=mats[0].dtype)
    elements = [ident]
    words: list[tuple[str, ...]] = [()]
    index = {ident.tobytes(): 0}
    gens = {}
    for a, m in letters.items():
        k = m.tobytes()
        if k not in index:
            index[k] = len(elements)
            elements.append(m)
            words.append((a,))
        gens[a] = index[k]
    i = 0
    while i < len(elements):
        for a, m in letters.items():
            p = mul(elements[i], m).astype(m.dtype)
            k = p.tobytes()
            if k not in index:
                if len(elements) >= cap:
                    raise CapExceeded(cap)
                index[k] = len(elements)
                elements.append(p)
                words.append(words[i] + (a,))
        i += 1
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(n):
            table[x, y] = index[mul(elements[x], elements[y]).astype(elements[0].dtype).tobytes()]
    S = FiniteSemigroup(table, identity=0, generators=gens, gen_words=tuple(words), labels=tuple(elements))
    return S, gens


def minimize(dfa: Dfa) -> Dfa:
    """Minimal complete automaton (Moore's partition refinement on reachable states)."""
    d = dfa.completed()
    reach = sorted(d.reachable())
    index = {q: i for i, q in enumerate(reach)}
    delta = {a: [index[d.delta[a][q]] for q in reach] for a in d.alphabet}
    finals = [q in d.finals for q in reach]
    labels = [int(f) for f in finals]
    while True:
        keys = [(labels[q],) + tuple(labels[delta[a][q]] for a in d.alphabet) for q in range(len(reach))]
        renum: dict[tuple, int] = {}
        new = [renum.setdefault(k, len(renum)) for k in keys]
        if len(renum) == len(set(labels)):
            break
        labels = new
    # number classes in order of first appearance, start state first
    order: dict[int, int] = {}
    queue = deque([index[d.start]])
    order[labels[index[d.start]]] = 0
    while queue:
        q = queue.popleft()
        for a in d.alphabet:
            r = delta[a][q]
            if labels[r] not in order:
                order[labels[r]] = len(order)
                queue.append(r)
    k = len(order)
    rep = {}
    for q in range(len(reach)):
        rep.setdefault(order[labels[q]], q)
    new_delta = {a: tuple(order[labels[delta[a][rep[c]]]] for c in range(k)) for a in d.alphabet}
    new_finals = frozenset(c for c in range(k) if finals[rep[c]])
    return Dfa(k, d.alphabet, new_delta, 0, new_finals)


def syntactic_monoid(dfa: Dfa) -> tuple[FiniteSemigroup, dict[str, int], Dfa]:
    """Transition monoid of the minimal automaton, its letter map, and that automaton."""
    m = minimize(dfa)
    M, letters = transition_monoid(m)
    return M, letters, m


def accepting_elements(M: FiniteSemigroup, dfa: Dfa) -> frozenset[int]:
    """Elements of a transition monoid of ``dfa`` that map the start into a final state."""
    return frozenset(i for i, f in enumerate(M.labels) if f[dfa.start] in dfa.finals)


# ---------------------------------------------------------------------------
# synchronization


def apply_word(acts: Mapping[str, Sequence[int]], word: Sequence[str], n: int) -> tuple[int, ...]:
    state = tuple(range(n))
    for a in word:
        m = acts[a]
        state = tuple(m[q] for q in state)
    return state


def synchronizes(x, word: Sequence[str]) -> bool:
    n, acts = _actions(x)
    return len(set(apply_word(acts, word, n))) == 1


def is_synchronizing(x) -> bool:
    """Every pair of states can be merged (pair-automaton reachability)."""
    n, acts = _actions(x)
    mergeable = {(q, q) for q in range(n)}
    pairs = [(p, q) for p in range(n) for q in range(p + 1, n)]
    changed = True
    done = set()
    while changed:
        changed = False
        for p, q in pairs:
            if (p, q) in done:
                continue
            for m in acts.values():
                a, b = sorted((m[p], m[q]))
                if a == b or (a, b) in done:
                    done.add((p, q))
                    changed = True
                    break
    return len(done) == len(pairs)


def shortest_sync_word(x) -> tuple[str, ...]:
    """Breadth-first search on subsets from the full state set."""
    n, acts = _actions(x)
    if n > SUBSET_BFS_MAX_STATES:
        raise CapExceeded(SUBSET_BFS_MAX_STATES, "subset search state count")
    full = (1 << n) - 1
    letters = list(acts)
    images = {a: [1 << acts[a][q] for q in range(n)] for a in letters}
    parent: dict[int, tuple[int, str] | None] = {full: None}
    queue = deque([full])
    while queue:
        s = queue.popleft()
        if s & (s - 1) == 0:
            word = []
            while parent[s] is not None:
                s, a = parent[s]
                word.append(a)
            return tuple(reversed(word))
        for a in letters:
            img = 0
            t, q = s, 0
            while t:
                if t & 1:
                    img |= images[a][q]
                t >>= 1
                q += 1
            if img not in parent:
                parent[img] = (s, a)
                queue.append(img)
    raise NotSynchronizing("no word merges all states", {"states": n})


def sync_rep(x) -> MatrixRep:
    """Letter actions on the span of ``f_i = e_last - e_i`` over Q.

    ``f_i m = f_{i.m} - f_{last.m}`` with ``f_last = 0``; a word acts as zero
    exactly when it is a constant map.
    """
    n, acts = _actions(x)
    k = n - 1
    images = {}
    for a, m in acts.items():
        M = [[QQ.zero] * k for _ in range(k)]
        for i in range(k):
            if m[i] != k:
                M[i][m[i]] += 1
            if m[k] != k:
                M[i][m[k]] -= 1
        images[a] = M
    return MatrixRep(QQ, k, images, tuple(acts))


@dataclass(frozen=True)
class SyncResult:
    word: tuple[str, ...]
    block_sizes: tuple[int, ...]
    chosen: tuple[str, ...]
    bound: int
    refined_bound: int


def ds_sync_word(x) -> SyncResult:
    """Synchronizing word of length at most ``(n-1)^2`` for automata with DS transition monoid.

    Along a composition series of the representation on ``span(f_i)`` every
    diagonal block is killed by some letter; the word ``u`` made of one such
    letter per block is strictly block upper triangular, so ``u^r`` is zero,
    i.e. constant, where ``r`` is the number of blocks.
    """
    from .varieties import variety_member

    n, acts = _actions(x)
    M, _ = transition_monoid(acts)
    ds = variety_member(M, "DS")
    if not ds:
        j = ds.witness["j_class"]
        raise NotInDS("transition monoid is not in DS",
                      {"j_class_size": len(j), "representative": list(M.gen_words[j[0]])})
    if not is_synchronizing(acts):
        raise NotSynchronizing("automaton is not synchronizing", {"states": n})
    rep = sync_rep(acts)
    flag = composition_flag(rep)
    form = block_form(rep, flag, with_monoids=False)
    letters = list(acts)

    def kills(a, st, b):
        A = form.images[a]
        return all(not A[i][j] for i in range(st, st + b) for j in range(st, st + b))

    chosen: list[str] = []
    for st, b in form.blocks:
        if any(kills(a, st, b) for a in chosen):
            continue
        a = next((a for a in letters if kills(a, st, b)), None)
        if a is None:
            raise AssertionError(f"no letter kills the diagonal block at {st}")
        chosen.append(a)
    r = len(form.blocks)
    word = tuple(chosen) * r
    if not synchronizes(acts, word):
        raise AssertionError("constructed word does not synchronize")
    return SyncResult(word, tuple(b for _, b in form.blocks), tuple(chosen), (n - 1) ** 2, min(len(letters), r) * r)


def cerny_automaton(n: int) -> dict[str, tuple[int, ...]]:
    """``a`` rotates the states, ``b`` sends state 0 to 1 and fixes the rest."""
    return {"a": tuple((q + 1) % n for q in range(n)), "b": tuple(1 if q == 0 else q for q in range(n))}


# ---------------------------------------------------------------------------
# marked products


@dataclass(frozen=True, eq=False)
class MarkedProductSpec:
    """``L_0 a_1 L_1 ... a_n L_n``, optionally counting factorizations mod ``p``."""

    factors: tuple[Dfa, ...]
    letters: tuple[str, ...]
    counter: tuple[int, int] | None = None  # (r, p)
    mode: str = "plain"

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "letters", tuple(self.letters))
        if len(self.factors) != len(self.letters) + 1:
            raise SemigroupError("need exactly one more factor than marked letters")
        if self.mode not in ("plain", "counter", "unambiguous"):
            raise SemigroupError(f"unknown mode {self.mode!r}")
        if self.mode == "counter":
            if self.counter is None:
                raise SemigroupError("counter mode needs (r, p)")
            r, p = self.counter
            if not 0 <= r < p:
                raise SemigroupError("counter residue out of range")

    @property
    def alphabet(self) -> tuple[str, ...]:
        seen = []
        for f in self.factors:
            for a in f.alphabet:
                if a not in seen:
                    seen.append(a)
        for a in self.letters:
            if a not in seen:
                seen.append(a)
        return tuple(seen)

    def to_json(self):
        out = {"factors": [f.to_json() for f in self.factors], "letters": list(self.letters), "mode": self.mode}
        if self.counter is not None:
            out["counter"] = {"r": self.counter[0], "p": self.counter[1]}
        return out

    @classmethod
    def from_json(cls, data) -> MarkedProductSpec:
        counter = data.get("counter")
        return cls(
            tuple(Dfa.from_json(f) for f in data["factors"]),
            tuple(data["letters"]),
            None if counter is None else (int(counter["r"]), int(counter["p"])),
            data.get("mode", "counter" if counter else "plain"),
        )


def count_factorizations(spec: MarkedProductSpec, word: Sequence[str]) -> int:
    """Number of ways to write ``word = u_0 a_1 u_1 ... a_n u_n`` with ``u_i`` in ``L_i``."""
    w = tuple(word)
    if len(w) > FACTORIZATION_MAX_LENGTH:
        raise ValueError(f"word longer than {FACTORIZATION_MAX_LENGTH}")
    n = len(spec.letters)
    count = 0
    for cuts in itertools.combinations(range(len(w)), n):
        if any(w[c] != a for c, a in zip(cuts, spec.letters)):
            continue
        bounds = (-1,) + cuts + (len(w),)
        pieces = [w[bounds[i] + 1:bounds[i + 1]] for i in range(n + 1)]
        if all(_accepts_any(f, u) for f, u in zip(spec.factors, pieces)):
            count += 1
    return count


def _accepts_any(dfa: Dfa, word) -> bool:
    q = dfa.start
    for a in word:
        if a not in dfa.delta:
            return False
        q = dfa.delta[a][q]
        if q < 0:
            return False
    return q in dfa.finals


@dataclass(frozen=True, eq=False)
class GluedAutomaton:
    """Nondeterministic automaton whose accepting paths are the factorizations."""

    states: int
    alphabet: tuple[str, ...]
    matrices: Mapping[str, np.ndarray]  # nonnegative integer edge counts
    start: int
    finals: frozenset[int]
    offsets: tuple[int, ...]

    def path_counts(self, word: Sequence[str], modulus: int | None = None) -> np.ndarray:
        v = np.zeros(self.states, dtype=object)
        v[self.start] = 1
        for a in word:
            v = v.dot(self.matrices[a]) if a in self.matrices else np.zeros(self.states, dtype=object)
            if modulus:
                v = v % modulus
        return v

    def count(self, word: Sequence[str]) -> int:
        v = self.path_counts(word)
        return int(sum(v[f] for f in self.finals))


def glued_automaton(spec: MarkedProductSpec, trim: bool = True) -> GluedAutomaton:
    """Factors laid out in order, each marked letter linking the finals of one factor to the next start."""
    factors = [f.trimmed() if trim else f for f in spec.factors]
    alphabet = spec.alphabet
    offsets = []
    total = 0
    for f in factors:
        offsets.append(total)
        total += f.states
    mats = {a: np.zeros((total, total), dtype=object) for a in alphabet}
    for i, f in enumerate(factors):
        off = offsets[i]
        for a in f.alphabet:
            for q, r in enumerate(f.delta[a]):
                if r >= 0:
                    mats[a][off + q, off + r] += 1
        if i > 0:
            prev, poff = factors[i - 1], offsets[i - 1]
            for q in prev.finals:
                mats[spec.letters[i - 1]][poff + q, off + f.start] += 1
    last = factors[-1]
    finals = frozenset(offsets[-1] + q for q in last.finals)
    return GluedAutomaton(total, alphabet, mats, factors[0].start, finals, tuple(offsets))


@dataclass(frozen=True, eq=False)
class CounterMatrices:
    p: int
    r: int
    letters: Mapping[str, np.ndarray]  # entries in 0..p-1
    start: int
    finals: frozenset[int]

    def image(self, word: Sequence[str]) -> np.ndarray:
        d = len(next(iter(self.letters.values())))
        M = np.eye(d, dtype=np.int64)
        for a in word:
            M = (M @ self.letters[a]) % self.p
        return M

    def count_mod_p(self, word: Sequence[str]) -> int:
        M = self.image(word)
        return int(sum(M[self.start, f] for f in self.finals) % self.p)

    def member(self, word: Sequence[str]) -> bool:
        return self.count_mod_p(word) == self.r


def counter_matrix(spec: MarkedProductSpec) -> CounterMatrices:
    """Letter matrices over ``Z/p`` whose (start, finals) entries count factorizations."""
    if spec.counter is None:
        raise SemigroupError("spec has no counter")
    for i, f in enumerate(spec.factors):
        if not (f.reachable() & f.coreachable()):
            raise NotTrim(f"factor {i} accepts no word")
    r, p = spec.counter
    g = glued_automaton(spec)
    letters = {a: (m.astype(np.int64) % p) for a, m in g.matrices.items()}
    return CounterMatrices(p, r, letters, g.start, g.finals)


@dataclass(frozen=True)
class AmbiguityReport:
    unambiguous: bool
    witness: tuple[str, ...] | None = None
    factorizations: int | None = None


def _saturate(v):
    return np.minimum(v, 2)


def is_unambiguous(spec: MarkedProductSpec, cap: int = DEFAULT_CAP) -> AmbiguityReport:
    """Exact decision by breadth-first search over saturated path-count vectors.

    Counts are kept in ``{0, 1, 2+}``; the first word whose total over final
    states reaches ``2+`` is a shortest ambiguous word.
    """
    g = glued_automaton(spec)
    mats = {a: np.minimum(m.astype(np.int64), 2) for a, m in g.matrices.items()}
    finals = sorted(g.finals)
    start = np.zeros(g.states, dtype=np.int64)
    start[g.start] = 1
    seen = {start.tobytes(): ()}
    queue = deque([(start, ())])
    while queue:
        v, w = queue.popleft()
        if v[finals].sum() >= 2:
            return AmbiguityReport(False, w, g.count(w))
        for a in g.alphabet:
            u = _saturate(v @ mats[a])
            k = u.tobytes()
            if k not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(cap)
                seen[k] = w + (a,)
                queue.append((u, w + (a,)))
    return AmbiguityReport(True)


def saturated_monoid(spec: MarkedProductSpec, cap: int = DEFAULT_CAP, merge_finals: bool = False):
    """Monoid of path-count matrices over ``{0, 1, 2+}`` for the trimmed glued automaton.

    With ``merge_finals`` an extra state collects every edge into a final
    state, so its column counts accepting paths of nonempty words.
    """
    g = glued_automaton(spec)
    mats = {a: np.minimum(m.astype(np.int64), 2) for a, m in g.matrices.items()}
    if merge_finals:
        d = g.states
        fin = sorted(g.finals)
        for a in list(mats):
            m = np.zeros((d + 1, d + 1), dtype=np.int64)
            m[:d, :d] = mats[a]
            m[:d, d] = np.minimum(mats[a][:, fin].sum(axis=1), 2)
            mats[a] = m
    return _matrix_closure(mats, lambda A, B: np.minimum(A @ B, 2), cap), g


def only_zero_one_matrices(spec: MarkedProductSpec, cap: int = DEFAULT_CAP) -> bool:
    """Whether every matrix in the path-count monoid has entries 0 or 1."""
    (S, _), _ = saturated_monoid(spec, cap)
    return all(int(m.max()) <= 1 for m in S.labels)


def ambiguity_by_matrices(spec: MarkedProductSpec, cap: int = DEFAULT_CAP) -> bool:
    """Unambiguity read off the saturated monoid with merged final states.

    In a trim automaton a ``2+`` entry at ``(i, j)`` with ``i`` reachable
    from the start and ``j`` the collecting state means some word has two
    accepting paths; the empty word never does.
    """
    (S, _), g = saturated_monoid(spec, cap, merge_finals=True)
    d = g.states
    reach = _reachable_states(g)
    return not any(m[i, d] >= 2 for m in S.labels for i in reach)


def _reachable_states(g: GluedAutomaton) -> list[int]:
    seen = {g.start}
    queue = deque([g.start])
    while queue:
        q = queue.popleft()
        for m in g.matrices.values():
            for r in np.flatnonzero(m[q]):
                if int(r) not in seen:
                    seen.add(int(r))
                    queue.append(int(r))
    return sorted(seen)


def words(alphabet: Sequence[str], max_length: int):
    for k in range(max_length + 1):
        yield from itertools.product(alphabet, repeat=k)
