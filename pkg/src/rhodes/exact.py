"""Exact scalars, vectors and matrices over Q and GF(q).

Matrices are plain lists of rows; vectors are lists.  Everything here acts on
row vectors from the right (``v -> v @ M``), the same side semigroups act on
states and on basis elements.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k`` or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            break
    if not _is_prime(p):
        return None
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


class RationalField:
    name = "Q"
    char = 0
    order = None

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def __repr__(self):
        return "RationalField()"

    def random(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-3, 3))

    def to_json(self, x: Fraction):
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    def from_json(self, s) -> Fraction:
        return Fraction(s)


QQ = RationalField()


class GFElement:
    __slots__ = ("field", "v")

    def __init__(self, field: "GaloisField", v: int):
        self.field = field
        self.v = v

    def _coerce(self, other) -> int:
        if isinstance(other, GFElement):
            if other.field is not self.field:
                raise TypeError("mixing elements of different fields")
            return other.v
        if isinstance(other, int):
            return self.field(other).v
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.field, self.field._add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.field, self.field._add(self.v, self.field._neg(o)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.field, self.field._add(o, self.field._neg(self.v)))

    def __neg__(self):
        return GFElement(self.field, self.field._neg(self.v))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.field, self.field._mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.field.order)
        return GFElement(self.field, self.field._mul(self.v, self.field._inv(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GFElement(self.field, o) / self

    def __pow__(self, k: int):
        r = self.field.one
        b = self
        if k < 0:
            b = self.field.one / b
            k = -k
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __hash__(self):
        return hash((self.field.order, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"GF{self.field.order}({self.v})"


class GaloisField:
    """GF(q) with elements encoded as integers ``0..q-1``.

    For prime powers an integer encodes the coefficient vector (base p,
    constant term first) of a polynomial modulo a fixed irreducible modulus.
    """

    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        self.order = q
        self.char, self.degree = pk
        self.name = f"F{q}"
        p, k = pk
        if k > 1:
            self.modulus = _find_irreducible(p, k)
            self._mul_table = [[_poly_mulmod(a, b, p, self.modulus) for b in range(q)] for a in range(q)]
            self._add_table = [[_digits_add(a, b, p, k) for b in range(q)] for a in range(q)]
            self._neg_table = [_digits_neg(a, p, k) for a in range(q)]
            self._inv_table = [0] * q
            for a in range(1, q):
                for b in range(1, q):
                    if self._mul_table[a][b] == 1:
                        self._inv_table[a] = b
                        break
        else:
            self.modulus = None
        self.zero = GFElement(self, 0)
        self.one = GFElement(self, 1)
        self.elements = [GFElement(self, v) for v in range(q)]

    def __repr__(self):
        return f"GaloisField({self.order})"

    def __call__(self, x) -> GFElement:
        if isinstance(x, GFElement):
            return x
        if isinstance(x, Fraction):
            if x.denominator != 1:
                return self(x.numerator) / self(x.denominator)
            x = x.numerator
        # integers embed through the prime subfield
        return GFElement(self, int(x) % self.char)

    def _add(self, a, b):
        if self.modulus is None:
            return (a + b) % self.char
        return self._add_table[a][b]

    def _neg(self, a):
        if self.modulus is None:
            return (-a) % self.char
        return self._neg_table[a]

    def _mul(self, a, b):
        if self.modulus is None:
            return (a * b) % self.char
        return self._mul_table[a][b]

    def _inv(self, a):
        if self.modulus is None:
            return pow(a, self.char - 2, self.char)
        return self._inv_table[a]

    def random(self, rng: random.Random) -> GFElement:
        return GFElement(self, rng.randrange(self.order))

    def to_json(self, x: GFElement):
        return self(x).v

    def from_json(self, v) -> GFElement:
        return GFElement(self, int(v) % self.order if self.modulus else int(v) % self.char)


def _digits(a, p, k):
    return [(a // p**i) % p for i in range(k)]


def _undigits(ds, p):
    return sum(d * p**i for i, d in enumerate(ds))


def _digits_add(a, b, p, k):
    return _undigits([(x + y) % p for x, y in zip(_digits(a, p, k), _digits(b, p, k))], p)


def _digits_neg(a, p, k):
    return _undigits([(-x) % p for x in _digits(a, p, k)], p)


def _poly_mulmod(a, b, p, modulus):
    k = len(modulus) - 1
    da, db = _digits(a, p, k), _digits(b, p, k)
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    # modulus is monic, constant term first
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * modulus[i]) % p
    return _undigits(prod[:k], p)


def _find_irreducible(p, k):
    for tail in itertools.product(range(p), repeat=k):
        cand = list(tail) + [1]
        if cand[0] == 0:
            continue
        if _irreducible_mod_p(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")


def _irreducible_mod_p(poly, p):
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            div = list(tail) + [1]
            if _divides_mod_p(div, poly, p):
                return False
    return True


def _divides_mod_p(div, poly, p):
    r = list(poly)
    dd = len(div) - 1
    for d in range(len(r) - 1, dd - 1, -1):
        c = r[d]
        if c:
            for i in range(dd + 1):
                r[d - dd + i] = (r[d - dd + i] - c * div[i]) % p
    return not any(r[:dd])


@lru_cache(maxsize=None)
def galois_field(q: int) -> GaloisField:
    return GaloisField(q)


# ---------------------------------------------------------------------------
# matrices and subspaces


def zeros(rows, cols, F):
    return [[F.zero] * cols for _ in range(rows)]


def identity(n, F):
    m = zeros(n, n, F)
    for i in range(n):
        m[i][i] = F.one
    return m


def convert(M, F):
    return [[F(x) for x in row] for row in M]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [None] * cols
        nz = [(k, a) for k, a in enumerate(row) if a]
        for j in range(cols):
            s = None
            for k, a in nz:
                b = B[k][j]
                if b:
                    s = a * b if s is None else s + a * b
            acc[j] = s
        out.append(acc)
    zero = _zero_like(A, B)
    return [[zero if x is None else x for x in row] for row in out]


def _zero_like(A, B):
    for M in (A, B):
        for row in M:
            for x in row:
                return x - x
    return 0


def vecmat(v, M):
    cols = len(M[0]) if M else 0
    zero = v[0] - v[0] if v else 0
    out = [zero] * cols
    for k, a in enumerate(v):
        if a:
            row = M[k]
            for j in range(cols):
                b = row[j]
                if b:
                    out[j] = out[j] + a * b
    return out


def transpose(M):
    return [list(col) for col in zip(*M)] if M else []


def madd(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def msub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mscale(c, A):
    return [[c * a for a in row] for row in A]


def is_zero_matrix(M):
    return all(not x for row in M for x in row)


def flatten(M):
    return [x for row in M for x in row]


def rref(rows):
    """Reduced row echelon form; returns ``(nonzero_rows, pivot_columns)``.

    Pivots are chosen as the first nonzero entry scanning rows in order, so the
    result depends only on the input order.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    return len(rref(rows)[1])


def left_nullspace(M, F):
    """Basis of ``{v : v @ M == 0}``."""
    n = len(M)
    if n == 0:
        return []
    cols = len(M[0])
    # row reduce [M | I]
    aug = [list(M[i]) + [F.one if j == i else F.zero for j in range(n)] for i in range(n)]
    red, piv = rref(aug)
    return [row[cols:] for row in red if all(not x for x in row[:cols])]


def right_nullspace(M, F):
    """Basis of ``{x : M @ x == 0}`` returned as row lists."""
    if not M:
        return []
    cols = len(M[0])
    red, piv = rref(M)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        x = [F.zero] * cols
        x[f] = F.one
        for r, pc in enumerate(piv):
            x[pc] = -red[r][f]
        basis.append(x)
    return basis


def inverse(M, F):
    n = len(M)
    aug = [list(M[i]) + [F.one if j == i else F.zero for j in range(n)] for i in range(n)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


class Subspace:
    """Subspace of ``F^dim`` kept as a reduced echelon basis."""

    def __init__(self, dim, F, vectors=()):
        self.dim = dim
        self.F = F
        self.rows: list[list] = []
        self.pivots: list[int] = []
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    def reduce(self, v):
        v = list(v)
        for row, c in zip(self.rows, self.pivots):
            f = v[c]
            if f:
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def __contains__(self, v):
        return not any(self.reduce(v))

    def add(self, v) -> bool:
        w = self.reduce(v)
        c = next((i for i, x in enumerate(w) if x), None)
        if c is None:
            return False
        inv = self.F.one / w[c]
        w = [x * inv for x in w]
        for i, row in enumerate(self.rows):
            f = row[c]
            if f:
                self.rows[i] = [x - f * y for x, y in zip(row, w)]
        # keep pivots sorted for a canonical basis
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < c:
            pos += 1
        self.rows.insert(pos, w)
        self.pivots.insert(pos, c)
        return True

    def coords(self, v):
        """Coordinates of ``v`` (assumed in the span) in the echelon basis."""
        return [v[c] for c in self.pivots]

    def basis(self):
        return [list(r) for r in self.rows]

    def complement_columns(self):
        piv = set(self.pivots)
        return [c for c in range(self.dim) if c not in piv]


def spin(vectors, gens, F, dim):
    """Smallest subspace containing ``vectors`` and invariant under ``v -> v@g``."""
    W = Subspace(dim, F)
    queue = []
    for v in vectors:
        if W.add(v):
            queue.append(list(v))
    i = 0
    while i < len(queue):
        v = queue[i]
        i += 1
        for g in gens:
            w = vecmat(v, g)
            if W.add(w):
                queue.append(w)
                if len(W) == dim:
                    return W
    return W


# ---------------------------------------------------------------------------
# polynomials: coefficient lists, constant term first


def poly_trim(f):
    f = list(f)
    while len(f) > 1 and not f[-1]:
        f.pop()
    return f


def poly_monic(f, F):
    f = poly_trim(f)
    lc = F(f[-1])
    return [F(c) / lc for c in f]


def poly_divmod(f, g, F):
    f = [F(c) for c in poly_trim(f)]
    g = [F(c) for c in poly_trim(g)]
    dg = len(g) - 1
    if len(f) - 1 < dg:
        return [F.zero], f
    q = [F.zero] * (len(f) - dg)
    r = list(f)
    for d in range(len(r) - 1, dg - 1, -1):
        c = r[d] / g[-1]
        if c:
            q[d - dg] = c
            for i in range(dg + 1):
                r[d - dg + i] = r[d - dg + i] - c * g[i]
    return poly_trim(q), poly_trim(r[:dg] or [F.zero])


def poly_eval_matrix(f, A, F):
    """Horner evaluation of ``f`` at the square matrix ``A``."""
    n = len(A)
    out = zeros(n, n, F)
    for c in reversed(f):
        out = matmul(out, A) if any(any(r) for r in out) else out
        for i in range(n):
            out[i][i] = out[i][i] + c
    return out


def minimal_polynomial(A, F):
    """Monic minimal polynomial of a square matrix."""
    n = len(A)
    powers = [flatten(identity(n, F))]
    P = identity(n, F)
    for k in range(1, n + 1):
        P = matmul(P, A)
        powers.append(flatten(P))
        ns = left_nullspace(powers, F)
        if ns:
            rel = ns[0]
            # only one relation can appear at the first dependent power
            lc = rel[-1]
            return [c / lc for c in rel]
    raise AssertionError("minimal polynomial degree exceeds matrix size")


def factor_polynomial(f, F):
    """Distinct monic irreducible factors of ``f`` over ``F``, by degree."""
    f = poly_monic(f, F)
    if len(f) <= 1:
        return []
    if F.char == 0:
        return _factor_rational(f)
    return _factor_finite(f, F)


def _factor_rational(f):
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f)], x, domain="QQ")
    _, facs = poly.factor_list()
    out = []
    for g, _mult in facs:
        coeffs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in reversed(g.all_coeffs())]
        lc = coeffs[-1]
        out.append([c / lc for c in coeffs])
    out.sort(key=lambda g: (len(g), [str(c) for c in g]))
    return out


def _factor_finite(f, F):
    out = []
    rest = list(f)
    d = 1
    while 2 * d <= len(rest) - 1:
        for tail in itertools.product(F.elements, repeat=d):
            g = list(tail) + [F.one]
            q, r = poly_divmod(rest, g, F)
            if all(not c for c in r):
                out.append(g)
                rest = q
                while True:
                    q, r = poly_divmod(rest, g, F)
                    if any(r):
                        break
                    rest = q
        d += 1
    if len(rest) > 1:
        out.append(poly_monic(rest, F))
    out.sort(key=len)
    return out
