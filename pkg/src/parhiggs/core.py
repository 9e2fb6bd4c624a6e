"""Exact rational, univariate polynomial and polynomial-matrix arithmetic.

Scalars are :class:`fractions.Fraction`.  :class:`Poly` only uses field
operators on its coefficients, so it also works over :class:`QuadNumber`
(elements of a real or imaginary quadratic extension of Q).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction


def as_rational(x) -> Fraction:
    """Parse ints, Fractions and ``"num/den"`` strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class QuadNumber:
    """``a + b*sqrt(c)`` with rational a, b and a fixed non-square rational c."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)

    def _coerce(self, other):
        if isinstance(other, QuadNumber):
            if other.c != self.c:
                raise ValueError("mixing different quadratic extensions")
            return other
        return QuadNumber(other, 0, self.c)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadNumber(self.a + o.a, self.b + o.b, self.c)

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.c)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadNumber(self.a * o.a + self.b * o.b * self.c,
                          self.a * o.b + self.b * o.a, self.c)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadNumber(self.a, -self.b, self.c)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.c

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic extension")
        t = self * o.conjugate()
        return QuadNumber(t.a / n, t.b / n, self.c)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadNumber):
            return (self.a, self.b, self.c) == (other.a, other.b, other.c)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.c}))"


def _coef(c):
    return Fraction(c) if isinstance(c, int) else c


def _common_den(coeffs) -> int:
    d = 1
    for c in coeffs:
        q = c.denominator
        if q != 1:
            d = d * q // gcd(d, q)
    return d


class Poly:
    """Dense univariate polynomial in the affine coordinate ``z``.

    ``coeffs[k]`` is the coefficient of ``z**k``; trailing zeros are stripped,
    so the zero polynomial has no coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coef(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> Poly:
        return cls([c])

    @classmethod
    def monomial(cls, c, k: int) -> Poly:
        return cls([0] * k + [c])

    @classmethod
    def z(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots, lead=1) -> Poly:
        p = cls.const(lead)
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return Poly()
            return Poly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly()
        a, b = self.coeffs, other.coeffs
        if all(type(c) is Fraction for c in a) and all(type(c) is Fraction for c in b):
            # integer convolution over a common denominator
            da, db = _common_den(a), _common_den(b)
            ia = [c.numerator * (da // c.denominator) for c in a]
            ib = [c.numerator * (db // c.denominator) for c in b]
            prod = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(ia):
                if x:
                    for j, y in enumerate(ib):
                        prod[i + j] += x * y
            d = da * db
            return Poly([Fraction(v, d) for v in prod])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: Poly):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        q = [Fraction(0)] * (dq + 1)
        lead = other.lc()
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            q[k] = c
            if c == 0:
                continue
            for j, oc in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - c * oc
        return Poly(q), Poly(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> Poly:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * (1 / self.lc())

    def derivative(self) -> Poly:
        return Poly([c * k for k, c in enumerate(self.coeffs)][1:])

    def shift(self, k: int) -> Poly:
        """Multiply by ``z**k``."""
        return Poly([0] * k + list(self.coeffs)) if self.coeffs else self

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, QuadNumber)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(reversed(terms))


ZERO = Poly()
ONE = Poly.const(1)
Z = Poly.z()


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd; ``poly_gcd(0, 0) == 0``."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(p: Poly, q: Poly):
    """``(g, s, t)`` with ``s*p + t*q == g`` and ``g`` monic."""
    r0, r1 = p, q
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        return ZERO, ZERO, ZERO
    inv = 1 / r0.lc()
    return r0 * inv, s0 * inv, t0 * inv


def poly_gcd_many(polys: Iterable[Poly]) -> Poly:
    g = ZERO
    for p in polys:
        g = poly_gcd(g, p)
        if g.degree == 0:
            break
    return g


def squarefree_part(p: Poly) -> Poly:
    if p.degree <= 0:
        return p.monic()
    return p.exact_div(poly_gcd(p, p.derivative())).monic()


def poly_sqrt(p: Poly) -> Poly | None:
    """Return q with ``q*q == p`` (q monic up to sign of lc), or None."""
    if p.is_zero():
        return ZERO
    if p.degree % 2:
        return None
    lead = p.lc()
    root_lead = _rational_sqrt(lead)
    if root_lead is None:
        return None
    m = p.degree // 2
    # coefficients from the top down
    q = [Fraction(0)] * (m + 1)
    q[m] = root_lead
    for k in range(m - 1, -1, -1):
        # coefficient of z^(m+k) in q^2
        s = sum((q[i] * q[m + k - i] for i in range(k + 1, m)), Fraction(0))
        q[k] = (p.coeff(m + k) - s) / (2 * root_lead)
    cand = Poly(q)
    return cand if cand * cand == p else None


def _rational_sqrt(x: Fraction) -> Fraction | None:
    from math import isqrt
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def rational_sqrt(x) -> Fraction | None:
    return _rational_sqrt(Fraction(x))


def rational_roots(p: Poly) -> list[Fraction]:
    """Distinct rational roots, ascending."""
    if p.degree <= 0:
        return []
    import sympy

    t = sympy.Symbol("t")
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)],
                    t, domain="QQ")
    roots = sp.ground_roots()
    return sorted(Fraction(int(r.p), int(r.q)) for r in roots)


# ---------------------------------------------------------------------------
# dense rational linear algebra


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        cand = [i for i in range(r, len(m)) if m[i][c] != 0]
        if not cand:
            continue
        # sparsest pivot row keeps fill-in (and fraction growth) down
        piv = min(cand, key=lambda i: sum(1 for x in m[i] if x))
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        # condition matrices are sparse: only touch the pivot row's support
        support = [(j, y) for j, y in enumerate(m[r]) if y]
        for i in range(len(m)):
            row = m[i]
            if i != r and row[c] != 0:
                f = row[c]
                for j, y in support:
                    row[j] -= f * y
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def kernel_basis(A, ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Right kernel of a rational matrix, as the rows of an RREF basis matrix.

    ``A`` may be a list of rows or a constant :class:`PolyMatrix`.
    """
    if isinstance(A, PolyMatrix):
        ncols = A.cols
        rows = [[e(0) if e.degree <= 0 else _nonconst(e) for e in A.row(i)]
                for i in range(A.rows)]
    else:
        rows = A
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
    R, pivots = rref(rows, ncols)
    pivset = set(pivots)
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        vecs.append(v)
    if not vecs:
        return []
    K, _ = rref(vecs, ncols)
    return [tuple(v) for v in K]


def _nonconst(e):
    raise ValueError("kernel_basis needs a matrix with constant entries")


def solve_rational(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution of ``A x = b`` or None."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(R, piv):
        x[pc] = row[ncols]
    return x


def mat_inverse(M: Sequence[Sequence]) -> list[list[Fraction]] | None:
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(M)]
    R, piv = rref(aug, n)
    if piv != list(range(n)):
        return None
    return [row[n:] for row in R]


def mat_mul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0))
             for j in range(len(B[0]))] for i in range(len(A))]


def mat_det(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    m = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


# ---------------------------------------------------------------------------
# polynomial matrices


def _poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (list, tuple)):
        return Poly(as_rational(c) if isinstance(c, str) else c for c in x)
    if isinstance(x, str):
        return Poly.const(as_rational(x))
    return Poly.const(x)


class PolyMatrix:
    """Dense matrix of :class:`Poly` with optional per-entry degree caps.

    A negative cap forces the entry to be zero.
    """

    __slots__ = ("rows", "cols", "entries", "caps")

    def __init__(self, rows: int, cols: int, entries: Sequence, caps: Sequence | None = None):
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        self.rows = rows
        self.cols = cols
        self.entries = tuple(_poly(e) for e in entries)
        self.caps = None if caps is None else tuple(caps)
        if self.caps is not None and len(self.caps) != rows * cols:
            raise ValueError("cap count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], caps=None) -> PolyMatrix:
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat_caps = None
        if caps is not None:
            flat_caps = [x for row in caps for x in row]
        return cls(r, c, [x for row in rows for x in row], flat_caps)

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> PolyMatrix:
        m = n if m is None else m
        return cls(n, m, [ZERO] * (n * m))

    @classmethod
    def identity(cls, n: int) -> PolyMatrix:
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.entries[i * self.cols + j]

    def cap(self, i: int, j: int) -> int | None:
        return None if self.caps is None else self.caps[i * self.cols + j]

    def row(self, i: int) -> list[Poly]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def tolist(self) -> list[list[Poly]]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def with_caps(self, caps) -> PolyMatrix:
        """Attach caps, given nested per row or flat."""
        if caps is not None and caps and isinstance(caps[0], (list, tuple)):
            caps = [x for row in caps for x in row]
        return PolyMatrix(self.rows, self.cols, self.entries, caps)

    def _binop(self, other, op):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.rows, self.cols,
                          [op(a, b) for a, b in zip(self.entries, other.entries)])

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __neg__(self):
        return PolyMatrix(self.rows, self.cols, [-e for e in self.entries], self.caps)

    def __mul__(self, scalar):
        return PolyMatrix(self.rows, self.cols, [e * scalar for e in self.entries], self.caps)

    __rmul__ = __mul__

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    a = self[i, k]
                    if a:
                        b = other[k, j]
                        if b:
                            acc = acc + a * b
                out.append(acc)
        return PolyMatrix(self.rows, other.cols, out)

    def transpose(self) -> PolyMatrix:
        caps = None
        if self.caps is not None:
            caps = [self.caps[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)]
        return PolyMatrix(self.cols, self.rows,
                          [self[i, j] for j in range(self.cols) for i in range(self.rows)], caps)

    @property
    def T(self):
        return self.transpose()

    def evaluate(self, x) -> list[list]:
        return [[self[i, j](x) for j in range(self.cols)] for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def max_degree(self) -> int:
        return max((e.degree for e in self.entries), default=-1)

    def respects_caps(self) -> bool:
        if self.caps is None:
            return True
        return all(e.is_zero() or e.degree <= c for e, c in zip(self.entries, self.caps))

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return f"PolyMatrix({self.tolist()!r})"


def char_poly(M: PolyMatrix) -> list[Poly]:
    """Coefficients ``[s_1, ..., s_n]`` of ``det(x I - M)``.

    Berkowitz recursion over the trailing principal submatrices; it never
    divides, so every intermediate stays in Q[z].
    """
    if not M.is_square():
        raise ValueError("char_poly needs a square matrix")
    return char_poly_generic(M.tolist(), ONE, ZERO)


def char_poly_generic(a: Sequence[Sequence], one, zero) -> list:
    """Division-free characteristic coefficients over any commutative ring."""
    n = len(a)
    p = [one]
    for i in range(n - 1, -1, -1):
        size = n - i
        R = [a[i][j] for j in range(i + 1, n)]
        C = [a[j][i] for j in range(i + 1, n)]
        sub = [[a[r][c] for c in range(i + 1, n)] for r in range(i + 1, n)]
        t = [one, -a[i][i]]
        vec = C
        for _ in range(size - 1):
            t.append(-_dot(R, vec, zero))
            vec = [_dot(row, vec, zero) for row in sub]
        newp = []
        for row in range(size + 1):
            acc = zero
            for col in range(min(row + 1, len(p))):
                acc = acc + t[row - col] * p[col]
            newp.append(acc)
        p = newp
    return p[1:]


def _dot(a, b, zero=ZERO):
    acc = zero
    for x, y in zip(a, b):
        if x and y:
            acc = acc + x * y
    return acc


def det(M: PolyMatrix) -> Poly:
    """Fraction-free Bareiss determinant over Q[z]."""
    if not M.is_square():
        raise ValueError("det needs a square matrix")
    n = M.rows
    if n == 0:
        return ONE
    a = [M.row(i) for i in range(n)]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def is_antisymmetric(M: PolyMatrix) -> bool:
    return M.is_square() and all(M[i, j] == -M[j, i] for i in range(M.rows) for j in range(M.rows))


def is_symmetric(M: PolyMatrix) -> bool:
    return M.is_square() and all(M[i, j] == M[j, i] for i in range(M.rows) for j in range(M.rows))


def pfaffian(M: PolyMatrix) -> Poly:
    """Pfaffian by expansion along the first row."""
    if not is_antisymmetric(M):
        raise ValueError("pfaffian needs an antisymmetric matrix")
    if M.rows % 2:
        raise ValueError("pfaffian needs even dimension")
    return _pf(M.tolist(), tuple(range(M.rows)))


def _pf(a, idx) -> Poly:
    if not idx:
        return ONE
    i0 = idx[0]
    acc = ZERO
    for pos in range(1, len(idx)):
        j = idx[pos]
        if a[i0][j].is_zero():
            continue
        rest = idx[1:pos] + idx[pos + 1:]
        term = a[i0][j] * _pf(a, rest)
        acc = acc + term if pos % 2 == 1 else acc - term
    return acc


class MPoly:
    """Sparse multivariate polynomial over Q: ``{exponent tuple: coefficient}``."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {e: Fraction(c) for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, nvars: int, c) -> MPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> MPoly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.nvars, out)

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return MPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def evaluate(self, values) -> Fraction:
        acc = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = t * v ** k
            acc += t
        return acc

    def split_last(self) -> dict[int, MPoly]:
        """Group by the exponent of the last variable."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            out.setdefault(e[-1], {})[e[:-1]] = c
        return {k: MPoly(self.nvars - 1, v) for k, v in sorted(out.items())}

    def __repr__(self):
        return f"MPoly({self.terms!r})"
