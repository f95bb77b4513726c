"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Every coefficient in the library is a :class:`Cyclo`: a residue modulo the
n-th cyclotomic polynomial with rational (gmpy2 ``mpq``) coefficients.  The
representation is canonical -- the conductor is minimized on construction --
so structural equality coincides with field equality and values can be used
as dict keys.  No floating point enters any computation path; ``approx`` is
a display-only helper.
"""

from __future__ import annotations

import cmath
from functools import lru_cache
from math import gcd

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover - gmpy2 is a hard dependency, but keep a fallback
    from fractions import Fraction as mpq

_MPQ_ZERO = mpq(0)
_MPQ_ONE = mpq(1)


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    out.sort()
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    # x^n - 1 divided by the product of Phi_d for proper divisors d.
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        q = cyclotomic_poly(d)
        poly = _poly_divexact(poly, list(q))
    return tuple(poly)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    assert all(c == 0 for c in num), "non-exact polynomial division"
    return out


def _normalize_conductor(n: int) -> int:
    # Q(zeta_n) = Q(zeta_{n/2}) when n = 2 mod 4; use the odd conductor.
    return n // 2 if n % 4 == 2 else n


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k: integer coefficients of zeta_n^k on the power basis, 0 <= k < 2*phi(n)."""
    deg = euler_phi(n)
    poly = cyclotomic_poly(n)
    rows: list[tuple[int, ...]] = []
    for k in range(deg):
        rows.append(tuple(1 if i == k else 0 for i in range(deg)))
    for k in range(deg, 2 * deg):
        # zeta^k = zeta * zeta^{k-1}; shift previous row then reduce the overflow.
        prev = rows[k - 1]
        shifted = [0] + list(prev[:-1])
        top = prev[-1]
        if top:
            for i in range(deg):
                shifted[i] -= top * poly[i]
        rows.append(tuple(shifted))
    return tuple(rows)


@lru_cache(maxsize=None)
def _embed_rows(d: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Power basis of Q(zeta_d) written in the power basis of Q(zeta_n); requires d | n."""
    assert n % d == 0
    step = n // d
    deg_d, deg_n = euler_phi(d), euler_phi(n)
    red = _reduction_rows(n)
    rows = []
    for j in range(deg_d):
        e = (j * step) % n
        acc = [0] * deg_n
        # zeta_n^e with e possibly >= deg_n: reduce by repeated single-step shifts.
        vec = [0] * deg_n
        if e < deg_n:
            vec[e] = 1
        else:
            vec[deg_n - 1] = 1
            for _ in range(e - deg_n + 1):
                top = vec[-1]
                vec = [0] + vec[:-1]
                if top:
                    poly = cyclotomic_poly(n)
                    for i in range(deg_n):
                        vec[i] -= top * poly[i]
        for i in range(deg_n):
            acc[i] = vec[i]
        rows.append(tuple(acc))
    return tuple(rows)


class Cyclo:
    """An element of Q(zeta_n), reduced mod the cyclotomic polynomial, minimal n."""

    __slots__ = ("n", "c", "_hash")

    def __init__(self, n: int, coeffs, _canonical: bool = False):
        if _canonical:
            self.n = n
            self.c = coeffs
            self._hash = None
            return
        n = _normalize_conductor(n)
        deg = euler_phi(n)
        c = [mpq(x) for x in coeffs]
        if len(c) < deg:
            c += [_MPQ_ZERO] * (deg - len(c))
        elif len(c) > deg:
            red = _reduction_rows(n)
            folded = [_MPQ_ZERO] * deg
            for k, ck in enumerate(c):
                if ck == 0:
                    continue
                if k < deg:
                    folded[k] += ck
                else:
                    row = red[k] if k < 2 * deg else None
                    if row is None:
                        raise ValueError("coefficient vector too long")
                    for i, ri in enumerate(row):
                        if ri:
                            folded[i] += ck * ri
            c = folded
        n, c = _minimize(n, c)
        self.n = n
        self.c = tuple(c)
        self._hash = None

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_rational(x) -> "Cyclo":
        return Cyclo(1, [mpq(x)])

    @staticmethod
    def zero() -> "Cyclo":
        return _ZERO

    @staticmethod
    def one() -> "Cyclo":
        return _ONE

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.n == 1 and self.c[0] == 0

    def is_one(self) -> bool:
        return self.n == 1 and self.c[0] == 1

    def is_rational(self) -> bool:
        return self.n == 1

    def as_rational(self):
        if self.n != 1:
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    # -- arithmetic -------------------------------------------------------

    def _lift(self, n: int) -> list:
        if self.n == n:
            return list(self.c)
        rows = _embed_rows(self.n, n)
        deg = euler_phi(n)
        out = [_MPQ_ZERO] * deg
        for j, cj in enumerate(self.c):
            if cj == 0:
                continue
            row = rows[j]
            for i in range(deg):
                if row[i]:
                    out[i] += cj * row[i]
        return out

    def __add__(self, other) -> "Cyclo":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.n == 1 and other.n == 1:
            return Cyclo(1, (self.c[0] + other.c[0],), _canonical=True)
        n = _lcm_conductor(self.n, other.n)
        a, b = self._lift(n), other._lift(n)
        return Cyclo(n, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.n, tuple(-x for x in self.c), _canonical=True)

    def __sub__(self, other) -> "Cyclo":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Cyclo":
        return _coerce(other) - self

    def __mul__(self, other) -> "Cyclo":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.n == 1:
            q = self.c[0]
            if q == 0:
                return _ZERO
            return Cyclo(other.n, tuple(q * x for x in other.c), _canonical=True) \
                if q != 1 else other
        if other.n == 1:
            return other * self
        n = _lcm_conductor(self.n, other.n)
        a, b = self._lift(n), other._lift(n)
        deg = euler_phi(n)
        prod = [_MPQ_ZERO] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
        return Cyclo(n, prod)

    __rmul__ = __mul__

    def inv(self) -> "Cyclo":
        """Multiplicative inverse, via the extended Euclidean algorithm mod Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_n)")
        if self.n == 1:
            return Cyclo(1, (1 / self.c[0],), _canonical=True)
        phi_n = [mpq(x) for x in cyclotomic_poly(self.n)]
        r0, r1 = phi_n, list(self.c)
        s0, s1 = [_MPQ_ZERO], [_MPQ_ONE]
        while True:
            r1 = _poly_trim(r1)
            if len(r1) == 1 and r1 != [_MPQ_ZERO]:
                scale = 1 / r1[0]
                return Cyclo(self.n, [x * scale for x in s1])
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))

    def __truediv__(self, other) -> "Cyclo":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other) -> "Cyclo":
        return _coerce(other) * self.inv()

    def __pow__(self, k: int) -> "Cyclo":
        if k < 0:
            return self.inv() ** (-k)
        result = _ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.n == other.n and self.c == other.c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.c))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- display -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"Cyclo({self})"

    def __str__(self) -> str:
        if self.n == 1:
            return _fmt_q(self.c[0])
        body = ", ".join(_fmt_q(x) for x in self.c)
        return f"cyclo({self.n}; {body})"

    def approx(self) -> complex:
        """Floating complex embedding (zeta_n -> exp(2 pi i / n)); display only."""
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(float(c) * z ** k for k, c in enumerate(self.c))


def _coerce(x):
    if isinstance(x, Cyclo):
        return x
    if isinstance(x, int) or type(x).__name__ in ("mpq", "mpz", "Fraction"):
        return Cyclo(1, (mpq(x),), _canonical=True)
    return NotImplemented


def _lcm_conductor(a: int, b: int) -> int:
    return _normalize_conductor(a * b // gcd(a, b))


def _minimize(n: int, c: list) -> tuple[int, tuple]:
    """Lower (n, coeffs) to the smallest cyclotomic subfield containing the value."""
    deg = euler_phi(n)
    if n == 1:
        return 1, (c[0],)
    if all(x == 0 for x in c[1:]):
        return 1, (c[0],)
    for d in _divisors(n)[1:-1]:
        if d == 2 or _normalize_conductor(d) != d:
            continue
        sub = _try_subfield(n, c, d)
        if sub is not None:
            return d, tuple(sub)
    return n, tuple(c[:deg])


def _try_subfield(n: int, c: list, d: int):
    """Solve for coordinates of c in the embedded power basis of Q(zeta_d), if any."""
    rows = _embed_rows(d, n)  # len phi(d), each of len phi(n)
    deg_n = euler_phi(n)
    deg_d = euler_phi(d)
    # Gaussian elimination on the (deg_n x deg_d) system  A x = c.
    a = [[mpq(rows[j][i]) for j in range(deg_d)] for i in range(deg_n)]
    rhs = list(c)
    piv_cols: list[int] = []
    row = 0
    for col in range(deg_d):
        sel = None
        for r in range(row, deg_n):
            if a[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        a[row], a[sel] = a[sel], a[row]
        rhs[row], rhs[sel] = rhs[sel], rhs[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        rhs[row] = rhs[row] * inv
        for r in range(deg_n):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
                rhs[r] = rhs[r] - f * rhs[row]
        piv_cols.append(col)
        row += 1
    sol = [_MPQ_ZERO] * deg_d
    for r, col in enumerate(piv_cols):
        sol[col] = rhs[r]
    for r in range(row, deg_n):
        if rhs[r] != 0:
            return None
    # Verify (the pivoting above assumed full column rank; embeddings have it).
    for i in range(deg_n):
        acc = _MPQ_ZERO
        for j in range(deg_d):
            if rows[j][i]:
                acc += sol[j] * rows[j][i]
        if acc != c[i]:
            return None
    return sol


# -- polynomial helpers over mpq ------------------------------------------


def _poly_trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list, b: list) -> list:
    out = [_MPQ_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [_MPQ_ZERO] * n
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _poly_trim(out)


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    den = _poly_trim(list(den))
    if len(num) < len(den):
        return [_MPQ_ZERO], num
    out = [_MPQ_ZERO] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] / den[-1]
        out[i] = c
        if c != 0:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    return out, _poly_trim(num)


def root_of_unity(n: int, k: int) -> Cyclo:
    """zeta_n^k in canonical form."""
    if n < 1:
        raise ValueError("conductor must be positive")
    k %= n
    deg_needed = k
    coeffs = [0] * (deg_needed + 1)
    coeffs[deg_needed] = 1
    m = _normalize_conductor(n)
    if m != n:
        # zeta_{2m}^k = (-1)^k zeta_m^{k*(m+1)/2} for odd m.
        kk = (k * ((m + 1) // 2)) % m
        sign = -1 if k % 2 else 1
        coeffs = [0] * (kk + 1)
        coeffs[kk] = sign
        n = m
    deg = euler_phi(n)
    if len(coeffs) - 1 >= deg:
        # Reduce zeta^k by repeated shift.
        vec = [_MPQ_ZERO] * deg
        vec[0] = mpq(coeffs[-1])
        poly = cyclotomic_poly(n)
        for _ in range(len(coeffs) - 1):
            top = vec[-1]
            vec = [_MPQ_ZERO] + vec[:-1]
            if top:
                for i in range(deg):
                    vec[i] -= top * poly[i]
        return Cyclo(n, vec)
    return Cyclo(n, coeffs)


def _fmt_q(x) -> str:
    return str(x)


def parse_scalar(text: str) -> Cyclo:
    """Parse `cyclo(n; c0, c1, ...)` or a plain rational `p/q`."""
    text = text.strip()
    if text.startswith("cyclo"):
        inner = text[text.index("(") + 1 : text.rindex(")")]
        head, _, tail = inner.partition(";")
        n = int(head.strip())
        coeffs = [mpq(t.strip()) for t in tail.split(",")] if tail.strip() else []
        return Cyclo(n, coeffs)
    return Cyclo(1, (mpq(text),), _canonical=True)


_ZERO = Cyclo(1, (_MPQ_ZERO,), _canonical=True)
_ONE = Cyclo(1, (_MPQ_ONE,), _canonical=True)

ZERO = _ZERO
ONE = _ONE


def rat(p, q: int = 1) -> Cyclo:
    """Convenience rational constructor."""
    return Cyclo(1, (mpq(p, q),), _canonical=True)
