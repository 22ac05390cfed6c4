"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored as a coefficient vector of length phi(n) over the
basis 1, z, ..., z^(phi(n)-1), where z = zeta_n, reduced modulo the n-th
cyclotomic polynomial.  Equality of reduced vectors therefore coincides
with equality in the field.  Elements with different conductors are
combined by embedding both into Q(zeta_lcm) via zeta_n -> zeta_N^(N/n).

All values are immutable; the per-conductor caches are built through
``functools.lru_cache`` so concurrent readers are safe.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from . import unipoly

QQ = Fraction

Scalar = Union[int, Fraction, "CycloElem"]


class CycloError(ValueError):
    """Raised for invalid cyclotomic operations (bad conductor, 1/0, ...)."""


def totient(n: int) -> int:
    count = 0
    for k in range(1, n + 1):
        if math.gcd(k, n) == 1:
            count += 1
    return count


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    m, result = n, 1
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n (lowest degree first), by exact division of
    x^n - 1 by all lower-order cyclotomic polynomials."""
    if n < 1:
        raise CycloError(f"conductor must be positive, got {n}")
    if n == 1:
        return (-1, 1)
    num = [QQ(0)] * (n + 1)
    num[0], num[n] = QQ(-1), QQ(1)
    for d in _divisors(n):
        if d < n:
            quot, rem = unipoly.divmod_poly(num, [QQ(c) for c in cyclotomic_poly(d)])
            assert not rem
            num = quot
    coeffs = tuple(int(c) for c in num)
    return coeffs


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e gives the reduced coefficients of z^(phi+e) modulo Phi_n,
    for exponents up to max(2*phi - 2, n - 1)."""
    phi = totient(n)
    top = max(2 * phi - 2, n - 1)
    phi_poly = cyclotomic_poly(n)
    base = tuple(-c for c in phi_poly[:phi])  # z^phi = -(lower part), Phi monic
    rows = [base]
    for _ in range(phi, top):
        prev = rows[-1]
        shifted = [0] + list(prev[:-1])
        carry = prev[-1]
        if carry:
            shifted = [shifted[i] + carry * base[i] for i in range(phi)]
        rows.append(tuple(shifted))
    return tuple(rows)


@lru_cache(maxsize=None)
def _zeta_power_vector(n: int, e: int) -> tuple[Fraction, ...]:
    """Reduced coefficient vector of z^e in Q(zeta_n), 0 <= e < n."""
    phi = totient(n)
    if e < phi:
        return tuple(QQ(1) if i == e else QQ(0) for i in range(phi))
    row = _reduction_rows(n)[e - phi]
    return tuple(QQ(c) for c in row)


@lru_cache(maxsize=None)
def _power_table(n: int) -> dict[tuple[Fraction, ...], int]:
    """Map reduced coefficient vector -> exponent e for all powers zeta_n^e."""
    return {_zeta_power_vector(n, e): e for e in range(n)}


@lru_cache(maxsize=None)
def _trace_vector(n: int) -> tuple[Fraction, ...]:
    """Normalized traces Tr(z^i)/phi(n) of the basis powers.  The normalized
    trace is invariant under embeddings, which makes it usable for hashing
    across conductors.  Tr(zeta_n^i) is the Ramanujan sum c_n(i)."""
    phi = totient(n)
    out = []
    for i in range(phi):
        g = math.gcd(i, n) if i else n
        m = n // g
        out.append(QQ(_mobius(m) * phi, totient(m) * phi))
    return tuple(out)


class CycloElem:
    """An element of Q(zeta_n) in canonical reduced form."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n: int, coeffs: tuple[Fraction, ...]):
        # callers must pass reduced vectors of length phi(n); use the
        # factory functions below for anything else
        self.n = n
        self.coeffs = coeffs
        self._hash = None

    # -- construction -------------------------------------------------

    @staticmethod
    def from_rational(q: Union[int, Fraction]) -> "CycloElem":
        return CycloElem(1, (QQ(q),))

    @staticmethod
    def from_poly(n: int, poly) -> "CycloElem":
        """Build from arbitrary coefficients of powers of zeta_n, reducing."""
        phi = totient(n)
        vec = [QQ(0)] * phi
        rows = None
        for e, c in enumerate(poly):
            if not c:
                continue
            c = QQ(c)
            e = e % n if e >= n else e
            if e < phi:
                vec[e] += c
            else:
                if rows is None:
                    rows = _reduction_rows(n)
                row = rows[e - phi]
                for i in range(phi):
                    if row[i]:
                        vec[i] += c * row[i]
        return CycloElem(n, tuple(vec))

    # -- coercion and embedding ---------------------------------------

    @staticmethod
    def coerce(x: Scalar) -> "CycloElem":
        if isinstance(x, CycloElem):
            return x
        if isinstance(x, (int, Fraction)):
            return CycloElem.from_rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycloElem")

    def embed_to(self, N: int) -> "CycloElem":
        """Image under Q(zeta_n) -> Q(zeta_N), zeta_n -> zeta_N^(N/n)."""
        if N == self.n:
            return self
        if N % self.n != 0:
            raise CycloError(f"cannot embed conductor {self.n} into {N}")
        step = N // self.n
        phi_new = totient(N)
        vec = [QQ(0)] * phi_new
        rows = None
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            e = i * step
            if e < phi_new:
                vec[e] += c
            else:
                if rows is None:
                    rows = _reduction_rows(N)
                row = rows[e - phi_new]
                for j in range(phi_new):
                    if row[j]:
                        vec[j] += c * row[j]
        return CycloElem(N, tuple(vec))

    @staticmethod
    def common(a: "CycloElem", b: "CycloElem") -> tuple["CycloElem", "CycloElem"]:
        if a.n == b.n:
            return a, b
        N = math.lcm(a.n, b.n)
        return a.embed_to(N), b.embed_to(N)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return all(not c for c in self.coeffs[1:])

    def as_rational(self) -> Optional[Fraction]:
        return self.coeffs[0] if self.is_rational() else None

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: Scalar) -> "CycloElem":
        try:
            other = CycloElem.coerce(other)
        except TypeError:
            return NotImplemented
        a, b = CycloElem.common(self, other)
        return CycloElem(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycloElem":
        return CycloElem(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Scalar) -> "CycloElem":
        try:
            other = CycloElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "CycloElem":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "CycloElem":
        try:
            other = CycloElem.coerce(other)
        except TypeError:
            return NotImplemented
        if other.n == 1:
            q = other.coeffs[0]
            return CycloElem(self.n, tuple(c * q for c in self.coeffs))
        if self.n == 1:
            q = self.coeffs[0]
            return CycloElem(other.n, tuple(c * q for c in other.coeffs))
        a, b = CycloElem.common(self, other)
        phi = len(a.coeffs)
        conv = [QQ(0)] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    conv[i + j] += x * y
        vec = list(conv[:phi])
        rows = None
        for e in range(phi, 2 * phi - 1):
            c = conv[e]
            if not c:
                continue
            if rows is None:
                rows = _reduction_rows(a.n)
            row = rows[e - phi]
            for i in range(phi):
                if row[i]:
                    vec[i] += c * row[i]
        return CycloElem(a.n, tuple(vec))

    __rmul__ = __mul__

    def inverse(self) -> "CycloElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational():
            return CycloElem(self.n, (1 / self.coeffs[0],) + self.coeffs[1:])
        exp = self.unit_exponent()
        if exp is not None:
            return zeta(self.n, -exp)
        # general case: extended Euclid against Phi_n, which is irreducible
        phi_poly = [QQ(c) for c in cyclotomic_poly(self.n)]
        g, s, _ = unipoly.ext_gcd(list(self.coeffs), phi_poly)
        assert unipoly.degree(g) == 0
        inv = [c / g[0] for c in s]
        return CycloElem.from_poly(self.n, inv)

    def __truediv__(self, other: Scalar) -> "CycloElem":
        try:
            other = CycloElem.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_rational():
            q = other.as_rational()
            if not q:
                raise ZeroDivisionError("division by zero")
            return CycloElem(self.n, tuple(c / q for c in self.coeffs))
        a, b = CycloElem.common(self, other)
        return a * b.inverse()

    def __rtruediv__(self, other: Scalar) -> "CycloElem":
        return CycloElem.coerce(other) / self

    def __pow__(self, k: int) -> "CycloElem":
        if k < 0:
            return self.inverse() ** (-k)
        exp = self.unit_exponent()
        if exp is not None:
            return zeta(self.n, exp * k)
        result = CycloElem.from_rational(1).embed_to(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- root-of-unity structure ----------------------------------------

    def unit_exponent(self) -> Optional[int]:
        """If self equals zeta_n^e for some e, return e, else None."""
        return _power_table(self.n).get(self.coeffs)

    def root_of_unity_order(self) -> Optional[int]:
        """Least k with self^k = 1, searched up to 2n; None otherwise."""
        e = self.unit_exponent()
        if e is not None:
            return self.n // math.gcd(self.n, e) if e else 1
        one = CycloElem.from_rational(1)
        power = self
        for k in range(1, 2 * self.n + 1):
            if power == one:
                return k
            power = power * self
        return None

    # -- comparison and hashing -----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloElem):
            return NotImplemented
        if self.n == other.n:
            return self.coeffs == other.coeffs
        a, b = CycloElem.common(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        # hash must agree across conductors for equal elements, so hash a
        # conductor-invariant: the normalized trace
        if self._hash is None:
            tv = _trace_vector(self.n)
            tr = sum((c * t for c, t in zip(self.coeffs, tv) if c), QQ(0))
            self._hash = hash(tr)
        return self._hash

    def __repr__(self):
        return f"CycloElem({self.n}, {format_scalar(self)!r})"


def zeta(n: int, k: int = 1) -> CycloElem:
    """The root of unity zeta_n^k, reduced."""
    if n < 1:
        raise CycloError(f"conductor must be positive, got {n}")
    return CycloElem(n, _zeta_power_vector(n, k % n))


def rational(q: Union[int, Fraction]) -> CycloElem:
    return CycloElem.from_rational(q)


def root_of_unity_order(x: Scalar) -> Optional[int]:
    return CycloElem.coerce(x).root_of_unity_order()


def embed_to(x: Scalar, N: int) -> CycloElem:
    return CycloElem.coerce(x).embed_to(N)


def sqrt_root_of_unity(x: CycloElem) -> Optional[CycloElem]:
    """A square root of a root of unity (in a possibly larger field)."""
    r = x.root_of_unity_order()
    if r is None:
        return None
    e = x.embed_to(math.lcm(x.n, r)).unit_exponent()
    n = math.lcm(x.n, r)
    if e is None:
        # x = -zeta^j is possible for odd n; go through conductor 2n
        x2 = x.embed_to(2 * n)
        e, n = x2.unit_exponent(), 2 * n
        if e is None:
            return None
    if e % 2 == 0:
        return zeta(n, e // 2)
    return zeta(2 * n, e)


def cbrt_root_of_unity(x: CycloElem) -> Optional[CycloElem]:
    """A cube root of a root of unity (in a possibly larger field)."""
    r = x.root_of_unity_order()
    if r is None:
        return None
    n = math.lcm(x.n, r)
    e = x.embed_to(n).unit_exponent()
    if e is None:
        x2 = x.embed_to(2 * n)
        e, n = x2.unit_exponent(), 2 * n
        if e is None:
            return None
    if e % 3 == 0:
        return zeta(n, e // 3)
    return zeta(3 * n, e)


def conjugate(x: CycloElem) -> CycloElem:
    """Complex conjugation, the automorphism zeta_n -> zeta_n^(-1)."""
    poly = [QQ(0)] * x.n
    for i, c in enumerate(x.coeffs):
        if c:
            poly[(x.n - i) % x.n] += c
    return CycloElem.from_poly(x.n, poly)


def _legendre(a: int, p: int) -> int:
    value = pow(a % p, (p - 1) // 2, p)
    return -1 if value == p - 1 else value


@lru_cache(maxsize=None)
def sqrt_of_prime(p: int) -> CycloElem:
    """Exact square root of a prime, via quadratic Gauss sums."""
    if p == 2:
        return zeta(8) + zeta(8, 7)
    total = CycloElem.from_rational(0)
    for a in range(1, p):
        total = total + zeta(p, a) * _legendre(a, p)
    if p % 4 == 1:
        return total
    return total * zeta(4, 3)  # Gauss sum equals i*sqrt(p) when p = 3 mod 4


def sqrt_of_rational(q: Union[int, Fraction]) -> CycloElem:
    """Exact square root of a nonnegative rational (always cyclotomic)."""
    q = QQ(q)
    if q < 0:
        raise CycloError("sqrt_of_rational needs a nonnegative argument")
    if q == 0:
        return CycloElem.from_rational(0)
    m = q.numerator * q.denominator  # sqrt(q) = sqrt(num*den)/den
    result = CycloElem.from_rational(QQ(1, q.denominator))
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            result = result * (p ** (e // 2))
            if e % 2:
                result = result * sqrt_of_prime(p)
        p += 1
    if m > 1:
        result = result * sqrt_of_prime(m)
    return result


def _rational_nth_root(q: Fraction, k: int) -> Optional[Fraction]:
    def iroot(v: int) -> Optional[int]:
        if v < 0:
            if k % 2 == 0:
                return None
            r = iroot(-v)
            return None if r is None else -r
        r = round(v ** (1.0 / k))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c ** k == v:
                return c
        return None

    num, den = iroot(q.numerator), iroot(q.denominator)
    if num is None or den is None:
        return None
    return QQ(num, den)


def sqrt_cyclo(x: Scalar) -> Optional[CycloElem]:
    """A square root of x inside some cyclotomic field, or None.

    Covers roots of unity, all rationals, and any element whose absolute
    value squared x*conj(x) is the square of a rational (e.g. products of
    rationals with roots of unity)."""
    x = CycloElem.coerce(x)
    if x.is_zero():
        return CycloElem.from_rational(0)
    root = sqrt_root_of_unity(x)
    if root is not None:
        return root
    q = x.as_rational()
    if q is not None:
        s = sqrt_of_rational(abs(q))
        return s * zeta(4) if q < 0 else s
    norm = (x * conjugate(x)).as_rational()
    if norm is None or norm < 0:
        return None
    c = _rational_nth_root(norm, 2)
    if c is None:
        return None
    unit = x / c  # |x| = c, so this has absolute value 1
    unit_root = sqrt_root_of_unity(unit)
    if unit_root is None:
        return None
    return sqrt_of_rational(c) * unit_root


def cbrt_cyclo(x: Scalar) -> Optional[CycloElem]:
    """A cube root of x inside some cyclotomic field, or None.

    Handles roots of unity, rational perfect cubes, and elements whose
    rational norm x*conj(x) is a perfect cube c^3 with x/c^(3/2) a root of
    unity; cube roots that would generate non-abelian extensions (such as
    2^(1/3)) do not exist in cyclotomic fields and yield None."""
    x = CycloElem.coerce(x)
    if x.is_zero():
        return CycloElem.from_rational(0)
    root = cbrt_root_of_unity(x)
    if root is not None:
        return root
    q = x.as_rational()
    if q is not None:
        r = _rational_nth_root(q, 3)
        return None if r is None else CycloElem.from_rational(r)
    norm = (x * conjugate(x)).as_rational()
    if norm is None or norm < 0:
        return None
    c = _rational_nth_root(norm, 3)
    if c is None:
        return None
    magnitude = sqrt_of_rational(c) * c  # |x| = c^(3/2)
    unit = x / magnitude
    unit_root = cbrt_root_of_unity(unit)
    if unit_root is None:
        return None
    return sqrt_of_rational(c) * unit_root


# -- text syntax -------------------------------------------------------
#
# Scalars in all file formats: rational literals (3/2, -1), `z` for the
# conductor's root of unity, `^` powers, `+ - *` operators and parentheses,
# e.g. ``1/2*z^3 - z + 2``.


class ScalarParseError(ValueError):
    pass


class _ScalarParser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.pos = 0
        self.n = n

    def error(self, msg: str):
        raise ScalarParseError(f"{msg} at position {self.pos} in {self.text!r}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> CycloElem:
        value = self.parse_sum()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")
        return value

    def parse_sum(self) -> CycloElem:
        value = self.parse_product()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                value = value + self.parse_product()
            elif ch == "-":
                self.pos += 1
                value = value - self.parse_product()
            else:
                return value

    def parse_product(self) -> CycloElem:
        value = self.parse_factor()
        while self.peek() == "*":
            self.pos += 1
            value = value * self.parse_factor()
        return value

    def parse_factor(self) -> CycloElem:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.parse_factor()
        if ch == "+":
            self.pos += 1
            return self.parse_factor()
        return self.parse_power()

    def parse_power(self) -> CycloElem:
        base = self.parse_atom()
        if self.peek() == "^":
            self.pos += 1
            exp = self.parse_int()
            return base ** exp
        return base

    def parse_atom(self) -> CycloElem:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.parse_sum()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if ch == "z":
            self.pos += 1
            return zeta(self.n, 1)
        if ch.isdigit():
            num = self.parse_int()
            if self.peek() == "/":
                self.pos += 1
                den = self.parse_int()
                if den == 0:
                    self.error("zero denominator")
                return rational(QQ(num, den))
            return rational(num)
        self.error("expected scalar")

    def parse_int(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            self.error("expected integer")
        return int(self.text[start:self.pos])


def parse_scalar(text: str, n: int) -> CycloElem:
    """Parse a scalar expression where `z` denotes zeta_n."""
    return _ScalarParser(text, n).parse()


def format_scalar(x: CycloElem, n: Optional[int] = None) -> str:
    """Canonical text form of x relative to conductor n (default: its own)."""
    if n is not None:
        x = x.embed_to(n)
    parts = []
    for e, c in enumerate(x.coeffs):
        if not c:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            zpow = "z" if e == 1 else f"z^{e}"
            body = zpow if mag == 1 else f"{mag}*{zpow}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
