"""Exact integer/rational linear algebra and univariate polynomials.

Determinants of polynomial matrices are obtained by evaluating the matrix at
integer nodes ``0..d``, taking an exact Bareiss determinant at each node and
interpolating.  Root finding is numeric, but multiplicities come from an
exact square-free decomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, NamedTuple, Sequence

import mpmath
import numpy as np

IntMatrix = Sequence[Sequence[int]]

ROOT_TOL = 1e-9


class InterpolationError(ArithmeticError):
    """Interpolated determinant polynomial had a non-integer coefficient."""


def _normalize(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _normalize(Fraction(c))
    raise TypeError(f"polynomial coefficients must be exact rationals, got {type(c).__name__}")


class Polynomial:
    """Univariate polynomial with exact rational coefficients, lowest degree first.

    Integral coefficients are stored as ``int``.  Trailing zeros are stripped
    so the zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_normalize(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> Polynomial:
        return cls([0] * degree + [coeff])

    @classmethod
    def linear(cls, a, b) -> Polynomial:
        """``a + b*u``."""
        return cls([a, b])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self):
        return format_polynomial(self)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> Polynomial:
        return other if isinstance(other, Polynomial) else Polynomial([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result, base = Polynomial([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        return poly_exact_divide(self, self._coerce(other))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self, order: int = 1) -> Polynomial:
        return poly_derivative(self, order)

    def monic(self) -> Polynomial:
        lead = Fraction(self.leading)
        return Polynomial(Fraction(c) / lead for c in self.coeffs)

    def primitive(self) -> Polynomial:
        """Integer polynomial with coprime coefficients and positive leading term."""
        if self.is_zero:
            return self
        fr = [Fraction(c) for c in self.coeffs]
        den = math.lcm(*(f.denominator for f in fr))
        ints = [int(f * den) for f in fr]
        g = math.gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return Polynomial(c // g for c in ints)

    def to_json(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> Polynomial:
        return cls(Fraction(s) for s in data["coeffs"])


def format_polynomial(p: Polynomial, var: str = "u") -> str:
    if p.is_zero:
        return "0"
    terms = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            power = var if i == 1 else f"{var}^{i}"
            body = power if mag == 1 else f"{mag}*{power}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# -- determinants -------------------------------------------------------------

def det_bareiss(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    rows = [list(r) for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("det_bareiss needs a square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    while len(rows) > 1:
        for idx, r in enumerate(rows):
            if r[0] != 0:
                break
        else:
            return 0
        if idx:
            rows[0], rows[idx] = rows[idx], rows[0]
            sign = -sign
        top = rows[0]
        p, tail = top[0], top[1:]
        nxt = []
        for r in rows[1:]:
            f = r[0]
            if f:
                nxt.append([(p * x - f * y) // prev for x, y in zip(r[1:], tail)])
            else:
                nxt.append([(p * x) // prev for x in r[1:]])
        prev, rows = p, nxt
    return sign * rows[0][0]


def interpolate_integer_nodes(values: Sequence[int]) -> Polynomial:
    """Polynomial of degree <= len(values)-1 taking ``values[i]`` at ``u = i``.

    Uses Newton forward differences, so all intermediate quantities are
    integers; the final division by ``d!`` must be exact.
    """
    d = len(values) - 1
    if d < 0:
        return Polynomial()
    diffs = []
    row = list(values)
    while row:
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    # p(u) = sum_k diffs[k] * falling(u, k) / k!; scaled by d! to stay integral
    fact = math.factorial(d)
    total = [0] * (d + 1)
    falling = [1]
    for k, dk in enumerate(diffs):
        w = dk * (fact // math.factorial(k))
        for j, c in enumerate(falling):
            total[j] += w * c
        # falling(u, k+1) = falling(u, k) * (u - k)
        falling = [0] + falling
        for j in range(len(falling) - 1):
            falling[j] -= k * falling[j + 1]
    coeffs = []
    for c in total:
        q, r = divmod(c, fact)
        if r:
            raise InterpolationError(f"non-integer coefficient {Fraction(c, fact)}")
        coeffs.append(q)
    return Polynomial(coeffs)


def det_poly(matrix_at: Callable[[int], IntMatrix], degree_bound: int) -> Polynomial:
    """``det(M(u))`` for an integer polynomial matrix of degree <= ``degree_bound``.

    Evaluates at nodes ``0..degree_bound``.
    """
    values = [det_bareiss(matrix_at(u)) for u in range(degree_bound + 1)]
    return interpolate_integer_nodes(values)


def det_poly_linear(f: IntMatrix, sign: int = -1) -> Polynomial:
    """``det(I + sign*u*F)``; the default gives ``det(I - u F)``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    d = len(f)

    def at(u):
        s = sign * u
        return [[(1 if i == j else 0) + s * x for j, x in enumerate(row)] for i, row in enumerate(f)]

    return det_poly(at, d)


def char_poly(m: IntMatrix) -> Polynomial:
    """Monic ``det(lam*I - M)``."""
    d = len(m)

    def at(lam):
        return [[(lam if i == j else 0) - x for j, x in enumerate(row)] for i, row in enumerate(m)]

    return det_poly(at, d)


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b):
    """Dense product that skips zero entries of ``a``."""
    n, k = len(a), len(b[0]) if b else 0
    out = [[0] * k for _ in range(n)]
    for i, row in enumerate(a):
        acc = out[i]
        for j, x in enumerate(row):
            if x:
                bj = b[j]
                for c in range(k):
                    if bj[c]:
                        acc[c] += x * bj[c]
    return out


def trace(a) -> int:
    return sum(a[i][i] for i in range(len(a)))


def matrix_power(a, k: int):
    result = identity(len(a))
    for _ in range(k):
        result = matmul(result, a)
    return result


# -- polynomial arithmetic ----------------------------------------------------

def poly_exact_divide(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Long division over the rationals: ``num = den*q + r`` with ``deg r < deg den``."""
    if den.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in num.coeffs]
    dd = den.degree
    lead = Fraction(den.leading)
    q = [Fraction(0)] * max(len(rem) - dd, 0)
    for i in range(len(rem) - dd - 1, -1, -1):
        c = rem[i + dd] / lead
        q[i] = c
        if c:
            for j, b in enumerate(den.coeffs):
                rem[i + j] -= c * b
    return Polynomial(q), Polynomial(rem[:dd] if dd > 0 else [])


def poly_derivative(p: Polynomial, order: int = 1) -> Polynomial:
    if order < 0:
        raise ValueError("derivative order must be non-negative")
    cs = list(p.coeffs)
    for _ in range(order):
        cs = [i * c for i, c in enumerate(cs)][1:]
    return Polynomial(cs)


def poly_eval_rational(p: Polynomial, x) -> Fraction:
    return Fraction(p(Fraction(x)))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over Q (zero if both inputs are zero)."""
    while not b.is_zero:
        a, b = b, poly_exact_divide(a, b)[1]
        if not b.is_zero:
            b = b.primitive()
    return a.monic() if not a.is_zero else a


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: ``p = c * prod(a_i ** i)`` with each ``a_i`` square-free.

    Returns ``(a_i, i)`` for the non-constant factors, each ``a_i`` primitive.
    """
    if p.degree < 1:
        return []
    dp = p.derivative()
    a0 = poly_gcd(p, dp)
    b = poly_exact_divide(p, a0)[0]
    c = poly_exact_divide(dp, a0)[0]
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree >= 1:
        a = poly_gcd(b, d)
        if a.degree >= 1:
            out.append((a.primitive(), i))
        b = poly_exact_divide(b, a)[0]
        c = poly_exact_divide(d, a)[0]
        d = c - b.derivative()
        i += 1
    return out


def root_multiplicity(p: Polynomial, x) -> int:
    """Exact multiplicity of the rational ``x`` as a root of ``p``."""
    x = Fraction(x)
    for factor, mult in squarefree_decomposition(p):
        if factor(x) == 0:
            return mult
    return 0


@dataclass(frozen=True)
class RationalPoint:
    abscissa: Fraction
    ordinate: Fraction

    def __post_init__(self):
        object.__setattr__(self, "abscissa", Fraction(self.abscissa))
        object.__setattr__(self, "ordinate", Fraction(self.ordinate))


class ComplexRoot(NamedTuple):
    real: float
    imag: float
    multiplicity: int
    exact: Fraction | None = None

    @property
    def value(self) -> complex:
        return complex(self.real, self.imag)


def _try_rational(p: Polynomial, x: float) -> Fraction | None:
    if not math.isfinite(x):
        return None
    for bound in (10, 1000, 10**6):
        r = Fraction(x).limit_denominator(bound)
        if abs(float(r) - x) <= 1e-7 * max(1.0, abs(x)) and p(r) == 0:
            return r
    return None


def _squarefree_roots(f: Polynomial) -> list[complex]:
    cs = [Fraction(c) for c in f.coeffs]
    if f.degree == 1:
        return [complex(-cs[0] / cs[1])]
    scale = max(abs(c) for c in cs)
    approx = np.roots([float(c / scale) for c in reversed(cs)])
    mp_coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(cs)]
    dmp = [c * (len(mp_coeffs) - 1 - i) for i, c in enumerate(mp_coeffs[:-1])]
    polished = []
    with mpmath.workdps(60):
        for z in approx:
            x = mpmath.mpc(z)
            for _ in range(50):
                fx = mpmath.polyval(mp_coeffs, x)
                dfx = mpmath.polyval(dmp, x)
                if dfx == 0:
                    break
                step = fx / dfx
                x -= step
                if abs(step) <= mpmath.mpf(10) ** -40 * max(1, abs(x)):
                    break
            polished.append(complex(x))
    return polished


def poly_roots(p: Polynomial) -> list[ComplexRoot]:
    """All complex roots with exact multiplicities, sorted by (real, imag).

    Rational roots that can be confirmed exactly carry ``exact``.
    """
    if p.degree < 1:
        raise ValueError("poly_roots needs degree >= 1")
    out = []
    for factor, mult in squarefree_decomposition(p):
        for z in _squarefree_roots(factor):
            exact = None
            if abs(z.imag) <= ROOT_TOL * max(1.0, abs(z)):
                exact = _try_rational(factor, z.real)
                z = complex(float(exact) if exact is not None else z.real, 0.0)
            out.append(ComplexRoot(z.real, z.imag, mult, exact))
    out.sort(key=lambda r: (round(r.real, 9), round(r.imag, 9)))
    return out
