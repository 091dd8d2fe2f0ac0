"""Small finite fields F_{p^m} with exact arithmetic.

Elements are encoded as integers ``sum(c_i * p**i)`` where ``c_0 .. c_{m-1}``
are the coefficients of the residue polynomial modulo the defining modulus.
All operations accept python ints or integer numpy arrays.

:class:`FieldTable` keeps log/antilog tables and is limited to ``p**m <=
2**20``.  :class:`PolyField` uses the same encoding and modulus choice but
multiplies polynomials directly, so it can serve the occasional larger
ambient field needed by the oracles.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from torusinv import _kernels

TABLE_LIMIT = 2**20
POLY_LIMIT = 2**40


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# dense polynomials over F_p, coefficient lists lowest degree first


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_divmod(a, b, p):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a = _trim(a)
    return quot, a


def poly_mulmod(a, b, f, p):
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ac in enumerate(a):
        if ac:
            for j, bc in enumerate(b):
                prod[i + j] = (prod[i + j] + ac * bc) % p
    return poly_divmod(prod, f, p)[1]


def poly_powmod(a, e, f, p):
    result = [1]
    base = poly_divmod(a, f, p)[1]
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f, p)
        base = poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    return a


def monic_polys(p, degree):
    for lower in itertools.product(range(p), repeat=degree):
        yield list(lower) + [1]


def is_irreducible_trial(f, p) -> bool:
    """Irreducibility by trial division by every monic polynomial of degree <= deg/2."""
    deg = len(_trim(f)) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in monic_polys(p, d):
            if not poly_divmod(f, g, p)[1]:
                return False
    return True


def is_irreducible_rabin(f, p) -> bool:
    deg = len(_trim(f)) - 1
    if deg < 1:
        return False
    x = [0, 1]
    x_mod = poly_divmod(x, f, p)[1]
    if _trim([(c - xc) % p for c, xc in itertools.zip_longest(poly_powmod(x, p**deg, f, p), x_mod, fillvalue=0)]):
        return False
    for r in prime_factors(deg):
        h = poly_powmod(x, p ** (deg // r), f, p)
        diff = [(c - xc) % p for c, xc in itertools.zip_longest(h, x, fillvalue=0)]
        if len(poly_gcd(f, diff, p)) > 1:
            return False
    return True


def smallest_irreducible(p, m, test=is_irreducible_trial):
    """Monic irreducible of degree ``m`` with the smallest integer code of its lower coefficients."""
    for code in range(p**m):
        lower = [(code // p**i) % p for i in range(m)]
        f = lower + [1]
        if test(f, p):
            return tuple(f)
    raise ArithmeticError(f"no irreducible polynomial of degree {m} over F_{p}")  # pragma: no cover


def _encode(coeffs, p):
    return sum(int(c) * p**i for i, c in enumerate(coeffs))


def _decode(code, p, m):
    return [(code // p**i) % p for i in range(m)]


class _FieldBase:
    p: int
    m: int
    q: int
    modulus: tuple

    def digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        return np.stack([(a // self.p**i) % self.p for i in range(self.m)], axis=-1)

    def from_digits(self, d):
        weights = np.array([self.p**i for i in range(self.m)], dtype=np.int64)
        return (np.asarray(d, dtype=np.int64) % self.p) @ weights

    def add(self, a, b):
        scalar = np.isscalar(a) and np.isscalar(b)
        if self.p == 2:
            out = np.bitwise_xor(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        else:
            out = self.from_digits(self.digits(a) + self.digits(b))
        return int(out) if scalar else out

    def neg(self, a):
        scalar = np.isscalar(a)
        out = self.from_digits(-self.digits(a))
        return int(out) if scalar else out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, e: int):
        scalar = np.isscalar(a)
        if e < 0:
            a = self.inv(a)
            e = -e
        result = np.ones_like(np.asarray(a, dtype=np.int64))
        base = np.asarray(a, dtype=np.int64)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return int(result) if scalar else result

    def frobenius(self, a):
        return self.pow(a, self.p)

    def in_subfield(self, a, sub_q: int):
        """True where ``a`` lies in the subfield of order ``sub_q`` (``a**sub_q == a``)."""
        if (self.q - 1) % (sub_q - 1) or not _is_power_of(sub_q, self.p):
            raise ValueError(f"F_{sub_q} is not a subfield of F_{self.q}")
        return np.asarray(self.pow(a, sub_q)) == np.asarray(a)

    def element_of_order(self, d: int) -> int:
        if (self.q - 1) % d:
            raise ValueError(f"{d} does not divide {self.q - 1}")
        return self.pow(self.generator, (self.q - 1) // d)

    def subgroup(self, d: int):
        """``h^0 .. h^(d-1)`` for ``h = generator^((q-1)/d)``."""
        h = self.element_of_order(d)
        return _kernels.power_sequence(self._mult_matrix(h), self.p, d)

    def _mult_matrix(self, a):
        cols = []
        ac = _decode(int(a), self.p, self.m)
        for j in range(self.m):
            xj = [0] * j + [1]
            col = poly_mulmod(ac, xj, list(self.modulus), self.p)
            cols.append(col + [0] * (self.m - len(col)))
        return np.array(cols, dtype=np.int64).T

    def order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.q - 1
        for r in prime_factors(self.q - 1):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n


def _is_power_of(x, p):
    while x > 1 and x % p == 0:
        x //= p
    return x == 1


def _smallest_primitive(p, m, f):
    q = p**m
    factors = prime_factors(q - 1)
    for code in range(1, q):
        g = _decode(code, p, m)
        if all(_trim(poly_powmod(g, (q - 1) // r, list(f), p)) != [1] for r in factors):
            return code
    raise ArithmeticError("no primitive element found")  # pragma: no cover


class FieldTable(_FieldBase):
    """F_{p^m} with log/antilog tables relative to the smallest primitive element."""

    def __init__(self, p: int, m: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if m < 1:
            raise ValueError("degree must be positive")
        if p**m > TABLE_LIMIT:
            raise ValueError(f"field size {p}^{m} exceeds the table guard {TABLE_LIMIT}")
        self.p, self.m, self.q = p, m, p**m
        self.modulus = smallest_irreducible(p, m)
        self.generator = _smallest_primitive(p, m, self.modulus)
        self.antilog = _kernels.power_sequence(self._mult_matrix(self.generator), p, self.q - 1)
        self.log = np.full(self.q, -1, dtype=np.int64)
        self.log[self.antilog] = np.arange(self.q - 1, dtype=np.int64)
        if np.count_nonzero(self.log >= 0) != self.q - 1 or self.log[0] != -1:
            raise ArithmeticError("generator does not have order q-1")  # pragma: no cover
        self.antilog.setflags(write=False)
        self.log.setflags(write=False)

    def __repr__(self):
        return f"FieldTable(p={self.p}, m={self.m}, modulus={self.modulus}, generator={self.generator})"

    def mul(self, a, b):
        scalar = np.isscalar(a) and np.isscalar(b)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self.log[a], self.log[b]
        out = np.where((la < 0) | (lb < 0), 0, self.antilog[(la + lb) % (self.q - 1)])
        return int(out) if scalar else out

    def inv(self, a):
        scalar = np.isscalar(a)
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        out = self.antilog[(-self.log[a]) % (self.q - 1)]
        return int(out) if scalar else out

    def pow(self, a, e: int):
        scalar = np.isscalar(a)
        a = np.asarray(a, dtype=np.int64)
        la = self.log[a]
        if e < 0 and np.any(la < 0):
            raise ZeroDivisionError("negative power of zero")
        if e == 0:
            out = np.ones_like(a)
        else:
            out = np.where(la < 0, 0, self.antilog[(la * (e % (self.q - 1))) % (self.q - 1)])
        return int(out) if scalar else out

    def subgroup(self, d: int):
        if (self.q - 1) % d:
            raise ValueError(f"{d} does not divide {self.q - 1}")
        return self.antilog[:: (self.q - 1) // d].copy()


class PolyField(_FieldBase):
    """F_{p^m} without tables; same encoding, modulus and generator rule as :class:`FieldTable`."""

    def __init__(self, p: int, m: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p**m > POLY_LIMIT:
            raise ValueError(f"field size {p}^{m} exceeds {POLY_LIMIT}")
        self.p, self.m, self.q = p, m, p**m
        self.modulus = smallest_irreducible(p, m, test=is_irreducible_rabin)
        self.generator = _smallest_primitive(p, m, self.modulus)
        f = np.array(self.modulus, dtype=np.int64)
        self._reduce = (-f[:m]) % p

    def __repr__(self):
        return f"PolyField(p={self.p}, m={self.m}, modulus={self.modulus}, generator={self.generator})"

    def mul(self, a, b):
        scalar = np.isscalar(a) and np.isscalar(b)
        prod = _kernels.poly_mul(self.digits(a), self.digits(b), self._reduce, self.p)
        out = self.from_digits(prod)
        return int(out) if scalar else out

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.q - 2)


@lru_cache(maxsize=None)
def build_field(p: int, m: int) -> FieldTable:
    return FieldTable(p, m)


@lru_cache(maxsize=None)
def ambient_field(p: int, m: int):
    """Table field when it fits under the guard, otherwise a :class:`PolyField`."""
    if p**m <= TABLE_LIMIT:
        return build_field(p, m)
    return PolyField(p, m)
