"""Exact arithmetic in Q, Q(zeta_21) and prime fields F_p.

A CyclotomicNumber is stored as 12 integer numerators over one shared
positive denominator, always reduced modulo Phi_21 and gcd-normalized, so
equal field elements have identical tuples (hashable, safe to dedup on).

The ReductionMap realizes the ring map Z[zeta_21] -> F_p sending
zeta_21 to a chosen root r of Phi_21 mod p; the default (127, 25) is the
residue field at the prime (127, zeta_21 - 25).
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce as _reduce
from math import gcd

from .errors import BadDenominator, ZeroInverse

DEGREE = 12  # [Q(zeta_21) : Q]
ORDER = 21


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod_exact(num, den):
    """Quotient of integer polynomials, remainder must come out zero."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % lead != 0:
            raise ArithmeticError("inexact polynomial division")
        q[k] = c // lead
        if q[k]:
            for j, dj in enumerate(den):
                num[k + j] -= q[k] * dj
    if any(num):
        raise ArithmeticError("nonzero remainder in exact division")
    return q


def cyclotomic_polynomial(n: int) -> list[int]:
    """Coefficients (index = degree) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return [-1, 1]
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1  # x^n - 1
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    return _poly_divmod_exact(num, den)


PHI21 = cyclotomic_polynomial(21)
assert len(PHI21) == DEGREE + 1 and PHI21[-1] == 1

# zeta^k for k = 12..21 reduced mod Phi_21; products of two reduced
# elements reach degree 22, and zeta^21 = 1, zeta^22 = zeta.
_REDTAB: list[list[int]] = []


def _build_redtab():
    for k in range(DEGREE, 2 * DEGREE - 1):
        if k < ORDER:
            row = [0] * k + [1]
            # reduce by repeated subtraction of x^(k-12) * Phi_21
            for j in range(k, DEGREE - 1, -1):
                c = row[j]
                if c:
                    shift = j - DEGREE
                    for i, pi in enumerate(PHI21):
                        row[shift + i] -= c * pi
            _REDTAB.append(row[:DEGREE])
        else:
            # zeta^21 = 1, zeta^22 = zeta
            row = [0] * DEGREE
            row[k - ORDER] = 1
            _REDTAB.append(row)


_build_redtab()


def _reduce_int_poly(raw: list[int]) -> list[int]:
    """Reduce an integer polynomial in zeta of any degree mod Phi_21."""
    coeffs = list(raw)
    # first fold exponents >= 21 using zeta^21 = 1
    if len(coeffs) > ORDER:
        folded = [0] * ORDER
        for e, c in enumerate(coeffs):
            folded[e % ORDER] += c
        coeffs = folded
    out = list(coeffs[:DEGREE]) + [0] * max(0, DEGREE - len(coeffs))
    for e in range(DEGREE, len(coeffs)):
        c = coeffs[e]
        if c:
            tab = _REDTAB[e - DEGREE]
            for i in range(DEGREE):
                out[i] += c * tab[i]
    return out[:DEGREE]


class CyclotomicNumber:
    """Element of Q(zeta_21): sum c_i zeta^i, i < 12, over one denominator."""

    __slots__ = ("nums", "den")

    def __init__(self, nums, den=1, _canonical=False):
        if _canonical:
            self.nums = nums
            self.den = den
            return
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        nums = list(nums)
        if len(nums) > DEGREE:
            nums = _reduce_int_poly(nums)
        else:
            nums = nums + [0] * (DEGREE - len(nums))
        if den < 0:
            den = -den
            nums = [-c for c in nums]
        g = _reduce(gcd, nums, den)
        if g > 1:
            nums = [c // g for c in nums]
            den //= g
        self.nums = tuple(nums)
        self.den = den

    # -- constructors -------------------------------------------------
    @classmethod
    def from_int(cls, n: int) -> "CyclotomicNumber":
        return cls([n])

    @classmethod
    def from_fraction(cls, q: Fraction) -> "CyclotomicNumber":
        return cls([q.numerator], q.denominator)

    @classmethod
    def zeta_power(cls, k: int) -> "CyclotomicNumber":
        row = [0] * (k % ORDER) + [1]
        return cls(row)

    @classmethod
    def zero(cls) -> "CyclotomicNumber":
        return cls([0])

    @classmethod
    def one(cls) -> "CyclotomicNumber":
        return cls([1])

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.nums)

    def is_one(self) -> bool:
        return self.den == 1 and self.nums[0] == 1 and not any(self.nums[1:])

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        return Fraction(self.nums[0], self.den)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        a, b = self, other
        nums = [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)]
        return CyclotomicNumber(nums, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(
            tuple(-c for c in self.nums), self.den, _canonical=True
        )

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        a, b = self.nums, other.nums
        conv = [0] * (2 * DEGREE - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        return CyclotomicNumber(_reduce_int_poly(conv), self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        return cyc_inverse(self)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugation: zeta -> zeta^{-1} = zeta^20."""
        raw = [0] * ORDER
        for e, c in enumerate(self.nums):
            raw[(-e) % ORDER] += c
        return CyclotomicNumber(raw, self.den)

    # -- dunder plumbing -----------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicNumber.from_int(other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.nums == other.nums and self.den == other.den

    def __hash__(self):
        return hash((self.nums, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for e, c in enumerate(self.nums):
            if c:
                t = f"{c}" if e == 0 else (f"{c}*z^{e}" if e > 1 else f"{c}*z")
                terms.append(t)
        body = " + ".join(terms) if terms else "0"
        if self.den != 1:
            return f"({body})/{self.den}"
        return body

    # -- serialization ------------------------------------------------
    def to_strings(self) -> list[str]:
        """13-tuple: 12 numerators then the denominator, as decimal text."""
        return [str(c) for c in self.nums] + [str(self.den)]

    @classmethod
    def from_strings(cls, parts) -> "CyclotomicNumber":
        if len(parts) != DEGREE + 1:
            raise ValueError("expected 13 components")
        return cls([int(p) for p in parts[:DEGREE]], int(parts[DEGREE]))


def _coerce(x) -> CyclotomicNumber:
    if isinstance(x, CyclotomicNumber):
        return x
    if isinstance(x, int):
        return CyclotomicNumber.from_int(x)
    if isinstance(x, Fraction):
        return CyclotomicNumber.from_fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} into Q(zeta_21)")


def cyc_reduce(raw, denom: int = 1) -> CyclotomicNumber:
    """Canonical representative of an integer zeta-polynomial / denom."""
    if denom == 0:
        raise ZeroDivisionError("zero denominator")
    return CyclotomicNumber(list(raw), denom)


def cyc_inverse(a: CyclotomicNumber) -> CyclotomicNumber:
    """Inverse via extended Euclid against Phi_21 over Q."""
    if a.is_zero():
        raise ZeroInverse("cannot invert 0 in Q(zeta_21)")
    # work over Q[x] with Fractions; r0 = Phi_21, r1 = a's numerator poly
    r0 = [Fraction(c) for c in PHI21]
    r1 = [Fraction(c) for c in a.nums]
    while r1 and r1[-1] == 0:
        r1.pop()
    s0, s1 = [], [Fraction(1)]  # coefficients of a-poly in the combination
    while True:
        # divide r0 by r1
        q = [Fraction(0)] * max(0, len(r0) - len(r1) + 1)
        rem = list(r0)
        for k in range(len(q) - 1, -1, -1):
            c = rem[k + len(r1) - 1] / r1[-1]
            q[k] = c
            if c:
                for j, dj in enumerate(r1):
                    rem[k + j] -= c * dj
        while rem and rem[-1] == 0:
            rem.pop()
        # s_new = s0 - q * s1
        qs1 = [Fraction(0)] * (len(q) + len(s1) - 1) if q and s1 else []
        for i, qi in enumerate(q):
            if qi:
                for j, sj in enumerate(s1):
                    qs1[i + j] += qi * sj
        s_new = [
            (s0[i] if i < len(s0) else Fraction(0))
            - (qs1[i] if i < len(qs1) else Fraction(0))
            for i in range(max(len(s0), len(qs1)))
        ]
        while s_new and s_new[-1] == 0:
            s_new.pop()
        if not rem:
            # r1 is the gcd, a nonzero constant (Phi_21 irreducible over Q)
            if len(r1) != 1:
                raise ArithmeticError("input not invertible mod Phi_21")
            c = r1[0]
            inv_poly = [si / c for si in s1]
            den = 1
            for f in inv_poly:
                den = den * f.denominator // gcd(den, f.denominator)
            # inv_poly inverts the numerator polynomial of a, so the
            # inverse of a = nums/a.den is a.den * inv_poly
            nums = [int(f * den) * a.den for f in inv_poly]
            return CyclotomicNumber(nums, den)
        r0, r1 = r1, rem
        s0, s1 = s1, s_new


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeFieldElement:
    """Residue in [0, p) for a validated prime p."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int = 127, _checked=False):
        if not _checked and not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.value = value % p

    def _lift(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ValueError("mixed prime fields")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        v = self._lift(other)
        if v is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.value + v, self.p, _checked=True)

    __radd__ = __add__

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p, _checked=True)

    def __sub__(self, other):
        v = self._lift(other)
        if v is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.value - v, self.p, _checked=True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        v = self._lift(other)
        if v is NotImplemented:
            return NotImplemented
        return PrimeFieldElement(self.value * v, self.p, _checked=True)

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise ZeroInverse(f"cannot invert 0 in F_{self.p}")
        return PrimeFieldElement(
            pow(self.value, self.p - 2, self.p), self.p, _checked=True
        )

    def __truediv__(self, other):
        if isinstance(other, int):
            other = PrimeFieldElement(other, self.p, _checked=True)
        return self * other.inverse()

    def is_zero(self):
        return self.value == 0

    def is_one(self):
        return self.value == 1

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.value == other.value and self.p == other.p
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"F{self.p}({self.value})"


def eval_int_poly_mod(coeffs, x: int, p: int) -> int:
    """Horner evaluation of an integer polynomial at x over F_p."""
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


class ReductionMap:
    """Residue reduction Q(zeta_21) -> F_p along zeta |-> r.

    Requires Phi_21(r) == 0 mod p, which the constructor checks.  The
    default (127, 25) matches the prime ideal (127, zeta_21 - 25).
    """

    def __init__(self, p: int = 127, root: int = 25):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if eval_int_poly_mod(PHI21, root, p) != 0:
            raise ValueError(f"Phi_21({root}) != 0 mod {p}")
        self.p = p
        self.root = root % p
        # cache zeta powers 0..11 mod p
        self._powers = [pow(self.root, k, p) for k in range(DEGREE)]

    def reduce(self, a: CyclotomicNumber) -> PrimeFieldElement:
        if a.den % self.p == 0:
            raise BadDenominator(
                f"denominator {a.den} divisible by p={self.p}"
            )
        num = sum(c * w for c, w in zip(a.nums, self._powers)) % self.p
        dinv = pow(a.den % self.p, self.p - 2, self.p)
        return PrimeFieldElement(num * dinv, self.p, _checked=True)

    def reduce_int(self, a: CyclotomicNumber) -> int:
        return self.reduce(a).value

    def __repr__(self):
        return f"ReductionMap(p={self.p}, root={self.root})"


def residue_reduce(a: CyclotomicNumber, m: ReductionMap) -> PrimeFieldElement:
    return m.reduce(a)


def find_reduction_primes(count: int = 2, start: int = 2, skip=()):
    """Search primes where Phi_21 splits completely (p = 1 mod 21), paired
    with their smallest root.  Used to cross-check a second prime."""
    found = []
    p = max(start, 2)
    while len(found) < count:
        if p % 21 == 1 and p not in skip and is_prime(p):
            root = next(
                r for r in range(2, p) if eval_int_poly_mod(PHI21, r, p) == 0
            )
            found.append((p, root))
        p += 1
    return found


# xi_3 = zeta^7 is the cube root of unity used in the generator matrices;
# i*sqrt(7) is the quadratic Gauss sum in zeta_7 = zeta_21^3.
XI3 = CyclotomicNumber.zeta_power(7)


def _gauss_sum_sqrt_minus7() -> CyclotomicNumber:
    raw = [0] * ORDER
    for k in (1, 2, 4):  # quadratic residues mod 7
        raw[3 * k] += 1
    for k in (3, 5, 6):
        raw[3 * k] -= 1
    return CyclotomicNumber(raw)


ISQRT7 = _gauss_sum_sqrt_minus7()
assert ISQRT7 * ISQRT7 == CyclotomicNumber.from_int(-7)
