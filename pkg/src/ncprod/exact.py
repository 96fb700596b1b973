"""Exact scalars and dense univariate polynomials over Q and F_p.

Rationals are :class:`fractions.Fraction`.  Polynomials are stored densely,
lowest degree first, with no trailing zeros (the zero polynomial is empty).

The ``dense_*`` helpers at the bottom work on plain coefficient lists over
any field whose elements support ``+ - * /`` and compare equal to ``0``;
the number field, finite field and algebra modules reuse them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Iterable, Sequence

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce an int, Fraction, string or ``[num, den]`` pair."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (list, tuple)):
        num, den = x
        return Fraction(int(num), int(den))
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot read {x!r} as a rational")


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


# ---------------------------------------------------------------------------
# Polynomials over Q
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UniPoly:
    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", tuple(_trim([as_rational(c) for c in coeffs])))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return UniPoly(dense_mul(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = UniPoly([1])
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other):
        q, r = dense_divmod(list(self.coeffs), list(self._coerce(other).coeffs))
        return UniPoly(q), UniPoly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        return dense_eval(self.coeffs, x)

    def derivative(self) -> "UniPoly":
        return UniPoly([k * self.coeffs[k] for k in range(1, len(self.coeffs))])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return UniPoly([c / self.lc for c in self.coeffs])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return poly_to_str(self.coeffs)


def poly_to_str(coeffs: Sequence, var: str = "x") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and c == 1:
            terms.append(f"+{mono}")
        elif mono and c == -1:
            terms.append(f"-{mono}")
        else:
            s = str(c)
            if not s.startswith("-"):
                s = "+" + s
            terms.append(s + ("*" + mono if mono else ""))
    if not terms:
        return "0"
    out = "".join(terms)
    return out[1:] if out.startswith("+") else out


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd over Q (zero only if both inputs are zero)."""
    return UniPoly(dense_gcd(list(f.coeffs), list(g.coeffs)))


def poly_resultant(f: UniPoly, g: UniPoly) -> Fraction:
    return dense_resultant(list(f.coeffs), list(g.coeffs))


def poly_discriminant(f: UniPoly) -> Fraction:
    """``(-1)^(n(n-1)/2) res(f, f') / lc(f)``."""
    if f.degree < 1:
        raise ValueError("discriminant of a constant polynomial")
    return dense_discriminant(list(f.coeffs))


# ---------------------------------------------------------------------------
# Polynomials over F_p
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModPoly:
    p: int
    coeffs: tuple[int, ...]

    def __init__(self, p: int, coeffs: Iterable = ()):
        object.__setattr__(self, "p", p)
        red = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator % p == 0:
                    raise ValueError(f"coefficient {c} is not {p}-integral")
                c = c.numerator * pow(c.denominator, -1, p)
            red.append(int(c) % p)
        object.__setattr__(self, "coeffs", tuple(_trim(red)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "ModPoly"):
        n = max(len(self.coeffs), len(other.coeffs))
        return ModPoly(self.p, [self[k] + other[k] for k in range(n)])

    def __sub__(self, other: "ModPoly"):
        n = max(len(self.coeffs), len(other.coeffs))
        return ModPoly(self.p, [self[k] - other[k] for k in range(n)])

    def __mul__(self, other: "ModPoly"):
        return ModPoly(self.p, _modp_mul(self.coeffs, other.coeffs, self.p))

    def __divmod__(self, other: "ModPoly"):
        q, r = _modp_divmod(self.coeffs, other.coeffs, self.p)
        return ModPoly(self.p, q), ModPoly(self.p, r)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self) -> "ModPoly":
        if self.is_zero():
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return ModPoly(self.p, [c * inv for c in self.coeffs])

    def derivative(self) -> "ModPoly":
        return ModPoly(self.p, [k * self.coeffs[k] for k in range(1, len(self.coeffs))])

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __str__(self) -> str:
        return poly_to_str(self.coeffs)


def _modp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [c % p for c in out]


def _modp_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(r) - db, 0)
    while len(r) > db and any(r):
        _trim(r)
        if len(r) <= db:
            break
        c = r[-1] * inv % p
        shift = len(r) - 1 - db
        q[shift] = c
        for k, bk in enumerate(b):
            r[shift + k] = (r[shift + k] - c * bk) % p
        _trim(r)
    return _trim(q), _trim([c % p for c in r])


def modp_gcd(f: ModPoly, g: ModPoly) -> ModPoly:
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def modp_powmod(base: ModPoly, e: int, m: ModPoly) -> ModPoly:
    p = base.p
    result = ModPoly(p, [1])
    base = base % m
    while e:
        if e & 1:
            result = (result * base) % m
        base = (base * base) % m
        e >>= 1
    return result


def _pth_root(f: ModPoly) -> ModPoly:
    # f has only exponents divisible by p; over F_p each coefficient is its own p-th root
    p = f.p
    return ModPoly(p, [f.coeffs[k] for k in range(0, len(f.coeffs), p)])


def _squarefree_parts(f: ModPoly) -> list[tuple[ModPoly, int]]:
    """Yun-style squarefree decomposition over F_p: pairs (g, multiplicity)."""
    p = f.p
    out: list[tuple[ModPoly, int]] = []
    f = f.monic()
    if f.degree < 1:
        return out
    df = f.derivative()
    if df.is_zero():
        return [(g, m * p) for g, m in _squarefree_parts(_pth_root(f))]
    c = modp_gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = modp_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        out.extend((g, m * p) for g, m in _squarefree_parts(_pth_root(c)))
    return out


def _distinct_degree(f: ModPoly) -> list[int]:
    """Degrees of the irreducible factors of a monic squarefree f."""
    p = f.p
    x = ModPoly(p, [0, 1])
    degrees: list[int] = []
    h = x
    d = 0
    rest = f
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = modp_powmod(h, p, rest)
        g = modp_gcd(rest, h - x)
        if g.degree > 0:
            degrees.extend([d] * (g.degree // d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        degrees.append(rest.degree)
    return degrees


def factor_degrees_mod_p(f, p: int) -> list[int]:
    """Sorted degrees (with multiplicity) of the irreducible factors of f mod p."""
    if not isinstance(f, ModPoly):
        f = UniPoly(f) if not isinstance(f, UniPoly) else f
        if f.degree < 1:
            raise ValueError("constant polynomial")
        if f.lc.denominator % p == 0 or f.lc.numerator % p == 0:
            raise ValueError(f"leading coefficient vanishes mod {p}")
        fp = ModPoly(p, f.coeffs)
    else:
        fp = f
    degrees: list[int] = []
    for part, mult in _squarefree_parts(fp):
        for d in _distinct_degree(part):
            degrees.extend([d] * mult)
    return sorted(degrees)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def prime_power_base(q: int) -> int | None:
    """The prime p with q = p^k, or None."""
    for p in range(2, q + 1):
        if q % p == 0:
            while q % p == 0:
                q //= p
            return p if q == 1 else None
    return None


def _cauchy_bound(coeffs: Sequence[Fraction]) -> Fraction:
    lc = abs(coeffs[-1])
    return 1 + max(abs(c) for c in coeffs[:-1]) / lc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out + [-d for d in out]


def irreducibility_certificate(f: UniPoly, primes: Iterable[int] = range(2, 60)) -> str:
    """Prove a monic integral f irreducible over Q and say how.

    First looks for a prime with one irreducible factor mod p.  Otherwise,
    for degree <= 4, rules out every monic integral factor of degree
    <= deg/2 by bounded enumeration (Gauss's lemma and the Cauchy root bound).
    Raises ValueError when f is reducible or no certificate is found.
    """
    if not (f.lc == 1 and f.is_integral()):
        raise ValueError("certificate needs a monic integral polynomial")
    n = f.degree
    if n == 1:
        return "linear"
    for p in primes:
        if is_prime(p) and factor_degrees_mod_p(f, p) == [n]:
            return f"irreducible mod {p}"
    if n > 4:
        raise ValueError("no single-prime certificate found")
    bound = int(_cauchy_bound(f.coeffs)) + 1
    c0 = int(f.coeffs[0])
    if c0 == 0:
        raise ValueError("f has the root 0")
    for r in _divisors(c0):
        if f(Fraction(r)) == 0:
            raise ValueError(f"f has the rational root {r}")
    if n == 4:
        # monic quadratic factors x^2 + a x + b with b | f(0), |a| <= 2R
        for b in _divisors(c0):
            for a in range(-2 * bound, 2 * bound + 1):
                if (f % UniPoly([b, a, 1])).is_zero():
                    raise ValueError(f"f has the factor x^2+{a}x+{b}")
    return "no rational root" + (" and no quadratic factor" if n == 4 else "")


# ---------------------------------------------------------------------------
# Dense helpers over an arbitrary field
# ---------------------------------------------------------------------------


def dense_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [a[0] * 0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def dense_divmod(a: list, b: list) -> tuple[list, list]:
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = _trim(list(a))
    db = len(b) - 1
    if len(r) <= db:
        return [], r
    q = [b[0] * 0] * (len(r) - db)
    lead = b[-1]
    while len(r) > db:
        c = r[-1] / lead
        shift = len(r) - 1 - db
        q[shift] = c
        for k, bk in enumerate(b):
            r[shift + k] = r[shift + k] - c * bk
        r.pop()
        _trim(r)
    return _trim(q), r


def dense_eval(coeffs: Sequence, x):
    acc = x * 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def dense_gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, dense_divmod(a, b)[1]
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def dense_xgcd(a: list, b: list) -> tuple[list, list, list]:
    """(g, s, t) with s*a + t*b = g, g monic."""
    one = (a or b)[-1] ** 0 if (a or b) else Fraction(1)
    r0, r1 = _trim(list(a)), _trim(list(b))
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        q, r = dense_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _dense_sub(s0, dense_mul(q, s1))
        t0, t1 = t1, _dense_sub(t0, dense_mul(q, t1))
    lead = r0[-1]
    return [c / lead for c in r0], [c / lead for c in s0], [c / lead for c in t0]


def _dense_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    zero = (a or b)[0] * 0 if (a or b) else 0
    return _trim([(a[k] if k < len(a) else zero) - (b[k] if k < len(b) else zero) for k in range(n)])


def dense_resultant(a: list, b: list):
    """Resultant by the Euclidean algorithm over a field."""
    a, b = _trim(list(a)), _trim(list(b))
    if not a or not b:
        return Fraction(0)
    res = a[-1] ** 0
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * b[-1] ** da
        r = dense_divmod(a, b)[1]
        if not r:
            return res * 0
        dr = len(r) - 1
        if (da * db) % 2:
            res = -res
        res = res * b[-1] ** (da - dr)
        a, b = b, r


def dense_discriminant(f: list):
    n = len(f) - 1
    df = _trim([k * f[k] for k in range(1, len(f))])
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * dense_resultant(f, df) / f[-1]


def solve_linear(matrix: list[list], rhs: list) -> list:
    """Solve ``matrix @ x = rhs`` exactly over a field by Gauss-Jordan.

    Raises ZeroDivisionError if the matrix is singular.
    """
    n = len(matrix)
    rows = [list(row) + [rhs[k]] for k, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = 1 / rows[col][col] if not hasattr(rows[col][col], "inverse") else rows[col][col].inverse()
        rows[col] = [v * inv for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                c = rows[r][col]
                rows[r] = [v - c * w for v, w in zip(rows[r], rows[col])]
    return [rows[r][n] for r in range(n)]


def determinant(matrix: list[list[Fraction]]) -> Fraction:
    n = len(matrix)
    m = [[as_rational(v) for v in row] for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                c = m[r][col] / m[col][col]
                m[r] = [v - c * w for v, w in zip(m[r], m[col])]
    return det


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
