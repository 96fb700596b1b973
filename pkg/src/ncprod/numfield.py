"""Number fields Q[x]/(f), relative extensions K[y]/(g), and their automorphisms.

Absolute elements keep an integer numerator vector over a common positive
denominator; relative elements keep a tuple of base-field elements.  Both
classes support the arithmetic operators and mix freely with ints and
Fractions.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .exact import (
    UniPoly,
    as_rational,
    dense_discriminant,
    dense_eval,
    dense_xgcd,
    determinant,
    irreducibility_certificate,
    poly_to_str,
    solve_linear,
)


class FieldElement:
    """Operator plumbing shared by NFElem and RelElem."""

    field: "NumberField | RelativeExtension"

    def __radd__(self, other):
        return self + other

    def _own(self, other):
        """other coerced into this field, or None for foreign types (so Python tries the reflected op)."""
        if isinstance(other, FieldElement) and other.field is self.field:
            return other
        try:
            return self.field(other)
        except (TypeError, ValueError):
            return None

    def __sub__(self, other):
        o = self._own(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._own(other)
        return NotImplemented if o is None else o + (-self)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        o = self._own(other)
        return NotImplemented if o is None else self * o.inverse()

    def __rtruediv__(self, other):
        o = self._own(other)
        return NotImplemented if o is None else o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        return not self.is_zero()


# ---------------------------------------------------------------------------
# Absolute number fields
# ---------------------------------------------------------------------------


class NumberField:
    """K = Q[x]/(f) for a monic integral f with a recorded irreducibility certificate."""

    def __init__(self, min_poly, label: str = "K", gen_name: str = "a", certificate: str | None = None):
        f = min_poly if isinstance(min_poly, UniPoly) else UniPoly(min_poly)
        if f.degree < 1 or f.lc != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 1")
        if not f.is_integral():
            raise ValueError("minimal polynomial must have integer coefficients")
        self.min_poly = f
        self.label = label
        self.gen_name = gen_name
        self.degree = f.degree
        self._f = [int(c) for c in f.coeffs]
        self.certificate = certificate or irreducibility_certificate(f)
        self.tags: dict[str, "SubfieldElement"] = {}

    def __repr__(self):
        return f"NumberField({self.label}: {poly_to_str(self.min_poly.coeffs, self.gen_name)})"

    def __call__(self, x) -> "NFElem":
        if isinstance(x, NFElem):
            if x.field is not self:
                raise ValueError("element of another field")
            return x
        if isinstance(x, (list, tuple)):
            return NFElem.from_coeffs(self, x)
        return NFElem.from_coeffs(self, [x])

    def zero(self) -> "NFElem":
        return NFElem(self, (0,) * self.degree, 1)

    def one(self) -> "NFElem":
        return self(1)

    def gen(self) -> "NFElem":
        if self.degree == 1:
            return self(-self._f[0])
        return self([0, 1])

    def generators(self) -> list["NFElem"]:
        return [self.gen()]

    def basis(self) -> list["NFElem"]:
        return [self([0] * k + [1]) for k in range(self.degree)]

    def identity(self) -> "NFAutomorphism":
        return NFAutomorphism(self, self.gen())

    def inner(self, c) -> "NFAutomorphism":
        return self.identity()

    def add_tag(self, name: str, value, square=None) -> "SubfieldElement":
        tag = SubfieldElement(self, self(value), name, square)
        self.tags[name] = tag
        return tag

    def tag(self, name: str) -> "NFElem":
        return self.tags[name].value

    def _reduce(self, prod: list[int]) -> list[int]:
        f, n = self._f, self.degree
        for k in range(len(prod) - 1, n - 1, -1):
            c = prod[k]
            if c:
                for i in range(n):
                    prod[k - n + i] -= c * f[i]
            prod[k] = 0
        return prod[:n] + [0] * (n - len(prod))


class NFElem(FieldElement):
    __slots__ = ("field", "num", "den")

    def __init__(self, field: NumberField, num: tuple[int, ...], den: int = 1):
        g = den
        for c in num:
            g = gcd(g, c)
            if g == 1:
                break
        if den < 0:
            g = -g
        if g not in (0, 1):
            num = tuple(c // g for c in num)
            den //= g
        self.field = field
        self.num = tuple(num)
        self.den = den

    @classmethod
    def from_coeffs(cls, field: NumberField, coeffs: Sequence) -> "NFElem":
        cs = [as_rational(c) for c in coeffs]
        if len(cs) > field.degree:
            poly = [0] * len(cs)
            den = 1
            for c in cs:
                den = den * c.denominator // gcd(den, c.denominator)
            poly = [int(c * den) for c in cs]
            return cls(field, tuple(field._reduce(poly)), den)
        cs += [Fraction(0)] * (field.degree - len(cs))
        den = 1
        for c in cs:
            den = den * c.denominator // gcd(den, c.denominator)
        return cls(field, tuple(int(c * den) for c in cs), den)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other):
        if isinstance(other, NFElem):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.num, self.den))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        elif not isinstance(other, NFElem):
            return NotImplemented
        if other.field is not self.field:
            raise ValueError("mixed fields")
        d1, d2 = self.den, other.den
        return NFElem(self.field, tuple(a * d2 + b * d1 for a, b in zip(self.num, other.num)), d1 * d2)

    def __neg__(self):
        return NFElem(self.field, tuple(-c for c in self.num), self.den)

    def __mul__(self, other):
        if isinstance(other, int):
            return NFElem(self.field, tuple(c * other for c in self.num), self.den)
        if isinstance(other, Fraction):
            return NFElem(self.field, tuple(c * other.numerator for c in self.num), self.den * other.denominator)
        if not isinstance(other, NFElem):
            return NotImplemented
        if other.field is not self.field:
            raise ValueError("mixed fields")
        a, b = self.num, other.num
        prod = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return NFElem(self.field, tuple(self.field._reduce(prod)), self.den * other.den)

    def inverse(self) -> "NFElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = dense_xgcd(list(self.coeffs), list(self.field.min_poly.coeffs))
        if len(g) != 1:
            raise ZeroDivisionError("element is a zero divisor; minimal polynomial reducible")
        return self.field(s)

    def mult_matrix(self) -> list[list[Fraction]]:
        """Matrix of y -> self*y on the power basis (columns are images)."""
        cols = [(self * b).coeffs for b in self.field.basis()]
        n = self.field.degree
        return [[cols[c][r] for c in range(n)] for r in range(n)]

    def __repr__(self):
        return f"NFElem({self.field.label}: {self})"

    def __str__(self):
        return poly_to_str(self.coeffs, self.field.gen_name)


def nf_norm(x: NFElem) -> Fraction:
    return determinant(x.mult_matrix())


def nf_trace(x: NFElem) -> Fraction:
    m = x.mult_matrix()
    return sum((m[k][k] for k in range(len(m))), Fraction(0))


class SubfieldElement:
    """A named element whose square is a known rational, e.g. sqrt3 in Q(sqrt3, sqrt-7)."""

    def __init__(self, host, value, tag: str, square=None):
        if square is None:
            m = re.fullmatch(r"sqrt(-?\d+)", tag)
            if not m:
                raise ValueError(f"cannot infer the square of tag {tag!r}")
            square = int(m.group(1))
        square = as_rational(square)
        if value * value != square:
            raise ValueError(f"tag {tag}: value squared is not {square}")
        self.host = host
        self.value = value
        self.tag = tag
        self.square = square


class NFAutomorphism:
    """Field automorphism given by the image of the generator (verified)."""

    def __init__(self, field: NumberField, gen_image):
        gen_image = field(gen_image)
        if dense_eval(field.min_poly.coeffs, gen_image) != 0:
            raise ValueError("generator image is not a root of the minimal polynomial")
        self.field = field
        self.gen_image = gen_image
        n = field.degree
        powers = [field.one()]
        for _ in range(1, n):
            powers.append(powers[-1] * gen_image)
        # column k = image of x^k, stored as integer matrix over a common denominator
        den = 1
        for pw in powers:
            den = den * pw.den // gcd(den, pw.den)
        self._den = den
        self._cols = [tuple(c * (den // pw.den) for c in pw.num) for pw in powers]

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            return self.field(x)
        if x.field is not self.field:
            raise ValueError("element of another field")
        n = self.field.degree
        out = [0] * n
        for k, c in enumerate(x.num):
            if c:
                col = self._cols[k]
                for r in range(n):
                    out[r] += c * col[r]
        return NFElem(self.field, tuple(out), x.den * self._den)

    def compose(self, other: "NFAutomorphism") -> "NFAutomorphism":
        """self o other."""
        return NFAutomorphism(self.field, self(other.gen_image))

    __mul__ = compose

    def __pow__(self, e: int):
        out = self.field.identity()
        for _ in range(e):
            out = out.compose(self)
        return out

    def is_identity(self) -> bool:
        return self.gen_image == self.field.gen()

    def __eq__(self, other):
        if not isinstance(other, NFAutomorphism):
            return NotImplemented
        return self.field is other.field and self.gen_image == other.gen_image

    def __hash__(self):
        return hash(self.gen_image)

    def inverse(self) -> "NFAutomorphism":
        return self ** (aut_order(self) - 1)

    def __repr__(self):
        return f"NFAutomorphism({self.field.gen_name} -> {self.gen_image})"


def apply_aut(sigma, x):
    return sigma(x)


def compose_aut(sigma, tau):
    return sigma.compose(tau)


def aut_order(sigma, limit: int = 64) -> int:
    """Least k >= 1 with sigma^k = id."""
    g = sigma
    for k in range(1, limit + 1):
        if g.is_identity():
            return k
        g = g.compose(sigma)
    raise ValueError("automorphism order exceeds limit")


def relative_norm(x, gal: Sequence):
    """Product of sigma(x) over gal; checked to be fixed by every sigma in gal."""
    out = x.field.one()
    for s in gal:
        out = out * s(x)
    for s in gal:
        if s(out) != out:
            raise ValueError("relative norm is not fixed by the supplied group")
    return out


# ---------------------------------------------------------------------------
# Relative extensions L = K[y]/(g)
# ---------------------------------------------------------------------------


class RelativeExtension:
    """A free rank-m module over K with multiplication reduced by a monic g over K.

    Irreducibility of g is not checked here; pass a certificate string
    obtained from a residue-field root test (RelativeResidueMap.certifies_irreducible).
    """

    def __init__(self, base, g: Sequence, label: str = "L", gen_name: str = "b", certificate: str | None = None):
        g = [base(c) for c in g]
        while g and g[-1] == 0:
            g.pop()
        if len(g) < 2 or g[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree >= 1")
        self.base = base
        self.g = tuple(g)
        self.degree = len(g) - 1
        self.label = label
        self.gen_name = gen_name
        self.certificate = certificate
        self.tags: dict[str, SubfieldElement] = {}

    def __repr__(self):
        return f"RelativeExtension({self.label} over {self.base.label}, degree {self.degree})"

    def __call__(self, x) -> "RelElem":
        if isinstance(x, RelElem):
            if x.field is self:
                return x
            raise ValueError("element of another field")
        if isinstance(x, (list, tuple)):
            cs = [self.base(c) for c in x]
            if len(cs) > self.degree:
                cs = self._reduce(cs)
            return RelElem(self, tuple(cs) + (self.base.zero(),) * (self.degree - len(cs)))
        return RelElem(self, (self.base(x),) + (self.base.zero(),) * (self.degree - 1))

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gen(self):
        return self([0, 1]) if self.degree > 1 else self(-self.g[0])

    def generators(self) -> list:
        return [self.embed(b) for b in self.base.generators()] + [self.gen()]

    def embed(self, x):
        return self(x)

    def basis(self) -> list:
        return [self([0] * k + [1]) for k in range(self.degree)]

    def identity(self) -> "RelAutomorphism":
        return RelAutomorphism(self, self.base.identity(), self.gen())

    def inner(self, c) -> "RelAutomorphism":
        return self.identity()

    def add_tag(self, name, value, square=None):
        tag = SubfieldElement(self, self(value), name, square)
        self.tags[name] = tag
        return tag

    def tag(self, name):
        if name in self.tags:
            return self.tags[name].value
        return self.embed(self.base.tag(name))

    def _reduce(self, prod: list) -> list:
        g, m = self.g, self.degree
        prod = list(prod)
        for k in range(len(prod) - 1, m - 1, -1):
            c = prod[k]
            if c:
                for i in range(m):
                    prod[k - m + i] = prod[k - m + i] - c * g[i]
            prod[k] = self.base.zero()
        return prod[:m]


class RelElem(FieldElement):
    __slots__ = ("field", "coeffs")

    def __init__(self, field: RelativeExtension, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def in_base(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[1:])

    def to_base(self):
        if not self.in_base():
            raise ValueError(f"{self} does not lie in the base field")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, RelElem):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) or isinstance(other, FieldElement):
            try:
                return self == self.field(other)
            except ValueError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, RelElem):
            other = self.field(other)
        return RelElem(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return RelElem(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, RelElem):
            if isinstance(other, (int, Fraction)) or getattr(other, "field", None) is self.field.base:
                return RelElem(self.field, tuple(c * other for c in self.coeffs))
            other = self.field(other)
        a, b = self.coeffs, other.coeffs
        zero = self.field.base.zero()
        prod = [zero] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = prod[i + j] + x * y
        return RelElem(self.field, tuple(self.field._reduce(prod)))

    def mult_matrix(self) -> list[list]:
        cols = [(self * b).coeffs for b in self.field.basis()]
        m = self.field.degree
        return [[cols[c][r] for c in range(m)] for r in range(m)]

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        rhs = [self.field.base.one()] + [self.field.base.zero()] * (self.field.degree - 1)
        return RelElem(self.field, tuple(solve_linear(self.mult_matrix(), rhs)))

    def __repr__(self):
        return f"RelElem({self.field.label}: {self})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else (self.field.gen_name if k == 1 else f"{self.field.gen_name}^{k}")
                parts.append(f"({c})" + ("*" + mono if mono else ""))
        return " + ".join(parts) or "0"


class RelAutomorphism:
    """Automorphism of L = K[y]/(g) given by a base automorphism and the image of y."""

    def __init__(self, field: RelativeExtension, base_aut, gen_image):
        gen_image = field(gen_image)
        twisted_g = [field.embed(base_aut(c)) for c in field.g]
        if dense_eval(twisted_g, gen_image) != 0:
            raise ValueError("generator image is not a root of the twisted defining polynomial")
        self.field = field
        self.base_aut = base_aut
        self.gen_image = gen_image
        powers = [field.one()]
        for _ in range(1, field.degree):
            powers.append(powers[-1] * gen_image)
        self._powers = powers

    def __call__(self, x):
        field = self.field
        if not isinstance(x, RelElem):
            x = field(x)
        out = field.zero()
        for c, pw in zip(x.coeffs, self._powers):
            if c:
                out = out + pw * self.base_aut(c)
        return out

    def compose(self, other: "RelAutomorphism") -> "RelAutomorphism":
        return RelAutomorphism(self.field, self.base_aut.compose(other.base_aut), self(other.gen_image))

    __mul__ = compose

    def __pow__(self, e: int):
        out = self.field.identity()
        for _ in range(e):
            out = out.compose(self)
        return out

    def is_identity(self) -> bool:
        return self.base_aut.is_identity() and self.gen_image == self.field.gen()

    def __eq__(self, other):
        if not isinstance(other, RelAutomorphism):
            return NotImplemented
        return self.field is other.field and self.base_aut == other.base_aut and self.gen_image == other.gen_image

    def __hash__(self):
        return hash(self.gen_image)

    def inverse(self):
        return self ** (aut_order(self) - 1)

    def __repr__(self):
        return f"RelAutomorphism(base={self.base_aut!r}, {self.field.gen_name} -> {self.gen_image})"


def relative_discriminant(g: Sequence):
    """Discriminant of a polynomial with coefficients in a field (resultant formula)."""
    return dense_discriminant(list(g))


# ---------------------------------------------------------------------------
# Fields used by the worked examples
# ---------------------------------------------------------------------------


def build_cubic() -> tuple[NumberField, NFAutomorphism]:
    """K = Q(alpha), alpha = zeta7 + 1/zeta7, with sigma(alpha) = alpha^2 - 2."""
    K = NumberField([-1, -2, 1, 1], label="Q(zeta7+zeta7^-1)", gen_name="a")
    a = K.gen()
    sigma = NFAutomorphism(K, a * a - 2)
    return K, sigma


def build_biquadratic() -> tuple[NumberField, dict[str, NFAutomorphism]]:
    """K = Q(sqrt3, sqrt-7) with primitive element t = sqrt3 + sqrt-7.

    Returns the field (tags ``sqrt3``, ``sqrt-7``, ``sqrt-21``) and its four
    automorphisms keyed ``id``, ``sigma1``, ``sigma2``, ``sigma1sigma2``.
    """
    K = NumberField([100, 0, 8, 0, 1], label="Q(sqrt3,sqrt-7)", gen_name="t")
    t = K.gen()
    s3 = (2 * t - t ** 3) / 20
    s7 = t - s3
    K.add_tag("sqrt3", s3)
    K.add_tag("sqrt-7", s7)
    K.add_tag("sqrt-21", s3 * s7)
    K.search_basis = [K.one(), s3, s7, s3 * s7]
    sigma1 = NFAutomorphism(K, -s3 + s7)
    sigma2 = NFAutomorphism(K, s3 - s7)
    auts = {
        "id": K.identity(),
        "sigma1": sigma1,
        "sigma2": sigma2,
        "sigma1sigma2": sigma1.compose(sigma2),
    }
    return K, auts


def build_cyclic_tower():
    """L = K(beta), g = y^3 + (a-2)y^2 - (a+1)y + 1 over the cubic field K.

    Returns (K, sigma, L, tau) with tau(beta) = beta^2 + (a-2)beta - a.
    The certificate on L is filled in by the residue module.
    """
    K, sigma = build_cubic()
    a = K.gen()
    L = RelativeExtension(K, [1, -(a + 1), a - 2, 1], label="L", gen_name="b")
    b = L.gen()
    tau = RelAutomorphism(L, K.identity(), b * b + L.embed(a - 2) * b - L.embed(a))
    return K, sigma, L, tau


def build_quartic_cyclic() -> tuple[NumberField, NFAutomorphism]:
    """Q(alpha), alpha^4 - 4 alpha^2 + 2 = 0, with phi(alpha) = alpha^3 - 3 alpha."""
    M = NumberField([2, 0, -4, 0, 1], label="Q(alpha4)", gen_name="a")
    a = M.gen()
    return M, NFAutomorphism(M, a ** 3 - 3 * a)


def field_from_descriptor(desc: dict) -> NumberField:
    """Build a field from ``{"label", "min_poly": [...], "tags": {...}}``."""
    min_poly = [as_rational(c) for c in desc["min_poly"]]
    K = NumberField(min_poly, label=desc.get("label", "K"), gen_name=desc.get("gen", "x"))
    for name, val in desc.get("tags", {}).items():
        if isinstance(val, dict):
            K.add_tag(name, [as_rational(c) for c in val["coeffs"]], val.get("square"))
        else:
            K.add_tag(name, [as_rational(c) for c in val])
    return K
