"""Finite fields (prime fields and towers over them), residue maps, and the tame symbol."""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from .exact import ModPoly, UniPoly, factor_degrees_mod_p, is_prime
from .numfield import NFElem, NumberField, RelAutomorphism, RelElem, RelativeExtension


class FiniteField:
    """F = B[x]/(m) where B is F_p (base=None) or another FiniteField.

    ``FiniteField(p)`` is the prime field itself.  Irreducibility of the
    modulus is verified: by distinct-degree factorisation over a prime base,
    by an exhaustive root search for degree <= 3 over a tower base.
    """

    def __init__(self, p: int, modulus: Sequence | None = None, base: "FiniteField | None" = None, name: str = "x"):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.base = base
        self.name = name
        if modulus is None:
            if base is not None:
                raise ValueError("a tower needs a modulus")
            modulus = [0, 1]
        if base is None:
            mod = [int(c) % p for c in modulus]
        else:
            if base.p != p:
                raise ValueError("characteristic mismatch")
            mod = [base(c) for c in modulus]
        while mod and not mod[-1]:
            mod.pop()
        if len(mod) < 2 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        self.modulus = tuple(mod)
        self.deg = len(mod) - 1
        self.size = (p if base is None else base.size) ** self.deg
        if self.deg > 1:
            self._check_irreducible()

    def _check_irreducible(self):
        if self.base is None:
            if factor_degrees_mod_p(UniPoly(list(self.modulus)), self.p) != [self.deg]:
                raise ValueError(f"modulus {self.modulus} is reducible mod {self.p}")
            return
        if self.deg > 3:
            raise ValueError("tower moduli of degree > 3 cannot be certified by the root test")
        for r in self.base.elements():
            acc = self.base.zero()
            for c in reversed(self.modulus):
                acc = acc * r + c
            if acc.is_zero():
                raise ValueError("modulus has a root in the base field")

    def __repr__(self):
        return f"F_{self.size}"

    def _czero(self):
        return 0 if self.base is None else self.base.zero()

    def _cnorm(self, c):
        return c % self.p if self.base is None else c

    def __call__(self, x) -> "FFElem":
        if isinstance(x, FFElem):
            if x.field is self:
                return x
            return self.embed(x)
        if isinstance(x, (list, tuple)):
            cs = [self._coerce_coeff(c) for c in x]
            if len(cs) > self.deg:
                cs = self._reduce(cs)
            cs += [self._czero()] * (self.deg - len(cs))
            return FFElem(self, tuple(cs))
        return FFElem(self, (self._coerce_coeff(x),) + (self._czero(),) * (self.deg - 1))

    def _coerce_coeff(self, c):
        if self.base is None:
            if isinstance(c, Fraction):
                if c.denominator % self.p == 0:
                    raise ZeroDivisionError(f"{c} has {self.p} in its denominator")
                return c.numerator * pow(c.denominator, -1, self.p) % self.p
            if isinstance(c, FFElem) and c.field.deg == 1 and c.field.base is None and c.field.p == self.p:
                return c.coeffs[0]
            return int(c) % self.p
        return self.base(c)

    def embed(self, x: "FFElem") -> "FFElem":
        """Coerce an element of a subfield in the tower (or of F_p) into this field."""
        if x.field is self:
            return x
        if self.base is not None and x.field is not self.base:
            x = self.base.embed(x)
        if self.base is None:
            if not (x.field.base is None and x.field.deg == 1 and x.field.p == self.p):
                raise ValueError("cannot embed element of an unrelated field")
            return self(x.coeffs[0])
        return self([x])

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gen(self):
        return self([0, 1]) if self.deg > 1 else self(-self.modulus[0])

    def elements(self):
        if self.base is None:
            cs = range(self.p)
        else:
            cs = list(self.base.elements())
        for tup in product(cs, repeat=self.deg):
            yield FFElem(self, tuple(tup))

    def extension(self, modulus: Sequence, name: str = "y") -> "FiniteField":
        if self.base is None and self.deg == 1:
            return FiniteField(self.p, [self._coerce_coeff(c) for c in modulus], name=name)
        return FiniteField(self.p, modulus, base=self, name=name)

    def _reduce(self, prod: list) -> list:
        m, n = self.modulus, self.deg
        prod = list(prod)
        for k in range(len(prod) - 1, n - 1, -1):
            c = prod[k]
            if c:
                for i in range(n):
                    prod[k - n + i] = self._cnorm(prod[k - n + i] - c * m[i])
            prod[k] = self._czero()
        return prod[:n]


class FFElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FFElem):
            if other.field is not self.field:
                try:
                    other = self.field.embed(other)
                except ValueError:
                    return False
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _lift(self, other):
        return other if isinstance(other, FFElem) and other.field is self.field else self.field(other)

    def __add__(self, other):
        other = self._lift(other)
        F = self.field
        return FFElem(F, tuple(F._cnorm(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return FFElem(F, tuple(F._cnorm(-a) for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        prod = [F._czero()] * (2 * F.deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = F._cnorm(prod[i + j] + x * y)
        return FFElem(F, tuple(F._reduce(prod)))

    __rmul__ = __mul__

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

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self ** (self.field.size - 2)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __repr__(self):
        return f"FFElem({self.field}: {list(self.coeffs)})"


def is_square(x: FFElem) -> bool:
    """Euler criterion x^((q-1)/2) == 1 in F_q, q odd."""
    if x.field.p == 2:
        raise ValueError("square test implemented for odd characteristic only")
    if x.is_zero():
        raise ValueError("square test of zero")
    return x ** ((x.field.size - 1) // 2) == 1


def tame_symbol(va: int, a_res: FFElem, vb: int, b_res: FFElem) -> int:
    """Quadratic Hilbert symbol at an odd place from valuations and unit residues."""
    F = a_res.field
    if F.p == 2:
        raise ValueError("tame symbol needs odd residue characteristic")
    b_res = F(b_res)
    x = a_res ** vb * b_res ** (-va)
    if (va * vb) % 2:
        x = -x
    return 1 if is_square(x) else -1


class ResidueMap:
    """Reduction of p-integral elements of Q[x]/(f), sending x to a verified root of f mod p."""

    def __init__(self, field: NumberField, p: int, codomain: FiniteField, root):
        root = codomain(root)
        if codomain.p != p:
            raise ValueError("codomain characteristic differs from p")
        acc = codomain.zero()
        for c in reversed(field.min_poly.coeffs):
            acc = acc * root + codomain(c)
        if not acc.is_zero():
            raise ValueError("supplied image is not a root of the minimal polynomial mod p")
        self.field = field
        self.p = p
        self.codomain = codomain
        self.gen_image = root
        self._powers = [codomain.one()]
        for _ in range(1, field.degree):
            self._powers.append(self._powers[-1] * root)

    def __call__(self, x) -> FFElem:
        x = self.field(x)
        if x.den % self.p == 0:
            raise ZeroDivisionError(f"element has {self.p} in its denominator")
        F = self.codomain
        out = F.zero()
        for c, pw in zip(x.num, self._powers):
            if c % self.p:
                out = out + pw * c
        return out * F(pow(x.den, -1, self.p))


def make_residue_map(K: NumberField, p: int, codomain: FiniteField, root) -> ResidueMap:
    return ResidueMap(K, p, codomain, root)


class RelativeResidueMap:
    """Reduction on L = K[y]/(g) over a base residue map; codomain is a tower over the base codomain."""

    def __init__(self, field: RelativeExtension, base_map: ResidueMap, codomain: FiniteField, root):
        root = codomain(root)
        acc = codomain.zero()
        for c in reversed(field.g):
            acc = acc * root + codomain.embed(base_map(c))
        if not acc.is_zero():
            raise ValueError("supplied image is not a root of the reduced defining polynomial")
        self.field = field
        self.base_map = base_map
        self.codomain = codomain
        self.gen_image = root
        self.p = base_map.p
        self._powers = [codomain.one()]
        for _ in range(1, field.degree):
            self._powers.append(self._powers[-1] * root)

    @property
    def base_size(self) -> int:
        return self.base_map.codomain.size

    def __call__(self, x) -> FFElem:
        x = self.field(x)
        out = self.codomain.zero()
        for c, pw in zip(x.coeffs, self._powers):
            if c:
                out = out + pw * self.codomain.embed(self.base_map(c))
        return out

    def reduced_defining_poly(self) -> list[FFElem]:
        return [self.base_map(c) for c in self.field.g]

    def certifies_irreducible(self) -> bool:
        """True iff the reduction of g has full degree and no root in the base residue field.

        For monic integral g of degree <= 3 this proves g irreducible over K.
        """
        red = self.reduced_defining_poly()
        if self.field.degree > 3:
            return False
        for r in self.base_map.codomain.elements():
            acc = r.field.zero()
            for c in reversed(red):
                acc = acc * r + c
            if acc.is_zero():
                return False
        return True


def frobenius_match(rm: RelativeResidueMap, candidate) -> bool:
    """Does the candidate (automorphism of L/K or image of L's generator) reduce to x -> x^q?

    q is the size of the residue field of the base.  The candidate must fix K.
    """
    if isinstance(candidate, RelAutomorphism):
        if not candidate.base_aut.is_identity():
            raise ValueError("candidate does not fix the base field")
        candidate = candidate.gen_image
    if not isinstance(candidate, RelElem) or candidate.field is not rm.field:
        raise ValueError("candidate image must be an element of the extension")
    return rm(candidate) == rm.gen_image ** rm.base_size
