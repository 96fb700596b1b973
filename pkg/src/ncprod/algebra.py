"""Symbol algebras (a, b / K, zeta) with basis i^s j^t and their semilinear automorphisms."""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from .exact import solve_linear


class SymbolAlgebra:
    """Algebra over K generated by i, j with i^n = a, j^n = b, j i = zeta i j.

    K may be a NumberField or a RelativeExtension; anything exposing
    ``__call__``, ``zero``, ``one`` and ``identity`` works.
    """

    def __init__(self, K, n: int, zeta, a, b, label: str = "A"):
        zeta, a, b = K(zeta), K(a), K(b)
        if zeta ** n != 1 or any(zeta ** k == 1 for k in range(1, n)):
            raise ValueError(f"zeta is not a primitive {n}-th root of unity")
        if a.is_zero() or b.is_zero():
            raise ValueError("a and b must be nonzero")
        self.K, self.n, self.zeta, self.a, self.b, self.label = K, n, zeta, a, b, label
        self.dim = n * n
        zpow = [zeta ** k for k in range(n)]
        table = {}
        for (s, t), (u, v) in product(product(range(n), repeat=2), repeat=2):
            c = zpow[(t * u) % n]
            if s + u >= n:
                c = c * a
            if t + v >= n:
                c = c * b
            table[s * n + t, u * n + v] = (((s + u) % n) * n + (t + v) % n, None if c == 1 else c)
        self._table = table

    def __repr__(self):
        return f"SymbolAlgebra(({self.a}, {self.b}) / {getattr(self.K, 'label', 'K')}, n={self.n})"

    def __call__(self, x) -> "AlgElem":
        if isinstance(x, AlgElem):
            if x.algebra is not self:
                raise ValueError("element of another algebra")
            return x
        if isinstance(x, dict):
            cs = [self.K.zero()] * self.dim
            for (s, t), c in x.items():
                cs[s * self.n + t] = self.K(c)
            return AlgElem(self, tuple(cs))
        if isinstance(x, (list, tuple)):
            if len(x) != self.dim:
                raise ValueError(f"expected {self.dim} coefficients")
            return AlgElem(self, tuple(self.K(c) for c in x))
        return self.scalar(x)

    def scalar(self, c) -> "AlgElem":
        return AlgElem(self, (self.K(c),) + (self.K.zero(),) * (self.dim - 1))

    def zero(self):
        return self.scalar(0)

    def one(self):
        return self.scalar(1)

    def monomial(self, s: int, t: int, c=1) -> "AlgElem":
        return self({(s, t): c})

    def i(self):
        return self.monomial(1, 0)

    def j(self):
        return self.monomial(0, 1)

    def k(self):
        return self.monomial(1, 1)

    def generators(self) -> list["AlgElem"]:
        return [self.scalar(g) for g in self.K.generators()] + [self.i(), self.j()]

    def basis(self) -> list["AlgElem"]:
        return [self.monomial(s, t) for s in range(self.n) for t in range(self.n)]

    def identity(self) -> "AlgAutomorphism":
        return AlgAutomorphism(self, self.K.identity(), self.i(), self.j())

    def inner(self, c) -> "AlgAutomorphism":
        return inner_aut(self(c))

    def center_dim(self) -> int:
        return 1


class AlgElem:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: SymbolAlgebra, coeffs: tuple):
        self.algebra = algebra
        self.coeffs = coeffs

    def coeff(self, s: int, t: int):
        return self.coeffs[s * self.algebra.n + t]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_scalar(self) -> bool:
        return all(c.is_zero() for c in self.coeffs[1:])

    def to_scalar(self):
        if not self.is_scalar():
            raise ValueError("element is not in the base field")
        return self.coeffs[0]

    def _lift(self, other) -> "AlgElem":
        return other if isinstance(other, AlgElem) else self.algebra(other)

    def __eq__(self, other):
        if isinstance(other, AlgElem):
            return self.algebra is other.algebra and self.coeffs == other.coeffs
        try:
            return self == self.algebra(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._lift(other)
        return AlgElem(self.algebra, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return AlgElem(self.algebra, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, AlgElem):
            if isinstance(other, (int, Fraction)) or getattr(other, "field", None) is self.algebra.K:
                return AlgElem(self.algebra, tuple(c * other for c in self.coeffs))
            other = self.algebra(other)
        A = self.algebra
        if other.algebra is not A:
            raise ValueError("mixed algebras")
        out = list((A.K.zero(),) * A.dim)
        table = A._table
        for p, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for q, y in enumerate(other.coeffs):
                if y.is_zero():
                    continue
                r, c = table[p, q]
                term = x * y
                if c is not None:
                    term = term * c
                out[r] = out[r] + term
        return AlgElem(A, tuple(out))

    def __rmul__(self, other):
        # scalars are central
        return self * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.algebra.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def left_matrix(self) -> list[list]:
        cols = [(self * e).coeffs for e in self.algebra.basis()]
        d = self.algebra.dim
        return [[cols[c][r] for c in range(d)] for r in range(d)]

    def inverse(self) -> "AlgElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        A = self.algebra
        rhs = [A.K.one()] + [A.K.zero()] * (A.dim - 1)
        try:
            sol = solve_linear(self.left_matrix(), rhs)
        except ZeroDivisionError as exc:
            raise ZeroDivisionError("element is a zero divisor") from exc
        inv = AlgElem(A, tuple(sol))
        if inv * self != 1:
            raise ZeroDivisionError("right inverse is not a left inverse")
        return inv

    def __truediv__(self, other):
        if isinstance(other, AlgElem):
            return self * other.inverse()
        return self * self.algebra.K(other).inverse()

    def __rtruediv__(self, other):
        return self.algebra(other) * self.inverse()

    def __repr__(self):
        return f"AlgElem({self})"

    def __str__(self):
        A = self.algebra
        names = {(0, 0): "", (1, 0): "i", (0, 1): "j", (1, 1): "k"} if A.n == 2 else {}
        parts = []
        for s in range(A.n):
            for t in range(A.n):
                c = self.coeff(s, t)
                if c:
                    mono = names.get((s, t))
                    if mono is None:
                        mono = "*".join(x for x in (f"i^{s}" if s else "", f"j^{t}" if t else "") if x)
                    parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) or "0"


class AlgAutomorphism:
    """Semilinear ring automorphism: base automorphism on K plus images of i and j.

    The defining relations are verified at construction; ``check=False`` is
    used internally for composites of verified maps.
    """

    def __init__(self, algebra: SymbolAlgebra, base, image_i, image_j, check: bool = True):
        image_i, image_j = algebra(image_i), algebra(image_j)
        self.algebra = algebra
        self.base = base
        self.image_i = image_i
        self.image_j = image_j
        if check:
            bad = self.relation_failures()
            if bad:
                raise ValueError("not an automorphism: " + "; ".join(bad))
        n = algebra.n
        ipow = [algebra.one()]
        jpow = [algebra.one()]
        for _ in range(1, n):
            ipow.append(ipow[-1] * image_i)
            jpow.append(jpow[-1] * image_j)
        self._mono = [ipow[s] * jpow[t] for s in range(n) for t in range(n)]

    def relation_failures(self) -> list[str]:
        A, s = self.algebra, self.base
        n = A.n
        out = []
        if self.image_i ** n != A.scalar(s(A.a)):
            out.append("image_i^n != sigma(a)")
        if self.image_j ** n != A.scalar(s(A.b)):
            out.append("image_j^n != sigma(b)")
        if self.image_j * self.image_i != self.image_i * self.image_j * s(A.zeta):
            out.append("image_j*image_i != zeta*image_i*image_j")
        return out

    def __call__(self, x) -> AlgElem:
        A = self.algebra
        if not isinstance(x, AlgElem):
            return A.scalar(self.base(A.K(x)))
        out = [A.K.zero()] * A.dim
        for c, mono in zip(x.coeffs, self._mono):
            if c.is_zero():
                continue
            sc = self.base(c)
            for r, m in enumerate(mono.coeffs):
                if not m.is_zero():
                    out[r] = out[r] + sc * m
        return AlgElem(A, tuple(out))

    def compose(self, other: "AlgAutomorphism") -> "AlgAutomorphism":
        """self o other."""
        return AlgAutomorphism(
            self.algebra, self.base.compose(other.base), self(other.image_i), self(other.image_j), check=False
        )

    __mul__ = compose

    def __pow__(self, e: int):
        out = self.algebra.identity()
        for _ in range(e):
            out = out.compose(self)
        return out

    def equal_on_generators(self, other: "AlgAutomorphism") -> bool:
        return self.base == other.base and self.image_i == other.image_i and self.image_j == other.image_j

    def __eq__(self, other):
        if not isinstance(other, AlgAutomorphism):
            return NotImplemented
        return self.algebra is other.algebra and self.equal_on_generators(other)

    def __hash__(self):
        return hash((self.image_i, self.image_j))

    def is_identity(self) -> bool:
        return self.equal_on_generators(self.algebra.identity())

    def __repr__(self):
        return f"AlgAutomorphism(base={self.base!r}, i -> {self.image_i}, j -> {self.image_j})"


def apply_alg_aut(phi: AlgAutomorphism, x: AlgElem) -> AlgElem:
    return phi(x)


def inner_aut(c: AlgElem) -> AlgAutomorphism:
    """x -> c x c^-1."""
    A = c.algebra
    ci = c.inverse()
    return AlgAutomorphism(A, A.K.identity(), c * A.i() * ci, c * A.j() * ci, check=False)


def _norm_along(lam: AlgElem, axis: str):
    A = lam.algebra
    n = A.n
    for s in range(n):
        for t in range(n):
            on_axis = (s == 0) if axis == "j" else (t == 0)
            if not on_axis and not lam.coeff(s, t).is_zero():
                raise ValueError(f"element does not lie in K({axis})")
    out = A.one()
    for k in range(n):
        z = A.zeta ** k
        terms = {}
        for e in range(n):
            key = (0, e) if axis == "j" else (e, 0)
            c = lam.coeff(*key)
            if not c.is_zero():
                terms[key] = c * z ** e
        out = out * A(terms) if terms else A.zero()
    return out.to_scalar()


def norm_in_Kj(lam: AlgElem):
    """Norm from the commutative subfield K(j) down to K."""
    return _norm_along(lam, "j")


def norm_in_Ki(lam: AlgElem):
    """Norm from K(i) down to K."""
    return _norm_along(lam, "i")


def extend_aut_special(algebra: SymbolAlgebra, sigma, lam: AlgElem, side: str = "j") -> AlgAutomorphism:
    """Extend sigma using lam in K(j) (i -> lam*i, j -> j), or in K(i) with side='i' (i -> i, j -> lam*j)."""
    A = algebra
    lam = A(lam)
    if sigma(A.zeta) != A.zeta:
        raise ValueError("sigma does not fix zeta")
    if side == "j":
        if sigma(A.b) != A.b:
            raise ValueError("sigma does not fix b")
        if norm_in_Kj(lam) != sigma(A.a) / A.a:
            raise ValueError("norm condition N(lam) = sigma(a)/a fails")
        return AlgAutomorphism(A, sigma, lam * A.i(), A.j())
    if side == "i":
        if sigma(A.a) != A.a:
            raise ValueError("sigma does not fix a")
        if norm_in_Ki(lam) != sigma(A.b) / A.b:
            raise ValueError("norm condition N(lam) = sigma(b)/b fails")
        return AlgAutomorphism(A, sigma, A.i(), lam * A.j())
    raise ValueError("side must be 'i' or 'j'")


def _coord_key(v: tuple[int, ...]):
    return (max((abs(x) for x in v), default=0), tuple((abs(x), x < 0) for x in v))


def _box(dim: int, bound: int) -> list[tuple[int, ...]]:
    return sorted(product(range(-bound, bound + 1), repeat=dim), key=_coord_key)


def norm_equation_search(
    algebra: SymbolAlgebra,
    sigma,
    height_bound: int,
    denominator: int = 4,
    basis: Sequence | None = None,
    side: str = "j",
) -> AlgElem | None:
    """Find lam = (c + d*j)/m with N(lam) = sigma(a)/a, or None.

    c and d range over integer combinations of ``basis`` (default: the
    field's ``search_basis`` if present, else the power basis) with
    coordinates in [-B, B]; m runs over the divisors of ``denominator``.
    Candidates are visited in order of (m, d, c), each vector ordered by
    height and then coordinate-wise with positive values first, and the
    first hit is returned.  Quadratic case only (n = 2), solved by
    meeting in the middle on c^2 = target*m^2 + b*d^2.
    """
    A = algebra
    if A.n != 2:
        raise ValueError("norm search implemented for quaternion algebras only")
    K = A.K
    if side == "j":
        fixed, moved = A.b, A.a
    elif side == "i":
        fixed, moved = A.a, A.b
    else:
        raise ValueError("side must be 'i' or 'j'")
    if sigma(A.zeta) != A.zeta or sigma(fixed) != fixed:
        raise ValueError("sigma must fix zeta and the element generating the searched subfield")
    target = sigma(moved) / moved
    if basis is None:
        basis = getattr(K, "search_basis", None) or K.basis()
    basis = [K(x) for x in basis]
    vecs = _box(len(basis), height_bound)

    def combo(v):
        out = K.zero()
        for c, e in zip(v, basis):
            if c:
                out = out + e * c
        return out

    elems = [combo(v) for v in vecs]
    squares: dict = {}
    for c in elems:
        squares.setdefault(c * c, c)
    d_sq = [(d, fixed * d * d) for d in elems]
    for m in [k for k in range(1, denominator + 1) if denominator % k == 0]:
        tm = target * (m * m)
        for d, bd2 in d_sq:
            c = squares.get(tm + bd2)
            if c is None:
                continue
            if side == "j":
                lam = A({(0, 0): c / m, (0, 1): d / m})
                check = norm_in_Kj(lam)
            else:
                lam = A({(0, 0): c / m, (1, 0): d / m})
                check = norm_in_Ki(lam)
            if check == target and not lam.is_zero():
                return lam
    return None
