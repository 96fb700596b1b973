"""Cyclic and abelian factor sets, their relation checks, and generalized crossed products.

The coefficient algebra A may be a field (NumberField, RelativeExtension)
or a SymbolAlgebra.  All that is used is: ``A(x)``, ``A.one()``,
``A.inner(c)``, ``A.identity()``, and automorphisms that compose,
compare and apply.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

from .report import Report


def _center_part(aut):
    """Restriction of an automorphism of A to its center field."""
    return getattr(aut, "base", aut)


def _is_central(x) -> bool:
    return x.is_scalar() if hasattr(x, "is_scalar") else True


def aut_power(phi, k: int):
    out = None
    for _ in range(k):
        out = phi if out is None else out.compose(phi)
    return out


def orbit_norm(phi, x, n: int):
    """x * phi(x) * ... * phi^(n-1)(x), in that order."""
    out = x
    y = x
    for _ in range(1, n):
        y = phi(y)
        out = out * y
    return out


# ---------------------------------------------------------------------------
# Cyclic and abelian parameter data
# ---------------------------------------------------------------------------


@dataclass
class CyclicFactorSet:
    algebra: object
    sigma_tilde: object
    alpha: object
    n: int


def verify_cyclic(fs: CyclicFactorSet) -> Report:
    A = fs.algebra
    rep = Report()
    alpha = A(fs.alpha)
    try:
        inner = A.inner(alpha)
        ok = aut_power(fs.sigma_tilde, fs.n) == inner
        rep.add("power-is-inner", ok, f"sigma~^{fs.n} {'=' if ok else '!='} inner(alpha)")
    except ZeroDivisionError:
        rep.add("power-is-inner", False, "alpha is not invertible")
    ok = fs.sigma_tilde(alpha) == alpha
    rep.add("alpha-fixed", ok, "sigma~(alpha) = alpha" if ok else f"sigma~(alpha) - alpha = {fs.sigma_tilde(alpha) - alpha}")
    return rep


@dataclass
class AbelianFactorSet:
    """Parameters (sigma~_i, u_ij, alpha_i) for a product of r cyclic groups of orders n_i."""

    algebra: object
    sigma_tilde: list
    u: list  # r x r matrix
    alpha: list
    orders: list[int]

    @property
    def r(self) -> int:
        return len(self.sigma_tilde)

    @classmethod
    def rank_two(cls, algebra, s1, s2, alpha1, alpha2, u, n1: int = 2, n2: int = 2) -> "AbelianFactorSet":
        """Two generators; u = u_21, u_12 = u^-1."""
        u = algebra(u)
        one = algebra.one()
        return cls(algebra, [s1, s2], [[one, u.inverse()], [u, one]], [algebra(alpha1), algebra(alpha2)], [n1, n2])

    def norm(self, i: int, x):
        return orbit_norm(self.sigma_tilde[i], x, self.orders[i])


def verify_abelian_r2(fs: AbelianFactorSet) -> Report:
    """The five relations that characterise an abelian factor set with r = 2.

    ids: sigma1-power, sigma2-power, commutation, sigma1-on-alpha2, sigma2-on-alpha1.
    """
    if fs.r != 2:
        raise ValueError("verify_abelian_r2 needs exactly two generators")
    A = fs.algebra
    s1, s2 = fs.sigma_tilde
    a1, a2 = fs.alpha
    u = fs.u[1][0]
    rep = Report()
    for idx, (s, a, n) in enumerate(((s1, a1, fs.orders[0]), (s2, a2, fs.orders[1])), start=1):
        power_ok = aut_power(s, n) == A.inner(a)
        fixed_ok = s(a) == a
        parts = []
        if not power_ok:
            parts.append(f"sigma{idx}~^{n} != inner(alpha{idx})")
        if not fixed_ok:
            parts.append(f"sigma{idx}~(alpha{idx}) != alpha{idx}")
        rep.add(f"sigma{idx}-power", power_ok and fixed_ok, "; ".join(parts) or "holds")
    ok = s2.compose(s1) == A.inner(u).compose(s1.compose(s2))
    rep.add("commutation", ok, "sigma2~ sigma1~ = inner(u) sigma1~ sigma2~" + ("" if ok else " fails"))
    lhs = s1(a2)
    rhs = fs.norm(1, u.inverse()) * a2
    rep.add("sigma1-on-alpha2", lhs == rhs, "sigma1~(alpha2) = N2(u^-1) alpha2" + ("" if lhs == rhs else " fails"))
    lhs = s2(a1)
    rhs = fs.norm(0, u) * a1
    rep.add("sigma2-on-alpha1", lhs == rhs, "sigma2~(alpha1) = N1(u) alpha1" + ("" if lhs == rhs else " fails"))
    return rep


def six_factor_product(fs: AbelianFactorSet, i: int, j: int, k: int):
    s, u = fs.sigma_tilde, fs.u
    return s[k](u[i][j]) * u[k][j] * s[j](u[k][i]) * u[j][i] * s[i](u[j][k]) * u[i][k]


def verify_abelian_general(fs: AbelianFactorSet) -> Report:
    """All relations among (sigma~_i, u_ij, alpha_i) for every index pair and triple."""
    A = fs.algebra
    r = fs.r
    s, u, alpha = fs.sigma_tilde, fs.u, fs.alpha
    rep = Report()
    for i in range(r):
        rep.add(f"u-diagonal[{i + 1}]", u[i][i] == A.one())
    for i in range(r):
        for j in range(i + 1, r):
            rep.add(f"u-inverse[{i + 1},{j + 1}]", u[i][j] * u[j][i] == A.one())
    for i in range(r):
        rep.add(f"power-is-inner[{i + 1}]", aut_power(s[i], fs.orders[i]) == A.inner(alpha[i]))
    for i in range(r):
        for j in range(r):
            if i != j:
                ok = s[i].compose(s[j]) == A.inner(u[i][j]).compose(s[j].compose(s[i]))
                rep.add(f"commutation[{i + 1},{j + 1}]", ok)
    for i in range(r):
        for j in range(r):
            ok = s[j](alpha[i]) == fs.norm(i, u[j][i]) * alpha[i]
            rep.add(f"alpha-twist[{i + 1},{j + 1}]", ok, f"sigma{j + 1}~(alpha{i + 1}) = N{i + 1}(u{j + 1}{i + 1}) alpha{i + 1}")
    for i, j, k in product(range(r), repeat=3):
        rep.add(f"six-factor[{i + 1},{j + 1},{k + 1}]", six_factor_product(fs, i, j, k) == A.one())
    return rep


# ---------------------------------------------------------------------------
# Factor sets on an explicit group and generalized crossed products
# ---------------------------------------------------------------------------


class FiniteAutGroup:
    """A finite group of field automorphisms, indexed 0..|G|-1 with 0 the identity."""

    def __init__(self, elements: Sequence):
        elements = list(elements)
        if not elements[0].is_identity():
            raise ValueError("first group element must be the identity")
        self.elements = elements
        n = len(elements)
        self.table = [[self._index(elements[a].compose(elements[b])) for b in range(n)] for a in range(n)]
        self.inverse = [row.index(0) for row in self.table]

    def _index(self, g) -> int:
        for k, h in enumerate(self.elements):
            if h == g:
                return k
        raise ValueError("element list is not closed under composition")

    def __len__(self):
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]


@dataclass
class FactorSet:
    """(omega, f): omega[g] an automorphism of A, f[(g, h)] a unit of A, on group indices."""

    algebra: object
    group: FiniteAutGroup
    omega: list
    f: dict


def verify_factor_set(fs: FactorSet) -> Report:
    A, G = fs.algebra, fs.group
    rep = Report()
    n = len(G)
    bad = [g for g in range(n) if _center_part(fs.omega[g]) != G.elements[g]]
    rep.add("restricts-to-group", not bad, f"omega_g restricted to the center differs from g for g in {bad}" if bad else "")
    bad = []
    for s, t in product(range(n), repeat=2):
        lhs = fs.omega[s].compose(fs.omega[t])
        rhs = A.inner(fs.f[s, t]).compose(fs.omega[G.mul(s, t)])
        if lhs != rhs:
            bad.append((s, t))
    rep.add("composition", not bad, f"omega_s omega_t != inner(f(s,t)) omega_st at {bad[:5]}" if bad else "")
    bad = []
    for r_, s, t in product(range(n), repeat=3):
        lhs = fs.omega[r_](fs.f[s, t]) * fs.f[r_, G.mul(s, t)]
        rhs = fs.f[r_, s] * fs.f[G.mul(r_, s), t]
        if lhs != rhs:
            bad.append((r_, s, t))
    rep.add("cocycle", not bad, f"cocycle identity fails at {bad[:5]}" if bad else "")
    return rep


def cyclic_factor_set(algebra, group: FiniteAutGroup, sigma_tilde, alpha) -> FactorSet:
    """omega_{s^i} = sigma~^i, f(s^i, s^j) = 1 if i+j < n else alpha.

    ``group.elements[i]`` must be the i-th power of the generator.
    """
    n = len(group)
    omega = [algebra.identity()]
    for _ in range(1, n):
        omega.append(sigma_tilde.compose(omega[-1]))
    one = algebra.one()
    alpha = algebra(alpha)
    f = {(i, j): (alpha if i + j >= n else one) for i in range(n) for j in range(n)}
    return FactorSet(algebra, group, omega, f)


def cyclic_normal_form(fs: FactorSet) -> tuple[object, object]:
    """(sigma~, alpha) with alpha = f(s^0, s) f(s^1, s) ... f(s^(n-1), s)."""
    n = len(fs.group)
    sigma_tilde = fs.omega[1] if n > 1 else fs.algebra.identity()
    for i in range(n):
        expected = aut_power(sigma_tilde, i) if i else fs.algebra.identity()
        if fs.omega[i] != expected:
            raise ValueError("omega is not of the form sigma~^i")
    gen = 1 % n
    alpha = fs.algebra.one()
    for i in range(n):
        alpha = alpha * fs.f[i, gen]
    return sigma_tilde, alpha


def twist(fs: FactorSet, m: Sequence) -> FactorSet:
    """The cohomologous factor set eta_s = inner(m_s) omega_s, g(s,t) = m_s omega_s(m_t) f(s,t) m_st^-1."""
    A, G = fs.algebra, fs.group
    m = [A(x) for x in m]
    eta = [A.inner(m[s]).compose(fs.omega[s]) for s in range(len(G))]
    g = {
        (s, t): m[s] * fs.omega[s](m[t]) * fs.f[s, t] * m[G.mul(s, t)].inverse()
        for s in range(len(G))
        for t in range(len(G))
    }
    return FactorSet(A, G, eta, g)


def are_cohomologous(fs1: FactorSet, fs2: FactorSet, m: Sequence) -> bool:
    """Check that the family m witnesses fs1 ~ fs2."""
    A, G = fs1.algebra, fs1.group
    m = [A(x) for x in m]
    try:
        for s in range(len(G)):
            if fs2.omega[s] != A.inner(m[s]).compose(fs1.omega[s]):
                return False
        for s, t in product(range(len(G)), repeat=2):
            if fs2.f[s, t] != m[s] * fs1.omega[s](m[t]) * fs1.f[s, t] * m[G.mul(s, t)].inverse():
                return False
    except ZeroDivisionError:
        return False
    return True


def normalization_witness(fs: FactorSet) -> list:
    """m_id = f(id,id)^-1, all other m_s = 1."""
    A = fs.algebra
    return [fs.f[0, 0].inverse()] + [A.one()] * (len(fs.group) - 1)


def cocycle_ratio(fs1: FactorSet, fs2: FactorSet) -> dict:
    """c(s,t) = f(s,t)^-1 g(s,t) for two factor sets sharing omega; each value must be central."""
    for a, b in zip(fs1.omega, fs2.omega):
        if a != b:
            raise ValueError("factor sets have different omega")
    c = {}
    for key, val in fs1.f.items():
        x = val.inverse() * fs2.f[key]
        if not _is_central(x):
            raise ValueError(f"ratio at {key} is not central")
        c[key] = x
    return c


class GenCrossedProduct:
    """B = sum over g of A z_g with (a z_s)(b z_t) = a omega_s(b) f(s,t) z_st.

    Elements are tuples indexed by group position, entries in A.
    """

    def __init__(self, fs: FactorSet, check: bool = True):
        if check:
            rep = verify_factor_set(fs)
            if not rep.passed:
                raise ValueError("factor set verification failed: " + ", ".join(rep.failed_ids()))
        self.fs = fs
        self.algebra = fs.algebra
        self.group = fs.group

    def __call__(self, entries) -> "CPElem":
        if isinstance(entries, dict):
            out = [self.algebra(0)] * len(self.group)
            for g, a in entries.items():
                out[g] = self.algebra(a)
            return CPElem(self, tuple(out))
        return CPElem(self, tuple(self.algebra(a) for a in entries))

    def z(self, g: int) -> "CPElem":
        return self({g: 1})

    def embed(self, a) -> "CPElem":
        """a -> a f(id,id)^-1 z_id."""
        return self({0: self.algebra(a) * self.fs.f[0, 0].inverse()})

    def one(self) -> "CPElem":
        return self.embed(1)

    def basis(self, coefficient_basis: Sequence) -> list["CPElem"]:
        return [self({g: b}) for b in coefficient_basis for g in range(len(self.group))]


class CPElem:
    __slots__ = ("parent", "entries")

    def __init__(self, parent: GenCrossedProduct, entries: tuple):
        self.parent = parent
        self.entries = entries

    def __add__(self, other):
        return CPElem(self.parent, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __eq__(self, other):
        return isinstance(other, CPElem) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __mul__(self, other):
        B = self.parent
        fs, G = B.fs, B.group
        out = list(self.entries[0] * 0 for _ in range(len(G)))
        for s, a in enumerate(self.entries):
            if not a:
                continue
            for t, b in enumerate(other.entries):
                if not b:
                    continue
                st = G.mul(s, t)
                out[st] = out[st] + a * fs.omega[s](b) * fs.f[s, t]
        return CPElem(B, tuple(out))

    def __repr__(self):
        return "CPElem(" + " + ".join(f"({a})z{g}" for g, a in enumerate(self.entries) if a) + ")"


def check_associative(B: GenCrossedProduct, basis: Sequence[CPElem]) -> tuple[bool, int]:
    """Exhaustive (xy)z = x(yz) on basis triples; returns (ok, number of triples)."""
    count = 0
    prods = {}
    for a, x in enumerate(basis):
        for b, y in enumerate(basis):
            prods[a, b] = x * y
    for a, b, c in product(range(len(basis)), repeat=3):
        count += 1
        if prods[a, b] * basis[c] != basis[a] * prods[b, c]:
            return False, count
    return True, count


def check_conjugation_action(B: GenCrossedProduct, center_basis: Sequence) -> bool:
    """z_g c = g(c) z_g for c in the center field of A (equivalently z_g c z_g^-1 = g(c))."""
    A = B.algebra
    for g, sigma in enumerate(B.group.elements):
        zg = B.z(g)
        for c in center_basis:
            lhs = zg * B.embed(A(c))
            rhs = B.embed(A(sigma(c))) * zg
            if lhs != rhs:
                return False
    return True
