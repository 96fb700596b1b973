"""Iterated twisted polynomial rings A[x_1..x_r; sigma~; u] in normal form.

Multiplication rules: x_i a = sigma~_i(a) x_i and x_i x_j = u_ij x_j x_i.
Elements are finite sums  a_e x_1^e1 ... x_r^er  with coefficients on the left.
Laurent series share these polynomial identities; they are not materialised.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import prod
from typing import Sequence

from .algebra import AlgAutomorphism, SymbolAlgebra
from .brauer import exp_inertially_split, local_index_bounds
from .exact import lcm
from .factorset import AbelianFactorSet, aut_power, verify_abelian_general
from .numfield import RelAutomorphism, RelativeExtension
from .report import Report


class TwistedRingSpec:
    """The data (A, sigma~_i, u_ij, alpha_i, n_i); construction verifies the factor set."""

    def __init__(self, fs: AbelianFactorSet, check: bool = True):
        if check:
            rep = verify_abelian_general(fs)
            if not rep.passed:
                raise ValueError("factor set verification failed: " + ", ".join(rep.failed_ids()[:6]))
        self.fs = fs
        self.A = fs.algebra
        self.r = fs.r
        self.sigma = fs.sigma_tilde
        self.u = fs.u
        self.alpha = fs.alpha
        self.orders = fs.orders
        self._auts: dict[tuple[int, ...], object] = {}
        self._gen_coeff: dict[tuple[tuple[int, ...], int], object] = {}
        self._mono: dict[tuple[tuple[int, ...], tuple[int, ...]], object] = {}

    # composite automorphism sigma~_1^e1 o ... o sigma~_r^er
    def sigma_power(self, e: tuple[int, ...]):
        if e not in self._auts:
            phi = self.A.identity()
            for k in range(self.r - 1, -1, -1):
                for _ in range(e[k]):
                    phi = self.sigma[k].compose(phi)
            self._auts[e] = phi
        return self._auts[e]

    def _times_gen(self, g: tuple[int, ...], k: int):
        """Coefficient c with x^g * x_k = c * x^(g + e_k)."""
        key = (g, k)
        if key in self._gen_coeff:
            return self._gen_coeff[key]
        c = self.A.one()
        for m in range(self.r - 1, k, -1):
            for t in range(g[m] - 1, -1, -1):
                prefix = tuple(g[:m]) + (t,) + (0,) * (self.r - m - 1)
                c = c * self.sigma_power(prefix)(self.u[m][k])
        self._gen_coeff[key] = c
        return c

    def monomial_product(self, e: tuple[int, ...], f: tuple[int, ...]):
        """Coefficient c with x^e * x^f = c * x^(e+f)."""
        key = (e, f)
        if key in self._mono:
            return self._mono[key]
        c = self.A.one()
        g = list(e)
        for k in range(self.r):
            for _ in range(f[k]):
                c = c * self._times_gen(tuple(g), k)
                g[k] += 1
        self._mono[key] = c
        return c

    # element constructors
    def __call__(self, terms) -> "TwistedElem":
        if isinstance(terms, TwistedElem):
            return terms
        if isinstance(terms, dict):
            return TwistedElem(self, {tuple(e): self.A(c) for e, c in terms.items()})
        return self.const(terms)

    def const(self, a) -> "TwistedElem":
        return TwistedElem(self, {(0,) * self.r: self.A(a)})

    def x(self, i: int) -> "TwistedElem":
        """The generator x_i, 1-based."""
        e = [0] * self.r
        e[i - 1] = 1
        return TwistedElem(self, {tuple(e): self.A.one()})

    def one(self):
        return self.const(1)

    def zero(self):
        return TwistedElem(self, {})


class TwistedElem:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: TwistedRingSpec, terms: dict):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    def _lift(self, other):
        return other if isinstance(other, TwistedElem) else self.ring.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return TwistedElem(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return TwistedElem(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        R = self.ring
        out: dict = {}
        for e, a in self.terms.items():
            phi = R.sigma_power(e)
            for f, b in other.terms.items():
                g = tuple(x + y for x, y in zip(e, f))
                term = a * phi(b) * R.monomial_product(e, f)
                out[g] = out[g] + term if g in out else term
        return TwistedElem(R, out)

    def __rmul__(self, other):
        return self._lift(other) * self

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, TwistedElem):
            other = self.ring.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        parts = []
        for e in sorted(self.terms):
            mono = "*".join(f"x{k + 1}^{p}" if p > 1 else f"x{k + 1}" for k, p in enumerate(e) if p)
            parts.append(f"[{self.terms[e]}]" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) or "0"


def twisted_mul(x: TwistedElem, y: TwistedElem) -> TwistedElem:
    return x * y


def coefficient_generators(ring: TwistedRingSpec) -> list[TwistedElem]:
    return [ring.const(g) for g in ring.A.generators()]


def central_params(ring: TwistedRingSpec) -> tuple[list[TwistedElem], Report]:
    """t_i = alpha_i^-1 x_i^{n_i}, with commutation checks against all generators and each other."""
    rep = Report()
    ts = []
    gens = coefficient_generators(ring)
    xs = [ring.x(k + 1) for k in range(ring.r)]
    for i in range(ring.r):
        t = ring.const(ring.alpha[i].inverse()) * xs[i] ** ring.orders[i]
        ts.append(t)
        ok_coeff = all(t * g == g * t for g in gens)
        rep.add(f"t{i + 1}-commutes-with-coefficients", ok_coeff)
        for j in range(ring.r):
            rep.add(f"t{i + 1}-commutes-with-x{j + 1}", t * xs[j] == xs[j] * t)
    for i in range(ring.r):
        for j in range(i + 1, ring.r):
            rep.add(f"t{i + 1}t{j + 1}-commute", ts[i] * ts[j] == ts[j] * ts[i])
    return ts, rep


def random_element(ring: TwistedRingSpec, rng: random.Random, coeff_bound: int = 2, max_terms: int = 3,
                   exp_bound: Sequence[int] | None = None, coeff_basis: Sequence | None = None) -> TwistedElem:
    """Random element with small integer coefficients on ``coeff_basis`` (default: A's basis)."""
    A = ring.A
    if exp_bound is None:
        exp_bound = [2 * n for n in ring.orders]
    basis = list(coeff_basis) if coeff_basis is not None else A.basis()
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(0, b) for b in exp_bound)
        c = A.zero()
        for bvec in basis:
            k = rng.randint(-coeff_bound, coeff_bound)
            if k:
                c = c + bvec * k
        terms[e] = terms[e] + c if e in terms else c
    return TwistedElem(ring, terms)


def rank_report(ring: TwistedRingSpec, deg_A: int) -> tuple[int, Report]:
    """Rank of the truncated monomial module over the center-coefficient ring.

    Every monomial x^e with e_i < 2n_i is checked to equal a unit of A times
    t^q x^rem with rem_i < n_i, so the truncated monomials span; their count
    times dim_K A is returned (n * dim A).
    """
    rep = Report()
    ts, _ = central_params(ring)
    for e in product(*(range(2 * n) for n in ring.orders)):
        q = [ek // n for ek, n in zip(e, ring.orders)]
        rem = tuple(ek % n for ek, n in zip(e, ring.orders))
        lhs = TwistedElem(ring, {tuple(e): ring.A.one()})
        rhs = ring.one()
        for i, qi in enumerate(q):
            rhs = rhs * ts[i] ** qi
        rhs = rhs * TwistedElem(ring, {rem: ring.A.one()})
        ok = len(rhs.terms) == 1 and tuple(e) in rhs.terms
        if ok:
            c = rhs.terms[tuple(e)]
            try:
                ok = ring.const(c.inverse()) * rhs == lhs
            except ZeroDivisionError:
                ok = False
        rep.add(f"reduce{tuple(e)}", ok)
    n = prod(ring.orders)
    return n * deg_A * deg_A, rep


@dataclass
class Numerics:
    deg: int
    ind: int
    exp: int
    steps: list[str] = field(default_factory=list)


def numerics_iterated(orders: Sequence[int], deg_A: int, ind_A: int, exp_group: int,
                      local: Sequence[tuple[int, int]], n_total: int | None = None) -> Numerics:
    """Several twisting generators over a global field.

    deg = n deg A, ind = n ind A, exp = lcm(exp G, ind C) where C is the abelian
    crossed product; ind C is pinned by the local bounds at the listed places
    together with the global upper bound n ind A.  Fails loudly when the bounds
    do not meet.
    """
    n = n_total or prod(orders)
    lower, upper = 1, 1
    steps = []
    for n_w, ind_w in local:
        lo, hi, l_w = local_index_bounds(n_w, ind_w)
        steps.append(f"place with n_w={n_w}, ind D_w={ind_w}: l={l_w}, {lo} | ind C | {hi}")
        lower, upper = lcm(lower, lo), lcm(upper, hi)
    upper_global = n * ind_A
    if upper_global % upper:
        raise ValueError("local upper bound does not divide n ind A")
    steps.append(f"global: {lower} | ind C | {upper_global}")
    if lower != upper_global:
        raise ValueError("insufficient local data: index of the crossed product is not pinned down")
    ind_C = lower
    exp = lcm(exp_group, ind_C)
    steps.append(f"exp = lcm({exp_group}, {ind_C}) = {exp}")
    return Numerics(deg=n * deg_A, ind=n * ind_A, exp=exp, steps=steps)


def numerics_cyclic_global(n: int, deg_A: int, ind_A: int, local: Sequence[tuple[int, int]]) -> Numerics:
    """One twisting generator, global center: exp = lcm(n, n_w ind A_w)."""
    exp = exp_inertially_split(n, local)
    terms = ", ".join(str(a * b) for a, b in local)
    return Numerics(deg=n * deg_A, ind=n * ind_A, exp=exp, steps=[f"exp = lcm({n}, {terms}) = {exp}"])


def numerics_scalar_extension(n: int, deg_B: int, ind_B: int, exp_B: int) -> Numerics:
    """A = B tensor K twisted by id tensor sigma: ind = n ind B, exp = lcm(n, exp B)."""
    exp = lcm(n, exp_B)
    return Numerics(deg=n * deg_B, ind=n * ind_B, exp=exp, steps=[f"ind = {n}*{ind_B}", f"exp = lcm({n}, {exp_B}) = {exp}"])


def numerics_report(mode: str, **data) -> Numerics:
    if mode == "abelian-local":
        return numerics_iterated(**data)
    if mode == "cyclic-global":
        return numerics_cyclic_global(**data)
    if mode == "scalar-ext":
        return numerics_scalar_extension(**data)
    raise ValueError(f"unknown numerics mode {mode!r}")


# ---------------------------------------------------------------------------
# Scalar extension of the coefficient algebra by a quadratic field
# ---------------------------------------------------------------------------


def lift_symbol_algebra(D: SymbolAlgebra, K2: RelativeExtension, label: str = "D'") -> tuple[SymbolAlgebra, callable]:
    """D tensor K2 as a symbol algebra over K2, plus the coefficient-wise embedding."""
    D2 = SymbolAlgebra(K2, D.n, K2(D.zeta), K2(D.a), K2(D.b), label=label)

    def lift(x):
        return D2(tuple(K2(c) for c in D(x).coeffs))

    return D2, lift


def scalar_extension(ring: TwistedRingSpec, K2: RelativeExtension) -> tuple[TwistedRingSpec, callable]:
    """Same ring over D tensor K2, each sigma~_i tensored with the identity on the new generator."""
    D = ring.A
    D2, lift = lift_symbol_algebra(D, K2)
    y = K2.gen()
    sig2 = []
    for s in ring.sigma:
        base = RelAutomorphism(K2, s.base, y)
        sig2.append(AlgAutomorphism(D2, base, lift(s.image_i), lift(s.image_j)))
    u2 = [[lift(x) for x in row] for row in ring.u]
    fs = AbelianFactorSet(D2, sig2, u2, [lift(a) for a in ring.alpha], list(ring.orders))
    return TwistedRingSpec(fs), lift


def add_twist(ring: TwistedRingSpec, sigma_new, alpha_new, n_new: int, u_row: Sequence | None = None) -> TwistedRingSpec:
    """Append a generator x_{r+1} with x_{r+1} x_k = u_row[k] x_k x_{r+1}."""
    A = ring.A
    r = ring.r
    one = A.one()
    u_row = [A(x) for x in (u_row or [one] * r)]
    u = [list(row) + [u_row[k].inverse()] for k, row in enumerate(ring.u)]
    u.append(u_row + [one])
    fs = AbelianFactorSet(A, list(ring.sigma) + [sigma_new], u, list(ring.alpha) + [A(alpha_new)], list(ring.orders) + [n_new])
    return TwistedRingSpec(fs)
