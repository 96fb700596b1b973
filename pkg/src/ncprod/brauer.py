"""Places, local invariant vectors in Q/Z, and the index/exponent formulas over global fields."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from .exact import as_rational, lcm, prime_power_base

KINDS = ("real", "complex", "finite")


@dataclass(frozen=True)
class Place:
    label: str
    kind: str = "finite"
    q: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown place kind {self.kind!r}")
        if self.kind == "finite":
            if self.q is None or prime_power_base(self.q) is None:
                raise ValueError(f"finite place {self.label} needs a prime power residue size, got {self.q}")
        elif self.q is not None:
            raise ValueError("archimedean places carry no residue size")


def _mod1(x) -> Fraction:
    x = as_rational(x)
    return x - (x.numerator // x.denominator)


class InvariantVector:
    """Finitely supported map place -> Q/Z; values stored in [0, 1)."""

    def __init__(self, entries: Mapping[Place, object]):
        clean = {}
        for place, val in entries.items():
            v = _mod1(val)
            if place.kind == "real" and v not in (0, Fraction(1, 2)):
                raise ValueError(f"real place {place.label} must carry 0 or 1/2")
            if place.kind == "complex" and v != 0:
                raise ValueError(f"complex place {place.label} must carry 0")
            clean[place] = v
        self.entries = clean

    @property
    def places(self) -> list[Place]:
        return list(self.entries)

    def __getitem__(self, place) -> Fraction:
        if isinstance(place, str):
            place = self.place(place)
        return self.entries.get(place, Fraction(0))

    def place(self, label: str) -> Place:
        for p in self.entries:
            if p.label == label:
                return p
        raise KeyError(label)

    def __add__(self, other: "InvariantVector") -> "InvariantVector":
        out = dict(self.entries)
        for p, v in other.entries.items():
            out[p] = out.get(p, 0) + v
        return InvariantVector(out)

    def __neg__(self):
        return InvariantVector({p: -v for p, v in self.entries.items()})

    def __eq__(self, other):
        if not isinstance(other, InvariantVector):
            return NotImplemented
        keys = set(self.entries) | set(other.entries)
        return all(self[p] == other[p] for p in keys)

    def local_index(self, place) -> int:
        return self[place].denominator

    def __repr__(self):
        return "InvariantVector({" + ", ".join(f"{p.label}: {v}" for p, v in self.entries.items()) + "})"


def sum_zero(iv: InvariantVector) -> bool:
    return _mod1(sum(iv.entries.values(), Fraction(0))) == 0


def exponent(iv: InvariantVector) -> int:
    """lcm of the orders of the entries; equals the index over a global field."""
    if not sum_zero(iv):
        raise ValueError("invariants do not sum to zero in Q/Z")
    return lcm(*(v.denominator for v in iv.entries.values()))


@dataclass
class ExtensionLocalData:
    """For each place w of the top field: the place v below it and the local degree n_w."""

    top: dict[Place, tuple[Place, int]] = field(default_factory=dict)

    def add(self, w: Place, v: Place, n_w: int) -> None:
        if n_w < 1:
            raise ValueError("local degree must be positive")
        self.top[w] = (v, n_w)


def extend_scalars(iv: InvariantVector, data: ExtensionLocalData) -> InvariantVector:
    """inv_w = n_w * inv_v, reduced mod 1."""
    out = {}
    for w, (v, n_w) in data.top.items():
        out[w] = _mod1(n_w * iv[v])
    return InvariantVector(out)


def deuring_criterion(iv: InvariantVector, perm: Mapping[Place, Place], check_residue_size: bool = False) -> bool:
    """Does the permutation of places leave the invariant vector unchanged?

    Place kinds must be preserved.  Residue sizes are compared only when
    ``check_residue_size`` is set (see the decisions ledger: a genuine
    automorphism may exchange places over different primes of the base).
    """
    for w, w2 in perm.items():
        if w.kind != w2.kind:
            raise ValueError(f"permutation sends {w.label} ({w.kind}) to {w2.label} ({w2.kind})")
        if check_residue_size and w.q != w2.q:
            raise ValueError(f"permutation changes residue size at {w.label}")
    if sorted(p.label for p in perm) != sorted(p.label for p in perm.values()):
        raise ValueError("map is not a permutation of its support")
    support = set(iv.entries) | set(perm)
    return all(iv[perm.get(w, w)] == iv[w] for w in support)


def exp_inertially_split(n: int, data: Sequence[tuple[int, int]]) -> int:
    """lcm(n, n_w * ind_w over the listed places)."""
    if n < 1 or any(a < 1 or b < 1 for a, b in data):
        raise ValueError("all inputs must be positive")
    return lcm(n, *(a * b for a, b in data))


def local_index_bounds(n_w: int, ind_Dw: int) -> tuple[int, int, int]:
    """(lower, upper, l) with lower | ind A_v | upper, where l is the largest divisor of n_w prime to ind_Dw."""
    if n_w < 1 or ind_Dw < 1:
        raise ValueError("inputs must be positive")
    l = n_w
    while gcd(l, ind_Dw) != 1:
        l //= gcd(l, ind_Dw)
    upper = n_w * ind_Dw
    return upper // l, upper, l


def local_index_exact_prime_power(n_w: int, ind_Dw: int) -> int | None:
    """If n_w is a power of p and p | ind_Dw the index is exactly n_w * ind_Dw."""
    base = prime_power_base(n_w)
    if base is not None and n_w > 1 and ind_Dw % base == 0:
        return n_w * ind_Dw
    return None


def lcm_exponent_transfer(n: int, expA: int, expB: int) -> bool:
    return lcm(n, expA) == lcm(n, expB)


def cyclic_local_invariant(frobenius_power: int, n: int, v_alpha: int) -> Fraction:
    """Local invariant of (L/K, tau, alpha) at an unramified place where tau^s is Frobenius.

    With Frobenius = tau^s the algebra is (L/K, Frob, alpha^(s^-1 mod n)), whose
    invariant is (s^-1 mod n) v(alpha) / n.
    """
    if gcd(frobenius_power, n) != 1:
        raise ValueError("Frobenius power must generate the cyclic group")
    s_inv = pow(frobenius_power, -1, n)
    return _mod1(Fraction(s_inv * v_alpha, n))
