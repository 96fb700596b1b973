"""Checkers for the local hypotheses that block Galois embeddings, and radical-extension criteria.

Certificates are plain data (residue sizes, ramification flags); the
checkers report one line per hypothesis.  Where the flags can be derived
from polynomial data (inertial via irreducibility mod p, totally ramified
via an Eisenstein shift, behaviour of p in Q(sqrt d)) helpers below do so,
so callers can cross-check what they feed in.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .exact import UniPoly, factor_degrees_mod_p, is_prime, prime_power_base
from .report import Report


@dataclass
class Verdict:
    report: Report
    conclusion: str
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.report.passed


@dataclass(frozen=True)
class CyclicObstructionCert:
    p: int
    n0: int
    m0: int
    q1: int
    q2: int
    v1_totally_ramified: bool
    v2_inertial: bool
    v1_unique_ext: bool = True
    v2_unique_ext: bool = True

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.n0 < 1 or self.m0 < 1:
            raise ValueError("n0 and m0 must be positive")
        for q in (self.q1, self.q2):
            if prime_power_base(q) is None:
                raise ValueError(f"residue size {q} is not a prime power")
            if q % self.p == 0:
                raise ValueError(f"residue size {q} has characteristic {self.p}")


def check_cyclic_obstruction(cert: CyclicObstructionCert) -> Verdict:
    p, n0, m0 = cert.p, cert.n0, cert.m0
    rep = Report()
    rep.add("(1) q1 = 1 mod p^n0", cert.q1 % p ** n0 == 1 % p ** n0, f"{cert.q1} mod {p ** n0} = {cert.q1 % p ** n0}")
    rep.add("(2) q1 != 1 mod p^(n0+1)", cert.q1 % p ** (n0 + 1) != 1, f"{cert.q1} mod {p ** (n0 + 1)} = {cert.q1 % p ** (n0 + 1)}")
    rep.add("(3) q2 != 1 mod p^m0", cert.q2 % p ** m0 != 1, f"{cert.q2} mod {p ** m0} = {cert.q2 % p ** m0}")
    rep.add("(4) v1 totally ramified", cert.v1_totally_ramified)
    rep.add("(5) v2 inertial", cert.v2_inertial)
    rep.add("unique extension of v1", cert.v1_unique_ext)
    rep.add("unique extension of v2", cert.v2_unique_ext)
    conclusion = "no conclusion"
    if rep.passed:
        conclusion = f"no degree-{p ** m0} extension L/K with v1, v2 extending uniquely is abelian over k"
        if n0 == 1 and m0 == 1:
            conclusion += f"; groups of order {p * p} are abelian, so no such L is Galois over k"
    notes = ["relaxation available: unique extension of v1 to L can be dropped (v1 totally ramified plus (2) already blocks the cyclic lift); the stricter form is checked"]
    return Verdict(rep, conclusion, notes)


@dataclass(frozen=True)
class BiquadraticObstructionCert:
    q1: int
    q2: int
    inertia_fields_distinct: bool
    K_not_real: bool
    v1_unique_ext: bool = True
    v2_unique_ext: bool = True
    base_real: bool = True


def check_biquadratic_obstruction(cert: BiquadraticObstructionCert) -> Verdict:
    rep = Report()
    rep.add("q1 = 3 mod 4", cert.q1 % 4 == 3, f"{cert.q1} mod 4 = {cert.q1 % 4}")
    rep.add("q2 = 3 mod 4", cert.q2 % 4 == 3, f"{cert.q2} mod 4 = {cert.q2 % 4}")
    rep.add("unique extension of v1", cert.v1_unique_ext)
    rep.add("unique extension of v2", cert.v2_unique_ext)
    rep.add("inertia fields distinct", cert.inertia_fields_distinct)
    rep.add("K not real", cert.K_not_real)
    rep.add("base field real", cert.base_real)
    conclusion = "no conclusion"
    if rep.passed:
        conclusion = (
            "no quadratic L/K with v1, v2 extending uniquely is Galois over k "
            "(order-8 cases: dihedral needs equal inertia fields; quaternion clashes with a real index-2 subfield; "
            "abelian forces q1 = 1 mod 4)"
        )
    return Verdict(rep, conclusion, [])


# ---------------------------------------------------------------------------
# Deriving certificate flags from polynomial data
# ---------------------------------------------------------------------------


def inertial_by_reduction(f, p: int) -> bool:
    """A monic integral f irreducible mod p: p is inert in Q[x]/(f) (and p does not divide the index)."""
    f = f if isinstance(f, UniPoly) else UniPoly(f)
    return factor_degrees_mod_p(f, p) == [f.degree]


def is_eisenstein(f, p: int) -> bool:
    f = f if isinstance(f, UniPoly) else UniPoly(f)
    cs = [int(c) for c in f.coeffs]
    return cs[-1] % p != 0 and all(c % p == 0 for c in cs[:-1]) and cs[0] % (p * p) != 0


def totally_ramified_by_eisenstein(f, p: int, shift: int) -> bool:
    """f(x + shift) Eisenstein at p certifies that p is totally ramified in Q[x]/(f)."""
    f = f if isinstance(f, UniPoly) else UniPoly(f)
    shifted = UniPoly([0])
    for c in reversed(f.coeffs):
        shifted = shifted * UniPoly([shift, 1]) + UniPoly([c])
    return is_eisenstein(shifted, p)


def quadratic_behaviour(d: int, p: int) -> str:
    """'ramified', 'inert' or 'split' for an odd prime p in Q(sqrt d)."""
    if p == 2:
        raise ValueError("odd primes only")
    if d % p == 0:
        return "ramified"
    return "split" if pow(d % p, (p - 1) // 2, p) == 1 else "inert"


def biquadratic_local_data(d1: int, d2: int, p: int) -> dict:
    """Behaviour of p in the three quadratic subfields of Q(sqrt d1, sqrt d2).

    p extends uniquely iff no quadratic subfield splits; the inertia field is
    the subfield in which p is inert (Q itself if none).
    """
    ds = {"d1": d1, "d2": d2, "d1d2": d1 * d2}
    beh = {k: quadratic_behaviour(d, p) for k, d in ds.items()}
    unique = "split" not in beh.values()
    inert = [ds[k] for k, b in beh.items() if b == "inert"]
    return {"behaviour": beh, "unique_extension": unique, "inertia_field": inert[0] if inert else 1}


def sqrt_not_in_field_certificate(d: int, square_roots: list[int], primes=range(3, 500)) -> int:
    """A prime p where every number in ``square_roots`` is a nonzero square and d is not.

    Such p splits completely in Q(sqrt s : s in square_roots), which therefore
    embeds in Q_p, where d has no square root.
    """
    for p in primes:
        if not is_prime(p) or p == 2 or d % p == 0 or any(s % p == 0 for s in square_roots):
            continue
        if all(quadratic_behaviour(s, p) == "split" for s in square_roots) and quadratic_behaviour(d, p) == "inert":
            return p
    raise ValueError("no certifying prime found in range")


# ---------------------------------------------------------------------------
# Radical extensions
# ---------------------------------------------------------------------------


def radical_irreducible_by_valuation(p: int, m: int, va: int) -> dict:
    """x^(p^m) - a is irreducible and totally ramified when p does not divide v(a)."""
    if va % p != 0:
        return {"decision": "irreducible-totally-ramified", "degree": p ** m}
    return {"decision": "criterion-not-applicable", "degree": None}


def distinct_radical_fields(p: int, va: int, vb: int, mu_p_in_base: bool = True, residue_char_ok: bool = True) -> dict:
    """k(a^(1/p)) and k(b^(1/p)) meet in k when p does not divide v(a) and p divides v(b)."""
    if mu_p_in_base and residue_char_ok and va % p != 0 and vb % p == 0:
        return {"decision": "distinct", "intersection": "base field"}
    return {"decision": "criterion-not-applicable"}


def embedding_guarantee(roots_present: bool, cyclic: bool, algebra_kind: str) -> str:
    """Whether a Galois maximal subfield is guaranteed; never asserts the converse."""
    if algebra_kind not in ("symbol", "p-algebra", "other"):
        raise ValueError(f"unknown algebra kind {algebra_kind!r}")
    if cyclic and ((algebra_kind == "symbol" and roots_present) or algebra_kind == "p-algebra"):
        return "crossed-product-guaranteed"
    return "no-guarantee"
