"""End-to-end replays of the three worked constructions from their JSON bundles.

Each ``run_*`` function returns a VerificationReport whose check ids are
stable (golden files pin them).  ``mutate`` names a single perturbation of
the bundle data; the mutation tables below list what each one changes.
"""
from __future__ import annotations

import copy
from fractions import Fraction
from math import gcd

from .algebra import AlgAutomorphism, inner_aut, norm_in_Ki, norm_in_Kj
from .brauer import (
    ExtensionLocalData,
    InvariantVector,
    Place,
    cyclic_local_invariant,
    deuring_criterion,
    exponent,
    extend_scalars,
    sum_zero,
)
from .certify import (
    BiquadraticObstructionCert,
    CyclicObstructionCert,
    biquadratic_local_data,
    check_biquadratic_obstruction,
    check_cyclic_obstruction,
    inertial_by_reduction,
    sqrt_not_in_field_certificate,
    totally_ramified_by_eisenstein,
)
from .exact import UniPoly, factor_degrees_mod_p, is_prime
from .factorset import AbelianFactorSet, verify_abelian_general, verify_abelian_r2
from .io import (
    BundleError,
    build_algebra,
    build_automorphisms,
    build_field,
    bundled,
    parse_alg_elem,
    parse_field_elem,
    parse_rational,
    validate,
)
from .numfield import NFAutomorphism, RelAutomorphism, RelativeExtension, aut_order, nf_norm, relative_discriminant, relative_norm
from .report import Report, VerificationReport, digest_of
from .residue import FiniteField, RelativeResidueMap, ResidueMap, tame_symbol
from .twisted import (
    TwistedRingSpec,
    central_params,
    numerics_cyclic_global,
    numerics_iterated,
    numerics_scalar_extension,
    rank_report,
    scalar_extension,
)

# ---------------------------------------------------------------------------
# Quaternion algebra over Q(sqrt3, sqrt-7): index 8, exponent 8
# ---------------------------------------------------------------------------

# name -> (target, how); applied to the parsed objects before any check runs
MUTATIONS_8 = {
    "u-times-2": ("u", "2"),
    "u-times-j": ("u", "j"),
    "alpha1-times-sqrt3": ("alpha1", "sqrt3"),
    "alpha1-times-sqrt-7": ("alpha1", "sqrt-7"),
    "alpha2-times-sqrt-7": ("alpha2", "sqrt-7"),
    "alpha2-times-sqrt3": ("alpha2", "sqrt3"),
    "lambda-negated": ("lambda", "-1"),
    "lambda-times-2": ("lambda", "2"),
    "mu-negated": ("mu", "-1"),
    "mu-times-2": ("mu", "2"),
}


class FactorSetBundle:
    """Parsed objects of a two-generator factor-set bundle; automorphisms are built unchecked so broken data can be reported."""

    def __init__(self, data: dict, mutate: str | None = None):
        validate(data, "factorset")
        self.data = data
        K = self.K = build_field(data["field"])
        self.auts = build_automorphisms(K, data["automorphisms"])
        D = self.D = build_algebra(K, data["algebra"])
        named = data.get("named", {})
        self.pi1 = parse_field_elem(K, named["pi1"]) if "pi1" in named else None
        self.pi2 = parse_field_elem(K, named["pi2"]) if "pi2" in named else None
        self.lambda0 = parse_alg_elem(D, named["lambda0"]) if "lambda0" in named else None
        self.mu0 = parse_alg_elem(D, named["mu0"]) if "mu0" in named else None
        self.ext_specs = []
        for e in data["extensions"]:
            if e["base"] not in self.auts:
                raise BundleError(f"extension refers to unknown automorphism {e['base']!r}")
            if "multiplier" in e:
                self.ext_specs.append((e["base"], e["side"], parse_alg_elem(D, e["multiplier"])))
            else:
                self.ext_specs.append((e["base"], None, (parse_alg_elem(D, e["image_i"]), parse_alg_elem(D, e["image_j"]))))
        self.alpha = [parse_alg_elem(D, a) for a in data["alpha"]]
        self.u = parse_alg_elem(D, data["u"])
        self.orders = list(data["orders"])
        if len(self.alpha) != len(self.ext_specs) or len(self.orders) != len(self.ext_specs):
            raise BundleError("alpha, orders and extensions must have the same length")
        if mutate:
            self._mutate(mutate)
        self.sigma_tilde = [self._extension(spec) for spec in self.ext_specs]

    def _factor(self, how: str):
        if how == "j":
            return self.D.j()
        if how.lstrip("-").isdigit():
            return self.D.scalar(self.K(int(how)))
        return self.D.scalar(self.K.tag(how))

    def _mutate(self, name: str):
        if name not in MUTATIONS_8:
            raise BundleError(f"unknown mutation {name!r}; choose from {', '.join(MUTATIONS_8)}")
        target, how = MUTATIONS_8[name]
        f = self._factor(how)
        if target == "u":
            self.u = self.u * f
        elif target in ("alpha1", "alpha2"):
            k = int(target[-1]) - 1
            self.alpha[k] = self.alpha[k] * f
        else:
            side = "i" if target == "lambda" else "j"
            for idx, (base, s, m) in enumerate(self.ext_specs):
                if s == side:
                    self.ext_specs[idx] = (base, s, m * f)

    def _extension(self, spec) -> AlgAutomorphism:
        base, side, m = spec
        D, sigma = self.D, self.auts[base]
        if side is None:
            return AlgAutomorphism(D, sigma, m[0], m[1], check=False)
        if side == "j":
            return AlgAutomorphism(D, sigma, m * D.i(), D.j(), check=False)
        return AlgAutomorphism(D, sigma, D.i(), m * D.j(), check=False)

    def factor_set(self) -> AbelianFactorSet:
        if len(self.sigma_tilde) != 2:
            raise BundleError("the index-8 replay expects two twisting generators")
        s1, s2 = self.sigma_tilde
        return AbelianFactorSet.rank_two(self.D, s1, s2, self.alpha[0], self.alpha[1], self.u, *self.orders)


def load_biquadratic(data: dict | None = None, mutate: str | None = None) -> FactorSetBundle:
    return FactorSetBundle(data if data is not None else bundled("biquadratic_index8.json"), mutate)


def _field_checks(rep: Report, bq: FactorSetBundle) -> None:
    K, auts = bq.K, bq.auts
    rep.add("field: minimal polynomial irreducible", bool(K.certificate), K.certificate)
    for name in ("sqrt3", "sqrt-7", "sqrt-21"):
        x = K.tag(name)
        d = int(name[4:])
        rep.add(f"field: ({name})^2 = {d}", x * x == d)
    s1, s2 = auts["sigma1"], auts["sigma2"]
    s3, s7 = K.tag("sqrt3"), K.tag("sqrt-7")
    rep.add("field: sigma1 negates sqrt3 and fixes sqrt-7", s1(s3) == -s3 and s1(s7) == s7)
    rep.add("field: sigma2 fixes sqrt3 and negates sqrt-7", s2(s3) == s3 and s2(s7) == -s7)
    ok = aut_order(s1) == 2 and aut_order(s2) == 2 and s1.compose(s2) == s2.compose(s1) and s1 != s2
    rep.add("field: Galois group is C2 x C2", ok)


def _norm_checks(rep: Report, bq: FactorSetBundle) -> None:
    a1, a2 = bq.auts["sigma1"], bq.auts["sigma2"]
    idK = bq.K.identity()
    n1 = relative_norm(bq.pi1, [idK, a1])
    n2 = relative_norm(bq.pi2, [idK, a2])
    rep.add("norm: pi1 sigma1(pi1) = -2", n1 == -2, f"got {n1}")
    rep.add("norm: pi2 sigma2(pi2) = 2", n2 == 2, f"got {n2}")
    nl = norm_in_Ki(bq.lambda0)
    nm = norm_in_Kj(bq.mu0)
    rep.add("norm: N_K(i)/K(lambda0) = -2", nl == -2, f"got {nl}")
    rep.add("norm: N_K(j)/K(mu0) = 2", nm == 2, f"got {nm}")


def _automorphism_checks(rep: Report, bq: FactorSetBundle) -> None:
    D = bq.D
    for k, ((base, side, m), st) in enumerate(zip(bq.ext_specs, bq.sigma_tilde), start=1):
        sigma = bq.auts[base]
        if side == "j":
            nrm, target = norm_in_Kj(m), sigma(D.a) / D.a
            rep.add(f"automorphism: sigma{k}~ multiplier norm = sigma{k}(a)/a", nrm == target, f"N = {nrm}")
        elif side == "i":
            nrm, target = norm_in_Ki(m), sigma(D.b) / D.b
            rep.add(f"automorphism: sigma{k}~ multiplier norm = sigma{k}(b)/b", nrm == target, f"N = {nrm}")
        bad = st.relation_failures()
        rep.add(f"automorphism: sigma{k}~ respects the defining relations", not bad, "; ".join(bad))
    named = {"i": (bq.lambda0, bq.pi2), "j": (bq.mu0, bq.pi1)}
    for k, (base, side, m) in enumerate(bq.ext_specs, start=1):
        if side in named and named[side][0] is not None:
            num, den = named[side]
            label = "lambda0/pi2" if side == "i" else "mu0/pi1"
            rep.add(f"automorphism: sigma{k}~ multiplier = {label}", m == num / den)


def hand_identities(bq: FactorSetBundle) -> Report:
    """The intermediate identities used when checking the relations by hand."""
    D, K = bq.D, bq.K
    i, j = D.i(), D.j()
    S1, S2 = bq.sigma_tilde
    s1 = bq.auts["sigma1"]
    p1, p2, l0, m0 = bq.pi1, bq.pi2, bq.lambda0, bq.mu0
    al1, al2, u = bq.alpha[0], bq.alpha[1], bq.u
    lb0 = (-1 - i) * s1(p1)
    mb0 = p2 - j
    rep = Report()
    rep.add("identity: sigma1~ fixes mu0, sigma2~ fixes lambda0", S1(m0) == m0 and S2(l0) == l0)
    rep.add("identity: sigma2~(mu0) = (2 + lambda0 j)/pi2", S2(m0) == (2 + l0 * j) / p2)
    rep.add("identity: sigma1~(conj lambda0) = -(pi1 + mu0 i)", S1(lb0) == -(p1 + m0 * i))
    up = (lb0 * m0 + 2) * (-1 / (2 * p2))
    rep.add("identity: sigma1~ sigma2~(u') = sigma2~ sigma1~(u') = u", S1(S2(up)) == u and S2(S1(up)) == u)
    rep.add("identity: sigma2~(mu0)(lambda0 mu0 - 2) = 2(lambda0 - mu0)", S2(m0) * (l0 * m0 - 2) == 2 * (l0 - m0))
    rep.add("identity: u = (lambda0 conj(mu0) - 2)/(2 sigma1(pi1))", u == (l0 * mb0 - 2) / (2 * s1(p1)))
    rep.add("identity: alpha1 = mu0 j/pi2, alpha2 = sqrt3 lambda0 i", al1 == m0 * j / p2 and al2 == K.tag("sqrt3") * l0 * i)
    rep.add("identity: sigma2~(alpha1) = (lambda0 - j) j/pi2", S2(al1) == (l0 - j) * j / p2)
    rhs = i.inverse() * (s1(p1) * i - mb0) / (s1(p1) ** 2 * K.tag("sqrt3"))
    try:
        inv_ok = S1(al2).inverse() == rhs
    except ZeroDivisionError:
        inv_ok = False
    rep.add("identity: sigma1~(alpha2)^-1 = i^-1(sigma1(pi1) i - conj mu0)/(sigma1(pi1)^2 sqrt3)", inv_ok)
    rep.add("identity: u sigma1~(u) alpha1 = sigma2~(alpha1)", u * S1(u) * al1 == S2(al1))
    try:
        ok = al2.inverse() * S2(u) * u == S1(al2).inverse()
    except ZeroDivisionError:
        ok = False
    rep.add("identity: alpha2^-1 sigma2~(u) u = sigma1~(alpha2)^-1", ok)
    return rep


def biquadratic_certificate(d1: int, d2: int, p1: int, p2: int, base_real: bool = True):
    """Certificate for Q(sqrt d1, sqrt d2) with flags derived from quadratic residue data at p1, p2."""
    loc1 = biquadratic_local_data(d1, d2, p1)
    loc2 = biquadratic_local_data(d1, d2, p2)
    cert = BiquadraticObstructionCert(
        q1=p1,
        q2=p2,
        inertia_fields_distinct=loc1["inertia_field"] != loc2["inertia_field"],
        K_not_real=d1 < 0 or d2 < 0,
        v1_unique_ext=loc1["unique_extension"],
        v2_unique_ext=loc2["unique_extension"],
        base_real=base_real,
    )
    return cert, loc1, loc2


def local_nonsplit(bq: FactorSetBundle) -> Report:
    """Hilbert symbol (a, b) = -1 at the places over 3 and 7 through residue fields.

    At 3: sqrt3 is a uniformizer (v(a) = 1, a/sqrt3 = pi1), the residue field is F3(eta), eta = sqrt-7.
    At 7: sqrt-7 is a uniformizer (v(b) = 1, b/sqrt-7 = pi2), the residue field is F7(theta), theta = sqrt3.
    """
    K, D = bq.K, bq.D
    s3, s7 = K.tag("sqrt3"), K.tag("sqrt-7")
    t = K.gen()
    rep = Report()
    # the primitive element is sqrt3 + sqrt-7
    rep.add("local: primitive element = sqrt3 + sqrt-7", t == s3 + s7)
    F9 = FiniteField(3, [1, 0, 1], name="eta")
    eta = F9.gen()
    r3 = ResidueMap(K, 3, F9, eta)
    ok = r3(s3) == 0 and r3(s7) == eta
    rep.add("local: residue map at 3 sends sqrt3 -> 0, sqrt-7 -> eta", ok)
    b_res = r3(D.b)
    rep.add("local: b = 1 - eta at 3", b_res == 1 - eta, f"got {b_res}")
    nb = b_res * (b_res ** 3)  # norm F9 -> F3 is x^(1+3)
    rep.add("local: norm of 1 - eta is -1, not a square mod 3", nb == -1 and pow(3 - 1, 1, 3) != 1)
    a_unit = r3(D.a / s3)
    sym3 = tame_symbol(1, a_unit, 0, b_res)
    rep.add("local: (a, b) = -1 at the place over 3", sym3 == -1, f"symbol {sym3}")
    F49 = FiniteField(7, [-3, 0, 1], name="theta")
    theta = F49.gen()
    r7 = ResidueMap(K, 7, F49, theta)
    rep.add("local: residue map at 7 sends sqrt3 -> theta, sqrt-7 -> 0", r7(s3) == theta and r7(s7) == 0)
    a_res = r7(D.a)
    rep.add("local: a = 3 + theta at 7", a_res == 3 + theta, f"got {a_res}")
    na = a_res * (a_res ** 7)
    rep.add("local: norm of 3 + theta is -1, not a square mod 7", na == -1 and pow(7 - 1, 3, 7) != 1)
    b_unit = r7(D.b / s7)
    sym7 = tame_symbol(0, a_res, 1, b_unit)
    rep.add("local: (a, b) = -1 at the place over 7", sym7 == -1, f"symbol {sym7}")
    return rep


def _ring_checks(rep: Report, fs: AbelianFactorSet, deg_A: int, expect_rank: int):
    try:
        ring = TwistedRingSpec(fs)
    except ValueError as exc:
        rep.add("ring: factor set accepted", False, str(exc))
        return None
    rep.add("ring: factor set accepted", True)
    x = [ring.x(k + 1) for k in range(ring.r)]
    for a in range(ring.r):
        for b in range(a + 1, ring.r):
            ok = x[b] * x[a] == ring.const(fs.u[b][a]) * x[a] * x[b]
            rep.add(f"ring: x{b + 1} x{a + 1} = u{b + 1}{a + 1} x{a + 1} x{b + 1}", ok)
    _, cent = central_params(ring)
    rep.extend(cent, "ring: ")
    rank, rr = rank_report(ring, deg_A)
    rep.add(f"ring: rank over the center-coefficient ring = {expect_rank}", rr.passed and rank == expect_rank,
            f"{len(rr.checks)} monomials reduced, rank {rank}")
    return ring


def run_example8(data: dict | None = None, mutate: str | None = None) -> VerificationReport:
    data = data if data is not None else bundled("biquadratic_index8.json")
    rep = VerificationReport(command="example8", digest=digest_of(data))
    bq = load_biquadratic(data, mutate)
    if mutate:
        rep.notes.append(f"mutation applied: {mutate}")
    _field_checks(rep, bq)
    _norm_checks(rep, bq)
    _automorphism_checks(rep, bq)
    fs = bq.factor_set()
    rep.extend(verify_abelian_r2(fs), "relation: ")
    rep.extend(hand_identities(bq))
    loc = data.get("local", {})
    d1, d2 = loc.get("quadratic_radicands", [3, -7])
    p1, p2 = loc.get("primes", [3, 7])
    cert, l1, l2 = biquadratic_certificate(d1, d2, p1, p2)
    verdict = check_biquadratic_obstruction(cert)
    rep.extend(verdict.report, "certificate: ")
    rep.notes.append(f"inertia fields: Q(sqrt{l1['inertia_field']}) at {p1}, Q(sqrt{l2['inertia_field']}) at {p2}")
    rep.notes.append(verdict.conclusion)
    rep.extend(local_nonsplit(bq))
    _ring_checks(rep, fs, bq.D.n, 16)
    ind_D = loc.get("index_coefficient_algebra", 2)
    exp_G = loc.get("exponent_group", 2)
    # the place over 3 extends uniquely: local degree 4, and D stays division there
    num = numerics_iterated(bq.orders, bq.D.n, ind_D, exp_G, [(4, ind_D)])
    rep.add("numerics: index 8", num.ind == 8, "; ".join(num.steps))
    rep.add("numerics: exponent 8", num.exp == 8)
    rep.values.update({"deg": num.deg, "ind": num.ind, "exp": num.exp})
    return rep


# ---------------------------------------------------------------------------
# Cyclic algebra over the real cubic field: index 9, exponent 9
# ---------------------------------------------------------------------------

MUTATIONS_9 = {
    "frobenius-w1-tau-squared": "claim tau^2 as the Frobenius at w1",
    "invariant-w2-one-third": "record inv_w2 = 1/3",
}


def _shift(f: UniPoly, c: int) -> UniPoly:
    out = UniPoly([0])
    for coef in reversed(f.coeffs):
        out = out * UniPoly([c, 1]) + UniPoly([coef])
    return out


def _rel_elem(L, K, spec):
    return L([parse_field_elem(K, c) for c in spec])


def _valuation_from_norm(x, p: int, f: int) -> int:
    """Valuation at the only place over p (residue degree f) read off the absolute norm."""
    n = nf_norm(x)
    v = 0
    num, den = n.numerator, n.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    if v % f:
        raise ValueError("norm valuation not divisible by the residue degree")
    return v // f


def run_example9(data: dict | None = None, mutate: str | None = None) -> VerificationReport:
    data = copy.deepcopy(data if data is not None else bundled("cyclic_cubic_index9.json"))
    rep = VerificationReport(command="example9", digest=digest_of(data))
    if mutate:
        if mutate not in MUTATIONS_9:
            raise BundleError(f"unknown mutation {mutate!r}; choose from {', '.join(MUTATIONS_9)}")
        places = {p["label"]: p for p in data["places"]}
        if mutate == "frobenius-w1-tau-squared":
            places["w1"]["frobenius"] = 2
        else:
            places["w2"]["invariant"] = "1/3"
        rep.notes.append(f"mutation applied: {mutate}")
    try:
        K = build_field(data["field"])
        sigma = NFAutomorphism(K, parse_field_elem(K, data["sigma"]["gen_image"]))
        ext = data["extension"]
        L = RelativeExtension(K, [parse_field_elem(K, c) for c in ext["g"]], label=ext.get("label", "L"),
                              gen_name=ext.get("gen", "b"))
        tau_img = _rel_elem(L, K, ext["tau"])
        tau2_img = _rel_elem(L, K, ext["tau_squared"])
        pi = parse_field_elem(K, data["uniformizer"])
        alpha = parse_field_elem(K, data["cyclic_parameter"])
    except (KeyError, TypeError) as exc:
        raise BundleError(f"cyclic bundle: {exc}") from exc
    f = K.min_poly
    beta = L.gen()

    # base field
    rep.add("field: f irreducible mod 2", factor_degrees_mod_p(f, 2) == [3], f"degrees {factor_degrees_mod_p(f, 2)}")
    sh = _shift(f, 2)
    rep.add("field: f = (x-2)^3 mod 7", all(int(c) % 7 == 0 for c in sh.coeffs[:-1]) and sh.lc == 1)
    rep.add("field: sigma has order 3", aut_order(sigma) == 3)

    # the extension L/K and tau
    def g_at(x):
        acc = L.zero()
        for c in reversed(L.g):
            acc = acc * x + L.embed(c)
        return acc

    rep.add("extension: g(tau(beta)) = 0", g_at(tau_img).is_zero())
    rep.add("extension: g(tau^2(beta)) = 0", g_at(tau2_img).is_zero())
    try:
        tau = RelAutomorphism(L, K.identity(), tau_img)
        tau2 = tau.compose(tau)
        rep.add("extension: tau o tau = listed tau^2", tau2.gen_image == tau2_img)
        rep.add("extension: tau^3 = id", tau2.compose(tau).is_identity() and not tau.is_identity())
    except ValueError as exc:
        rep.add("extension: tau is an automorphism", False, str(exc))
        return rep

    # residue fields, Frobenius and valuations at w1, w2
    iv_entries, base_entries, local_data = {}, {}, ExtensionLocalData()
    res_maps = {}
    for pl in data["places"]:
        lab, p = pl["label"], pl["p"]
        degs = factor_degrees_mod_p(f, p)
        rep.add(f"{lab}: factorization of f mod {p}", degs == pl["factorization_mod_p"]["degrees"], f"degrees {degs}")
        base = FiniteField(p) if pl["base_modulus"] is None else FiniteField(p, pl["base_modulus"], name="abar")
        root = base.gen() if pl["base_root"] == "gen" else base(pl["base_root"])
        rm = ResidueMap(K, p, base, root)
        top = base.extension([rm(c) for c in L.g], name="bbar")
        rrm = RelativeResidueMap(L, rm, top, top.gen())
        res_maps[lab] = rrm
        q = base.size
        rep.add(f"{lab}: g has no root in the residue field F_{q}", rrm.certifies_irreducible())
        exp_res = rrm(_rel_elem(L, K, pl["frobenius_residue"]))
        s = pl["frobenius"]
        claimed = tau if s == 1 else tau2
        rep.add(f"{lab}: beta^{q} = listed residue", rrm.gen_image ** q == exp_res)
        rep.add(f"{lab}: Frobenius is tau^{s}", rrm(claimed.gen_image) == rrm.gen_image ** q)
        kind = pl["ramification"]["kind"]
        if kind == "totally-ramified":
            ok = totally_ramified_by_eisenstein(f, p, pl["ramification"]["eisenstein_shift"])
            f_res = 1
        else:
            ok = inertial_by_reduction(f, p)
            f_res = K.degree
        rep.add(f"{lab}: {kind} over {p}", ok)
        v = _valuation_from_norm(alpha, p, f_res)
        rep.add(f"{lab}: v(2 pi) = 1", v == 1, f"v = {v}")
        inv = cyclic_local_invariant(s, 3, v)
        listed = parse_rational(pl["invariant"])
        rep.add(f"{lab}: invariant from Frobenius and valuation = listed {listed}", inv == listed, f"computed {inv}")
        w = Place(lab, "finite", q)
        vplace = Place(f"v{lab[1:]}", "finite", p)
        iv_entries[w] = listed
        base_entries[vplace] = parse_rational(pl["base_invariant"])
        local_data.add(w, vplace, K.degree)

    # norms and discriminant
    rep.add("norm: N(pi) = 7", nf_norm(pi) == 7, f"got {nf_norm(pi)}")
    d = data["discriminant"]
    root = parse_field_elem(K, d["square_root"])
    nroot = nf_norm(root)
    rep.add(f"norm: N(a^2 - a + 7) = {d['norm_of_root']}", nroot == d["norm_of_root"], f"got {nroot}")
    rep.add(f"norm: {d['norm_of_root']} is prime", is_prime(d["norm_of_root"]))
    disc = relative_discriminant(L.g)
    rep.add("discriminant: disc(g) = 20a^2 - 19a + 46", disc == parse_field_elem(K, d["value"]), f"got {disc}")
    rep.add("discriminant: disc(g) = (a^2 - a + 7)^2", disc == root * root)
    rep.add("discriminant: unit at w1 and w2", gcd(int(nroot), 14) == 1)

    # invariants
    iv = InvariantVector(iv_entries)
    lifted = extend_scalars(InvariantVector(base_entries), local_data)
    rep.add("invariants: scalar extension of (1/9, -1/9) by K matches", lifted == iv, repr(lifted))
    rep.add("invariants: sum to zero", sum_zero(iv))
    try:
        e = exponent(iv)
        rep.add("invariants: exponent 3", e == 3, f"exponent {e}")
    except ValueError as exc:
        rep.add("invariants: exponent 3", False, str(exc))
    places = {p.label: p for p in iv.places}
    perm = {places[a]: places[b] for a, b in data["deuring_permutation"].items()}
    rep.add("deuring: sigma-induced permutation preserves invariants", sum_zero(iv) and deuring_criterion(iv, perm))

    # obstruction certificate, flags derived above
    c = data["certificate"]
    w1, w2 = data["places"][0], data["places"][1]
    cert = CyclicObstructionCert(
        p=c["p"], n0=c["n0"], m0=c["m0"], q1=w1["p"], q2=w2["p"],
        v1_totally_ramified=totally_ramified_by_eisenstein(f, w1["p"], w1["ramification"]["eisenstein_shift"]),
        v2_inertial=inertial_by_reduction(f, w2["p"]),
    )
    verdict = check_cyclic_obstruction(cert)
    rep.extend(verdict.report, "certificate: ")
    rep.notes.append(verdict.conclusion)
    rep.notes.extend(verdict.notes)

    # numerics: one twisting generator over a global center
    local = [(K.degree, 3), (K.degree, 3)]
    num = numerics_cyclic_global(3, 3, 3, local)
    rep.add("numerics: index 9", num.ind == 9)
    rep.add("numerics: exponent 9", num.exp == 9, "; ".join(num.steps))
    rep.values.update({"deg": num.deg, "ind": num.ind, "exp": num.exp})
    return rep


# ---------------------------------------------------------------------------
# Scalar extension by sqrt37 plus a third generator: index 16, exponent 8
# ---------------------------------------------------------------------------

MUTATIONS_16 = {"no-sign-flip": "x3 acts trivially on sqrt37"}


def run_example16(data: dict | None = None, mutate: str | None = None) -> VerificationReport:
    data = copy.deepcopy(data if data is not None else bundled("sqrt37_index16.json"))
    rep = VerificationReport(command="example16", digest=digest_of(data))
    if mutate:
        if mutate not in MUTATIONS_16:
            raise BundleError(f"unknown mutation {mutate!r}; choose from {', '.join(MUTATIONS_16)}")
        data["third_generator"]["negate_new_root"] = False
        rep.notes.append(f"mutation applied: {mutate}")
    bq = load_biquadratic(bundled(data["base_bundle"]))
    K, D = bq.K, bq.D
    d = data["adjoin_square_root"]

    radicands = bq.data.get("local", {}).get("quadratic_radicands", [3, -7])
    p = sqrt_not_in_field_certificate(d, radicands)
    rep.add(f"field: sqrt{d} not in K", True, f"mod {p}: {radicands} are squares, {d} is not")
    K2 = RelativeExtension(K, [-d, 0, 1], label=f"K(sqrt{d})", gen_name="r",
                           certificate=f"{d} is a non-square mod {p}, where K embeds in Q_{p}")
    r = K2.gen()

    ring8 = TwistedRingSpec(bq.factor_set())
    try:
        ring_ext, lift = scalar_extension(ring8, K2)
        rep.add("extension: factor set over D tensor K(sqrt37) accepted", True)
    except ValueError as exc:
        rep.add("extension: factor set over D tensor K(sqrt37) accepted", False, str(exc))
        return rep
    D2 = ring_ext.A
    tg = data["third_generator"]
    flip = RelAutomorphism(K2, K.identity(), -r if tg["negate_new_root"] else r)
    sigma3 = AlgAutomorphism(D2, flip, D2.i(), D2.j())
    rep.add("extension: sigma3 has order 2 on K(sqrt37)", aut_order(flip) == 2)
    fs3 = ring_ext.fs
    fs3 = AbelianFactorSet(D2, list(fs3.sigma_tilde) + [sigma3],
                           [list(row) + [D2.one()] for row in fs3.u] + [[D2.one()] * 3],
                           list(fs3.alpha) + [D2(tg["alpha"])], list(fs3.orders) + [tg["order"]])
    rel = verify_abelian_general(fs3)
    rep.extend(rel, "relation: ")
    if not rel.passed:
        return rep
    ring = TwistedRingSpec(fs3, check=False)
    x1, x2, x3 = ring.x(1), ring.x(2), ring.x(3)
    sq = ring.const(D2.scalar(r))
    rep.add(f"ring: x3 sqrt{d} = -sqrt{d} x3", x3 * sq == -(sq * x3))
    rep.add("ring: x3 commutes with x1 and x2", x3 * x1 == x1 * x3 and x3 * x2 == x2 * x3)
    gens = [lift(D.i()), lift(D.j()), lift(D.scalar(K.tag("sqrt3"))), lift(D.scalar(K.tag("sqrt-7")))]
    rep.add("ring: x3 commutes with D tensor 1", all(x3 * ring.const(g) == ring.const(g) * x3 for g in gens))
    _, cent = central_params(ring)
    rep.extend(cent, "ring: ")

    cert, _, _ = biquadratic_certificate(radicands[0], radicands[1], 3, 7, base_real=data.get("base_field_real", True) and d > 0)
    split = all(pow(d % q, (q - 1) // 2, q) == 1 for q in (3, 7))
    rep.add(f"certificate: 3 and 7 split in Q(sqrt{d})", split)
    verdict = check_biquadratic_obstruction(cert)
    rep.extend(verdict.report, "certificate: ")
    rep.notes.append(verdict.conclusion)

    cn = data["coefficient_numerics"]
    num = numerics_scalar_extension(tg["order"], cn["deg"], cn["ind"], cn["exp"])
    rep.add("numerics: index 16", num.ind == 16, "; ".join(num.steps))
    rep.add("numerics: exponent 8", num.exp == 8)
    rep.values.update({"deg": num.deg, "ind": num.ind, "exp": num.exp})
    return rep
