"""JSON bundle formats: schemas, parsers and encoders.

Rationals are written as integers, strings like "-7/2", or [num, den] pairs.
A field element is a rational, a list of power-basis coefficients, or an
object mapping "1" and tag names to rationals.  An algebra element maps
monomials ("1", "i", "j", "k", or "i^s j^t") to field elements.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .algebra import SymbolAlgebra
from .brauer import InvariantVector, Place
from .exact import as_rational, solve_linear
from .numfield import NFAutomorphism, NumberField, field_from_descriptor


class BundleError(ValueError):
    """Malformed or schema-violating input."""


RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
        {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
    ]
}
FIELD_ELEM = {
    "oneOf": [
        RATIONAL,
        {"type": "array", "items": RATIONAL},
        {"type": "object", "additionalProperties": RATIONAL},
    ]
}
ALG_ELEM = {"type": "object", "additionalProperties": FIELD_ELEM}
FIELD = {
    "type": "object",
    "required": ["min_poly"],
    "properties": {
        "label": {"type": "string"},
        "gen": {"type": "string"},
        "min_poly": {"type": "array", "items": RATIONAL, "minItems": 2},
        "tags": {"type": "object"},
    },
}

SCHEMAS: dict[str, dict] = {
    "factorset": {
        "type": "object",
        "required": ["field", "automorphisms", "algebra", "extensions", "alpha", "u", "orders"],
        "properties": {
            "field": FIELD,
            "automorphisms": {"type": "object", "additionalProperties": {"type": "object", "required": ["gen_image"]}},
            "algebra": {
                "type": "object",
                "required": ["n", "zeta", "a", "b"],
                "properties": {"n": {"type": "integer", "minimum": 2}, "zeta": FIELD_ELEM, "a": FIELD_ELEM, "b": FIELD_ELEM},
            },
            "extensions": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["base"],
                    "properties": {"base": {"type": "string"}, "image_i": ALG_ELEM, "image_j": ALG_ELEM,
                                   "side": {"enum": ["i", "j"]}, "multiplier": ALG_ELEM},
                    "oneOf": [{"required": ["image_i", "image_j"]}, {"required": ["side", "multiplier"]}],
                },
                "minItems": 1,
            },
            "alpha": {"type": "array", "items": ALG_ELEM},
            "u": ALG_ELEM,
            "orders": {"type": "array", "items": {"type": "integer", "minimum": 1}},
            "named": {"type": "object"},
        },
    },
    "invariants": {
        "type": "object",
        "required": ["places", "entries"],
        "properties": {
            "places": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["label", "kind"],
                    "properties": {"label": {"type": "string"}, "kind": {"enum": ["real", "complex", "finite"]},
                                   "q": {"type": "integer", "minimum": 2}},
                },
            },
            "entries": {"type": "object", "additionalProperties": RATIONAL},
            "perm": {"type": "object", "additionalProperties": {"type": "string"}},
            "check_residue_size": {"type": "boolean"},
        },
    },
    "certificate": {
        "type": "object",
        "required": ["type"],
        "properties": {"type": {"enum": ["cyclic", "biquadratic"]}},
        "allOf": [
            {
                "if": {"properties": {"type": {"const": "cyclic"}}},
                "then": {"required": ["p", "n0", "m0", "q1", "q2", "v1_totally_ramified", "v2_inertial"]},
            },
            {
                "if": {"properties": {"type": {"const": "biquadratic"}}},
                "then": {"required": ["q1", "q2", "inertia_fields_distinct", "K_not_real"]},
            },
        ],
    },
    "normsearch": {
        "type": "object",
        "required": ["field", "automorphisms", "algebra", "sigma"],
        "properties": {
            "field": FIELD,
            "sigma": {"type": "string"},
            "side": {"enum": ["i", "j"]},
            "denominator": {"type": "integer", "minimum": 1},
            "basis": {"type": "array", "items": {"type": "string"}},
        },
    },
}


def validate(data: Any, kind: str) -> None:
    try:
        jsonschema.validate(data, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        raise BundleError(f"{kind} bundle: {exc.message} at {list(exc.absolute_path)}") from exc


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise BundleError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise BundleError(f"{path}: {exc.strerror}") from exc


def bundled(name: str) -> Any:
    """Load one of the JSON bundles shipped in the package's data directory."""
    return json.loads(resources.files("ncprod").joinpath("data", name).read_text())


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("ncprod").joinpath("data", name)))


# ---------------------------------------------------------------------------
# Element parsing and encoding
# ---------------------------------------------------------------------------


def parse_rational(x) -> Fraction:
    if isinstance(x, list):
        if len(x) != 2 or x[1] == 0:
            raise BundleError(f"bad rational pair {x}")
        return Fraction(x[0], x[1])
    try:
        return as_rational(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise BundleError(f"bad rational {x!r}") from exc


def parse_field_elem(K, spec):
    if isinstance(spec, dict):
        out = K.zero()
        for key, val in spec.items():
            q = parse_rational(val)
            if key == "1":
                out = out + q
            else:
                try:
                    out = out + K.tag(key) * q
                except KeyError as exc:
                    raise BundleError(f"unknown tag {key!r}") from exc
        return out
    if isinstance(spec, list):
        return K([parse_rational(c) for c in spec])
    return K(parse_rational(spec))


_MONO = re.compile(r"^(?:i(?:\^(\d+))?)?\s*(?:j(?:\^(\d+))?)?$")


def parse_monomial(key: str, n: int) -> tuple[int, int]:
    named = {"1": (0, 0), "i": (1, 0), "j": (0, 1), "k": (1, 1)}
    if key in named:
        return named[key]
    m = _MONO.match(key.replace("*", " ").strip())
    if not m or not key.strip():
        raise BundleError(f"bad monomial {key!r}")
    s = int(m.group(1) or (1 if "i" in key else 0))
    t = int(m.group(2) or (1 if "j" in key else 0))
    if s >= n or t >= n:
        raise BundleError(f"monomial {key!r} out of range for degree {n}")
    return s, t


def parse_alg_elem(A: SymbolAlgebra, spec: dict):
    terms = {}
    for key, val in spec.items():
        terms[parse_monomial(key, A.n)] = parse_field_elem(A.K, val)
    return A(terms)


def tag_coordinates(K, x, names: list[str]) -> list[Fraction]:
    """Coordinates of x on the basis [1] + [tag values]; the basis must span K."""
    basis = [K.one()] + [K.tag(n) for n in names]
    cols = [b.coeffs for b in basis]
    m = [[cols[c][r] for c in range(len(basis))] for r in range(K.degree)]
    return solve_linear(m, list(x.coeffs))


def _fmt(q: Fraction):
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def encode_field_elem(K, x, names: list[str]) -> dict:
    coords = tag_coordinates(K, x, names)
    out = {}
    for name, c in zip(["1"] + names, coords):
        if c:
            out[name] = _fmt(c)
    return out or {"1": 0}


def encode_alg_elem(x, names: list[str]) -> dict:
    A = x.algebra
    labels = {(0, 0): "1", (1, 0): "i", (0, 1): "j", (1, 1): "k"}
    order = [(0, 0), (1, 0), (0, 1), (1, 1)] if A.n == 2 else [(s, t) for s in range(A.n) for t in range(A.n)]
    out = {}
    for s, t in order:
        c = x.coeff(s, t)
        if c:
            key = labels[(s, t)] if A.n == 2 else f"i^{s} j^{t}"
            out[key] = encode_field_elem(A.K, c, names)
    return out


# ---------------------------------------------------------------------------
# Bundle -> objects
# ---------------------------------------------------------------------------


def build_field(desc: dict) -> NumberField:
    try:
        K = field_from_descriptor(desc)
        if "search_basis" in desc:
            K.search_basis = [parse_field_elem(K, e) for e in desc["search_basis"]]
        return K
    except BundleError:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise BundleError(f"field descriptor: {exc}") from exc


def build_automorphisms(K, desc: dict) -> dict[str, NFAutomorphism]:
    auts = {"id": K.identity()}
    for name, d in desc.items():
        try:
            auts[name] = NFAutomorphism(K, parse_field_elem(K, d["gen_image"]))
        except ValueError as exc:
            raise BundleError(f"automorphism {name}: {exc}") from exc
    return auts


def build_algebra(K, desc: dict) -> SymbolAlgebra:
    try:
        return SymbolAlgebra(K, desc["n"], parse_field_elem(K, desc["zeta"]), parse_field_elem(K, desc["a"]),
                             parse_field_elem(K, desc["b"]), label=desc.get("label", "A"))
    except BundleError:
        raise
    except ValueError as exc:
        raise BundleError(f"algebra descriptor: {exc}") from exc


def build_invariants(data: dict) -> tuple[InvariantVector, dict[str, Place]]:
    try:
        places = {p["label"]: Place(p["label"], p["kind"], p.get("q")) for p in data["places"]}
        entries = {}
        for label, val in data["entries"].items():
            if label not in places:
                raise BundleError(f"entry for undeclared place {label!r}")
            entries[places[label]] = parse_rational(val)
        return InvariantVector(entries), places
    except BundleError:
        raise
    except ValueError as exc:
        raise BundleError(f"invariant table: {exc}") from exc
