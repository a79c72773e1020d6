"""JSON shapes for samples, generators, points, algebraic sets, results.

Exact values travel as canonical rational strings, approximate ones as JSON
numbers.  Exponent keys look like "(2,0)"; bare integers are accepted for
univariate keys.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import approx, rational_format, rational_parse
from .errors import MalformedLiteral, SpecInvalid
from .poly import MonomialOrder, Poly
from .prony import SampleOracle
from .relative import AlgebraicSet
from .structures import (
    chebpoly_oracle,
    chebsum_oracle,
    decode_chebyshev_support,
    decode_gaussian,
    decode_kronecker,
    decode_monomial_support,
    expsum_oracle,
    gaussian_oracle,
    kronecker_oracle,
    operator_oracle,
    polynomial_oracle,
)
from .vanish import PointSet


def scalar_to_json(value, exact=True):
    if exact:
        return rational_format(value)
    return approx(value)


def scalar_from_json(value, exact=True):
    if exact:
        if not isinstance(value, str):
            raise MalformedLiteral(f"exact values are rational strings, got {value!r}")
        return rational_parse(value)
    return approx(value)


def exponent_key(alpha):
    return "(" + ",".join(str(a) for a in alpha) + ")"


def parse_exponent_key(text, n=None):
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p.strip() for p in body.split(",")] if body else []
    alpha = tuple(int(p) for p in parts if p != "")
    if n is not None and len(alpha) != n:
        raise SpecInvalid(f"exponent key {text!r} has length {len(alpha)}, expected {n}")
    return alpha


def poly_from_json(obj, n, exact=True):
    terms = {}
    for key, value in obj["terms"].items():
        terms[parse_exponent_key(key, n)] = scalar_from_json(value, exact)
    return Poly(n, terms)


def poly_to_json(p, exact=True):
    return {
        "terms": {
            exponent_key(alpha): scalar_to_json(c, exact)
            for alpha, c in sorted(p.terms.items())
        }
    }


def points_to_json(points, exact=True):
    return {
        "n": points.n,
        "points": [
            [scalar_to_json(x, exact) for x in p] for p in sorted(points, key=_sort_key)
        ],
    }


def _sort_key(point):
    return tuple(float(x) for x in point)


def points_from_json(obj, exact=True):
    n = int(obj["n"])
    pts = [tuple(scalar_from_json(x, exact) for x in p) for p in obj["points"]]
    return PointSet(n, pts)


def samples_to_json(n, domain, items, exact=True):
    return {
        "n": n,
        "domain": domain,
        "field": "rational" if exact else "float",
        "samples": [
            {"index": list(idx), "value": scalar_to_json(v, exact)}
            for idx, v in sorted(items)
        ],
    }


def oracle_from_samples(obj):
    """Sample file -> (oracle, exact flag)."""
    n = int(obj["n"])
    domain = obj["domain"]
    field = obj.get("field", "rational")
    if field not in ("rational", "float"):
        raise SpecInvalid(f"unknown field {field!r}")
    exact = field == "rational"
    table = {}
    for entry in obj["samples"]:
        idx = tuple(int(k) for k in entry["index"])
        table[idx] = scalar_from_json(entry["value"], exact)
    return SampleOracle.from_table(n, domain, table), exact


class GeneratorRuntime:
    """Parsed generator: the oracle plus how to interpret recovered labels."""

    __slots__ = ("kind", "oracle", "exact", "structure", "decode", "payload")

    def __init__(self, kind, oracle, exact, structure, decode, payload=None):
        self.kind = kind
        self.oracle = oracle
        self.exact = exact
        self.structure = structure
        self.decode = decode
        self.payload = payload or {}

    def __repr__(self):
        return f"GeneratorRuntime({self.kind!r}, structure={self.structure!r})"


def generator_from_json(obj):
    kind = obj.get("kind")
    if kind == "expsum":
        n = int(obj["n"])
        domain = obj.get("domain", "nat")
        terms = [
            (rational_parse(t["coeff"]), tuple(rational_parse(b) for b in t["base"]))
            for t in obj["terms"]
        ]
        oracle = expsum_oracle(n, domain, terms)
        return GeneratorRuntime("expsum", oracle, True, "hankel", None)
    if kind == "polynomial":
        n = int(obj["n"])
        terms = {
            parse_exponent_key(k, n): rational_parse(v) for k, v in obj["terms"].items()
        }
        bases = (
            tuple(rational_parse(b) for b in obj["bases"]) if "bases" in obj else None
        )
        oracle, bases = polynomial_oracle(n, terms, bases)

        def decode(points, coefficients):
            alphas = decode_monomial_support(points, bases)
            return {
                "kind": "polynomial",
                "exponents": [list(a) for a in alphas],
                "coefficients": [rational_format(c) for c in coefficients],
            }

        return GeneratorRuntime("polynomial", oracle, True, "hankel", decode, {"bases": bases})
    if kind == "kronecker":
        n = int(obj["n"])
        terms = {
            parse_exponent_key(k, n): rational_parse(v) for k, v in obj["terms"].items()
        }
        degree_bound = int(obj["degree_bound"])
        base = rational_parse(obj.get("base", "2"))
        oracle = kronecker_oracle(n, terms, degree_bound, base)

        def decode(points, coefficients):
            alphas = decode_kronecker(points, degree_bound, n, base)
            return {
                "kind": "kronecker",
                "exponents": [list(a) for a in alphas],
                "coefficients": [rational_format(c) for c in coefficients],
            }

        return GeneratorRuntime("kronecker", oracle, True, "hankel", decode)
    if kind == "chebpoly":
        coeffs = {int(k): rational_parse(v) for k, v in obj["coeffs"].items()}
        base = rational_parse(obj.get("base", "2"))
        oracle = chebpoly_oracle(coeffs, base)

        def decode(points, coefficients):
            indices = decode_chebyshev_support(points, base)
            return {
                "kind": "chebyshev",
                "indices": indices,
                "coefficients": [rational_format(c) for c in coefficients],
            }

        return GeneratorRuntime("chebpoly", oracle, True, "chebyshev", decode)
    if kind == "chebsum":
        terms = [
            (rational_parse(t["coeff"]), rational_parse(t["point"])) for t in obj["terms"]
        ]
        oracle = chebsum_oracle(terms)
        return GeneratorRuntime("chebsum", oracle, True, "chebyshev", None)
    if kind == "gaussian":
        A = [[rational_parse(x) for x in row] for row in obj["A"]]
        terms = [(float(t["coeff"]), tuple(float(c) for c in t["center"])) for t in obj["terms"]]
        oracle = gaussian_oracle(A, terms)

        def decode(points, coefficients):
            centers, weights = decode_gaussian(A, points, coefficients)
            return {
                "kind": "gaussian",
                "centers": [list(c) for c in centers],
                "weights": weights,
            }

        return GeneratorRuntime("gaussian", oracle, False, "hankel", decode, {"A": A})
    if kind == "operator":
        phis = [[[rational_parse(x) for x in row] for row in m] for m in obj["phi"]]
        delta = [rational_parse(x) for x in obj["delta"]]
        start = [rational_parse(x) for x in obj["f"]]
        oracle = operator_oracle(phis, delta, start)
        return GeneratorRuntime("operator", oracle, True, "hankel", None)
    raise SpecInvalid(f"unknown generator kind {kind!r}")


def algebraic_set_from_json(obj):
    n = int(obj["n"])
    order = MonomialOrder(obj.get("order", "degrevlex"))
    gens = [poly_from_json(g, n) for g in obj["generators"]]
    return AlgebraicSet(n, gens, order)


def result_to_json(outcome, answer=None):
    exact = outcome.exact
    doc = {
        "support": [
            [scalar_to_json(x, exact) for x in p] for p in outcome.support
        ],
        "coefficients": [scalar_to_json(c, exact) for c in outcome.coefficients],
        "degree_used": outcome.degree_used,
        "mode": outcome.mode,
        "exact": exact,
        "evaluations": outcome.evaluation_count,
    }
    if answer is not None:
        doc["answer"] = answer
    return doc


def result_from_json(obj):
    exact = bool(obj["exact"])
    support = [tuple(scalar_from_json(x, exact) for x in p) for p in obj["support"]]
    coefficients = [scalar_from_json(c, exact) for c in obj["coefficients"]]
    return {
        "support": support,
        "coefficients": coefficients,
        "degree_used": int(obj["degree_used"]),
        "mode": obj["mode"],
        "exact": exact,
        "evaluations": int(obj["evaluations"]),
    }
