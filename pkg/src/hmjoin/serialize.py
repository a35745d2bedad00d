"""Canonical JSON forms for graphs, join specifications, universal
parameters, spectral reports, and cospectral certificates.

Every exact number is a decimal-free fraction string "p/q" ("p" when the
denominator is 1); polynomials are arrays of coefficient strings, lowest
degree first.  Dumps use a fixed key order, two-space indentation, and a
trailing newline, so identical inputs produce identical bytes.  Parsers
report failures as SpecValidationError carrying a JSON-pointer path."""

import json
import re
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

from .cospectral import CospectralCertificate, GeneralizedJoinSpec
from .errors import HmJoinError, SpecValidationError
from .graphs import Graph, UniversalParams, make_named
from .joins import IndexingMap, JoinSpec
from .polynomials import Polynomial, RationalFunction
from .spectra import SpectralReport

_FRACTION_RE = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


def _fail(pointer: str, message: str):
    raise SpecValidationError(message, pointer)


def _expect_object(data, pointer: str) -> Dict[str, Any]:
    if not isinstance(data, dict):
        _fail(pointer, "expected a JSON object")
    return data


def _expect_array(data, pointer: str) -> List[Any]:
    if not isinstance(data, list):
        _fail(pointer, "expected a JSON array")
    return data


def _expect_int(data, pointer: str) -> int:
    if isinstance(data, bool) or not isinstance(data, int):
        _fail(pointer, "expected an integer")
    return data


def _expect_string(data, pointer: str) -> str:
    if not isinstance(data, str):
        _fail(pointer, "expected a string")
    return data


def _check_keys(data: Dict[str, Any], pointer: str, required, optional=()):
    for key in required:
        if key not in data:
            _fail(pointer, "missing required key %r" % key)
    allowed = set(required) | set(optional)
    for key in data:
        if key not in allowed:
            _fail(pointer + "/" + key, "unknown key %r" % key)


# ---------------------------------------------------------------------------
# fractions and polynomials


def fraction_to_json(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def fraction_from_json(data, pointer: str = "") -> Fraction:
    if isinstance(data, bool):
        _fail(pointer, "expected a fraction string, got a boolean")
    if isinstance(data, int):
        return Fraction(data)
    if not isinstance(data, str):
        _fail(pointer, "expected a fraction string")
    match = _FRACTION_RE.match(data)
    if match is None:
        _fail(pointer, "malformed fraction string %r" % data)
    num = int(match.group(1))
    den = match.group(2)
    if den is None:
        return Fraction(num)
    d = int(den)
    if d == 0:
        _fail(pointer, "fraction denominator is zero")
    return Fraction(num, d)


def polynomial_to_json(p: Polynomial) -> List[str]:
    return [fraction_to_json(c) for c in p.coeffs]


def polynomial_from_json(data, pointer: str = "") -> Polynomial:
    arr = _expect_array(data, pointer)
    return Polynomial([fraction_from_json(c, "%s/%d" % (pointer, i))
                       for i, c in enumerate(arr)])


def ratfun_to_json(r: RationalFunction) -> Dict[str, List[str]]:
    return {"num": polynomial_to_json(r.num), "den": polynomial_to_json(r.den)}


def ratfun_from_json(data, pointer: str = "") -> RationalFunction:
    obj = _expect_object(data, pointer)
    _check_keys(obj, pointer, ("num", "den"))
    return RationalFunction(polynomial_from_json(obj["num"], pointer + "/num"),
                            polynomial_from_json(obj["den"], pointer + "/den"))


# ---------------------------------------------------------------------------
# graphs


def graph_to_json(g: Graph) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"n": g.n, "edges": [[u, v] for u, v in g.sorted_edges()]}
    if g.labels is not None:
        doc["labels"] = list(g.labels)
    return doc


def graph_from_json(data, pointer: str = "") -> Graph:
    obj = _expect_object(data, pointer)
    if "family" in obj:
        _check_keys(obj, pointer, ("family",), ("params",))
        name = _expect_string(obj["family"], pointer + "/family")
        raw = obj.get("params", [])
        arr = _expect_array(raw, pointer + "/params")
        params = [_expect_int(x, "%s/params/%d" % (pointer, i))
                  for i, x in enumerate(arr)]
        try:
            return make_named(name, params)
        except HmJoinError as exc:
            _fail(pointer, str(exc))
    _check_keys(obj, pointer, ("n", "edges"), ("labels",))
    n = _expect_int(obj["n"], pointer + "/n")
    edges = []
    for i, pair in enumerate(_expect_array(obj["edges"], pointer + "/edges")):
        here = "%s/edges/%d" % (pointer, i)
        arr = _expect_array(pair, here)
        if len(arr) != 2:
            _fail(here, "an edge is a pair of vertex ids")
        edges.append((_expect_int(arr[0], here + "/0"),
                      _expect_int(arr[1], here + "/1")))
    labels = None
    if "labels" in obj:
        labels = [_expect_string(x, "%s/labels/%d" % (pointer, i))
                  for i, x in enumerate(_expect_array(obj["labels"], pointer + "/labels"))]
    try:
        return Graph(n, edges, labels)
    except HmJoinError as exc:
        _fail(pointer, str(exc))


# ---------------------------------------------------------------------------
# universal parameters


def params_to_json(p: UniversalParams) -> Dict[str, str]:
    return {
        "alpha": fraction_to_json(p.alpha),
        "beta": fraction_to_json(p.beta),
        "gamma": fraction_to_json(p.gamma),
        "delta": fraction_to_json(p.delta),
    }


def params_from_json(data, pointer: str = "") -> UniversalParams:
    if isinstance(data, str):
        try:
            return UniversalParams.preset(data)
        except HmJoinError as exc:
            _fail(pointer, str(exc))
    obj = _expect_object(data, pointer)
    _check_keys(obj, pointer, ("alpha", "beta", "gamma", "delta"))
    values = {key: fraction_from_json(obj[key], pointer + "/" + key)
              for key in ("alpha", "beta", "gamma", "delta")}
    try:
        return UniversalParams(**values)
    except HmJoinError as exc:
        _fail(pointer, str(exc))


# ---------------------------------------------------------------------------
# join specifications


def spec_to_json(spec: JoinSpec) -> Dict[str, Any]:
    return {
        "host": graph_to_json(spec.host),
        "m": spec.m,
        "factors": [graph_to_json(g) for g in spec.factors],
        "indexing": [list(im.values) for im in spec.indexing],
    }


def _indexing_from_json(data, m: int, pointer: str) -> IndexingMap:
    arr = _expect_array(data, pointer)
    values: List[Optional[int]] = []
    for j, raw in enumerate(arr):
        here = "%s/%d" % (pointer, j)
        if raw is None:
            values.append(None)
            continue
        label = _expect_int(raw, here)
        if not (1 <= label <= m):
            _fail(here, "label %d out of range (labels are 1-based, at most %d)" % (label, m))
        values.append(label)
    return IndexingMap(values, m)


def spec_from_json(data, pointer: str = "") -> JoinSpec:
    obj = _expect_object(data, pointer)
    _check_keys(obj, pointer, ("host", "m", "factors", "indexing"))
    host = graph_from_json(obj["host"], pointer + "/host")
    m = _expect_int(obj["m"], pointer + "/m")
    if m < 1:
        _fail(pointer + "/m", "label count m must be at least 1")
    factors = [graph_from_json(g, "%s/factors/%d" % (pointer, i))
               for i, g in enumerate(_expect_array(obj["factors"], pointer + "/factors"))]
    raw_indexing = _expect_array(obj["indexing"], pointer + "/indexing")
    if len(raw_indexing) != len(factors):
        _fail(pointer + "/indexing",
              "expected %d indexing rows, got %d" % (len(factors), len(raw_indexing)))
    indexing = []
    for i, row in enumerate(raw_indexing):
        im = _indexing_from_json(row, m, "%s/indexing/%d" % (pointer, i))
        if factors[i].n != len(im):
            _fail("%s/indexing/%d" % (pointer, i),
                  "factor %d has %d vertices but %d labels" % (i, factors[i].n, len(im)))
        indexing.append(im)
    try:
        return JoinSpec(host, factors, m, indexing)
    except HmJoinError as exc:
        _fail(pointer, str(exc))


def generalized_spec_to_json(spec: GeneralizedJoinSpec) -> Dict[str, Any]:
    return {
        "host": graph_to_json(spec.host),
        "factors": [graph_to_json(g) for g in spec.factors],
        "subsets": [list(s) for s in spec.subsets],
        "params": params_to_json(spec.params),
    }


def generalized_spec_from_json(data, pointer: str = "") -> GeneralizedJoinSpec:
    obj = _expect_object(data, pointer)
    _check_keys(obj, pointer, ("host", "factors", "subsets", "params"))
    host = graph_from_json(obj["host"], pointer + "/host")
    factors = [graph_from_json(g, "%s/factors/%d" % (pointer, i))
               for i, g in enumerate(_expect_array(obj["factors"], pointer + "/factors"))]
    subsets = []
    for i, row in enumerate(_expect_array(obj["subsets"], pointer + "/subsets")):
        arr = _expect_array(row, "%s/subsets/%d" % (pointer, i))
        subsets.append([_expect_int(v, "%s/subsets/%d/%d" % (pointer, i, j))
                        for j, v in enumerate(arr)])
    params = params_from_json(obj["params"], pointer + "/params")
    try:
        return GeneralizedJoinSpec(host, factors, subsets, params)
    except HmJoinError as exc:
        _fail(pointer, str(exc))


def spec_document_from_json(data, pointer: str = "") -> Union[JoinSpec, GeneralizedJoinSpec]:
    """Dispatch on shape: generalized specs carry "subsets", labeled join
    specs carry "m" and "indexing"."""
    obj = _expect_object(data, pointer)
    if "subsets" in obj or "params" in obj:
        return generalized_spec_from_json(obj, pointer)
    return spec_from_json(obj, pointer)


def parse_spec(document: Union[str, bytes]) -> Union[JoinSpec, GeneralizedJoinSpec]:
    """Parse a UTF-8 JSON spec document into a validated specification."""
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SpecValidationError("document is not valid UTF-8: %s" % exc)
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SpecValidationError(
            "invalid JSON: %s (line %d, column %d)" % (exc.msg, exc.lineno, exc.colno))
    return spec_document_from_json(data)


# ---------------------------------------------------------------------------
# reports and certificates


def _eigen_class_to_json(cls) -> Dict[str, Any]:
    return {
        "class_poly": polynomial_to_json(cls.poly),
        "flag": cls.is_main,
        "rational": None if cls.rational is None else fraction_to_json(cls.rational),
        "multiplicity": cls.multiplicity,
    }


def report_to_json(report: SpectralReport) -> Dict[str, Any]:
    return {
        "charpoly_direct": polynomial_to_json(report.charpoly_direct),
        "charpoly_block": polynomial_to_json(report.charpoly_block),
        "factor_charpolys": [polynomial_to_json(p) for p in report.factor_charpolys],
        "phi_polynomial": polynomial_to_json(report.phi_polynomial),
        "main_denominators": [polynomial_to_json(g.denominator) for g in report.gammas],
        "e_main_flags": [[_eigen_class_to_json(cls) for cls in per_factor]
                         for per_factor in report.e_main_flags],
        "carry_forward": [
            {
                "factor": row.factor,
                "class": polynomial_to_json(row.eigen_class.poly),
                "bound": row.guaranteed,
                "observed": row.observed,
            }
            for row in report.carry_forward
        ],
        "numeric_spectrum": [[value, mult] for value, mult in report.numeric_spectrum],
    }


def certificate_to_json(cert: CospectralCertificate) -> Dict[str, Any]:
    witness = []
    for matrix in cert.gamma_witness:
        witness.append([[ratfun_to_json(matrix.entry(i, j)) for j in range(matrix.cols)]
                        for i in range(matrix.rows)])
    return {
        "kind": cert.kind,
        "spec_a": generalized_spec_to_json(cert.spec_a),
        "spec_b": generalized_spec_to_json(cert.spec_b),
        "charpoly": polynomial_to_json(cert.charpoly_a),
        "isomorphic": cert.isomorphic,
        "gamma_witness": witness,
    }


def canonical_dumps(document) -> str:
    """Deterministic rendering: fixed key order, two-space indent, one
    trailing newline."""
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"
