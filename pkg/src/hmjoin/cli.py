"""Command-line front end: parse spec documents, dispatch the library
computations, and emit deterministic machine-readable reports.

Exit status: 0 on success, 1 when a verified identity fails (the failed
identity is named on stderr), 2 on input or hypothesis errors."""

import argparse
import sys
from fractions import Fraction
from typing import List, Optional

from .cospectral import (
    COSPECTRAL_KINDS,
    GeneralizedJoinSpec,
    check_cospectral_conditions,
    generalized_universal_charpoly,
    kind_parameters,
    search_pairs,
)
from .errors import (
    BlockFactorizationError,
    CarryForwardError,
    HmJoinError,
    InvalidParametersError,
    TheoremViolationError,
)
from .exactlinalg import rational_eigenvalues
from .families import (
    FamilyRealization,
    cartesian_product,
    generalized_helm,
    generalized_petersen,
    generalized_web,
    lollipop,
    tadpole,
)
from .graphs import Graph, UniversalParams, graph_to_edgelist, make_named, universal_matrix
from .joins import REDUCTION_MODES, JoinSpec, hm_join, indexing_matrix, reduce_labels, reduction_report
from .polynomials import Polynomial, poly_divexact
from .serialize import (
    canonical_dumps,
    certificate_to_json,
    fraction_from_json,
    fraction_to_json,
    generalized_spec_to_json,
    graph_from_json,
    params_to_json,
    parse_spec,
    polynomial_to_json,
    report_to_json,
    spec_to_json,
)
from .spectra import block_charpoly, classify_e_main, universal_block_charpoly

_VIOLATIONS = (BlockFactorizationError, CarryForwardError, TheoremViolationError)


# ---------------------------------------------------------------------------
# rendering


def _frac_text(value: Fraction) -> str:
    text = fraction_to_json(value)
    if value.denominator != 1:
        return "(" + text + ")"
    return text


def render_polynomial(p: Polynomial, var: str = "λ") -> str:
    """Compact descending rendering, e.g. λ^3-2λ+1/2."""
    if p.is_zero:
        return "0"
    parts: List[str] = []
    for k in range(p.degree, -1, -1):
        c = p.coefficient(k)
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = fraction_to_json(mag)
        else:
            power = var if k == 1 else "%s^%d" % (var, k)
            body = power if mag == 1 else _frac_text(mag) + power
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+" if c > 0 else "-") + body)
    return "".join(parts)


def factored_charpoly_string(p: Polynomial, matrix, var: str = "λ") -> str:
    """Factor out all rational roots (found exactly via the matrix bound)
    and render ascending-root linear factors times the remainder."""
    if p.degree <= 0:
        return render_polynomial(p, var)
    remainder = p
    parts: List[str] = []
    for root, mult in rational_eigenvalues(matrix, p):
        factor = Polynomial((-root, Fraction(1)))
        for _ in range(mult):
            remainder = poly_divexact(remainder, factor)
        if root == 0:
            base = var
        elif root > 0:
            base = "(%s-%s)" % (var, fraction_to_json(root))
        else:
            base = "(%s+%s)" % (var, fraction_to_json(-root))
        parts.append(base + ("^%d" % mult if mult > 1 else ""))
    if remainder.degree > 0:
        parts.append("(" + render_polynomial(remainder, var) + ")")
    elif remainder != Polynomial.one():
        parts.insert(0, _frac_text(remainder.coefficient(0)))
    return "".join(parts)


# ---------------------------------------------------------------------------
# plumbing


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write_text(text: str, path: Optional[str]):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _load_spec(path: str):
    return parse_spec(_read_text(path))


def _as_join_spec(spec) -> JoinSpec:
    if isinstance(spec, GeneralizedJoinSpec):
        return spec.to_hm()
    return spec


def _parse_params_option(args) -> Optional[UniversalParams]:
    if getattr(args, "preset", None):
        return UniversalParams.preset(args.preset)
    raw = getattr(args, "params", None)
    if raw is None:
        return None
    parts = raw.split(",")
    if len(parts) != 4:
        raise InvalidParametersError(
            "--params expects four comma-separated fractions alpha,beta,gamma,delta")
    values = [fraction_from_json(part.strip()) for part in parts]
    return UniversalParams(*values)


# ---------------------------------------------------------------------------
# verbs


def _cmd_join(args) -> int:
    spec = _as_join_spec(_load_spec(args.spec))
    _write_text(graph_to_edgelist(hm_join(spec)), args.output)
    return 0


def _cmd_charpoly(args) -> int:
    spec = _as_join_spec(_load_spec(args.spec))
    report = block_charpoly(spec)
    adjacency = hm_join(spec).adjacency_matrix()
    doc = {"charpoly_factored": factored_charpoly_string(report.charpoly_direct, adjacency)}
    doc.update(report_to_json(report))
    _write_text(canonical_dumps(doc), args.output)
    return 0


def _cmd_classify(args) -> int:
    spec = _as_join_spec(_load_spec(args.spec))
    factors = []
    for i in range(spec.k):
        e = indexing_matrix(spec.factors[i], spec.indexing[i])
        classes = classify_e_main(spec.factors[i].adjacency_matrix(), e)
        factors.append([
            {
                "class_poly": polynomial_to_json(cls.poly),
                "flag": cls.is_main,
                "rational": None if cls.rational is None else fraction_to_json(cls.rational),
                "multiplicity": cls.multiplicity,
            }
            for cls in classes
        ])
    _write_text(canonical_dumps({"e_main_flags": factors}), args.output)
    return 0


def _cmd_verify(args) -> int:
    spec = _as_join_spec(_load_spec(args.spec))
    report = block_charpoly(spec)
    doc = {"verified": True}
    doc.update(report_to_json(report))
    _write_text(canonical_dumps(doc), args.output)
    return 0


def _cmd_reduce(args) -> int:
    spec = _as_join_spec(_load_spec(args.spec))
    info = reduction_report(spec, args.mode)
    reduced = reduce_labels(spec, args.mode)
    doc = dict(info)
    doc["spec"] = spec_to_json(reduced)
    _write_text(canonical_dumps(doc), args.output)
    return 0


def _graph_token(token: str) -> Graph:
    kind, sep, rest = token.partition(":")
    if not sep:
        raise InvalidParametersError(
            "graph token %r must look like kind:params, e.g. path:4" % token)
    try:
        params = [int(x) for x in rest.split(",") if x != ""]
    except ValueError:
        raise InvalidParametersError("graph token %r has non-integer parameters" % token)
    return make_named(kind, params)


def _build_family(name: str, raw_params: List[str]) -> FamilyRealization:
    if name == "cartesian":
        if len(raw_params) != 2:
            raise InvalidParametersError(
                "cartesian expects two graph tokens, e.g. cartesian path:3 cycle:4")
        return cartesian_product(_graph_token(raw_params[0]), _graph_token(raw_params[1]))
    builders = {
        "petersen": (generalized_petersen, 2),
        "helm": (generalized_helm, 2),
        "web": (generalized_web, 2),
        "lollipop": (lollipop, 2),
        "tadpole": (tadpole, 2),
    }
    if name not in builders:
        raise InvalidParametersError(
            "unknown family %r (expected cartesian, petersen, helm, web, lollipop, tadpole)" % name)
    builder, arity = builders[name]
    if len(raw_params) != arity:
        raise InvalidParametersError("family %s expects %d integer parameters" % (name, arity))
    try:
        values = [int(x) for x in raw_params]
    except ValueError:
        raise InvalidParametersError("family %s expects integer parameters" % name)
    return builder(*values)


def _cmd_family(args) -> int:
    realization = _build_family(args.name, args.params)
    doc = {
        "family": args.name,
        "params": list(args.params),
        "n": realization.direct.n,
        "edgelist": graph_to_edgelist(realization.direct),
        "spec": spec_to_json(realization.spec),
    }
    if args.charpoly:
        report = block_charpoly(realization.spec)
        doc["charpoly_factored"] = factored_charpoly_string(
            report.charpoly_direct, realization.direct.adjacency_matrix())
        doc["report"] = report_to_json(report)
    _write_text(canonical_dumps(doc), args.output)
    return 0


def _cmd_universal(args) -> int:
    spec = _load_spec(args.spec)
    override = _parse_params_option(args)
    if isinstance(spec, GeneralizedJoinSpec):
        if override is not None:
            spec = GeneralizedJoinSpec(spec.host, spec.factors, spec.subsets, override)
        charpoly_poly = generalized_universal_charpoly(spec)
        matrix = universal_matrix(spec.join_graph(), spec.params)
        doc = {
            "params": params_to_json(spec.params),
            "charpoly": polynomial_to_json(charpoly_poly),
            "charpoly_factored": factored_charpoly_string(charpoly_poly, matrix),
        }
        _write_text(canonical_dumps(doc), args.output)
        return 0
    if override is None:
        raise InvalidParametersError(
            "labeled join specs need --preset or --params for the universal verb")
    report = universal_block_charpoly(spec, override)
    matrix = universal_matrix(hm_join(spec), override)
    doc = {
        "params": params_to_json(override),
        "charpoly_factored": factored_charpoly_string(report.charpoly_direct, matrix),
    }
    doc.update(report_to_json(report))
    _write_text(canonical_dumps(doc), args.output)
    return 0


def _load_generalized(path: str) -> GeneralizedJoinSpec:
    spec = _load_spec(path)
    if not isinstance(spec, GeneralizedJoinSpec):
        raise SpecValidationError(
            "the cospectral verb needs generalized specs (with subsets and params)")
    return spec


def _cmd_cospectral(args) -> int:
    if args.action == "check":
        if args.spec_a == "-" and args.spec_b == "-":
            raise InvalidParametersError("at most one spec may come from standard input")
        spec_a = _load_generalized(args.spec_a)
        spec_b = _load_generalized(args.spec_b)
        cert = check_cospectral_conditions(spec_a, spec_b, args.kind)
        _write_text(canonical_dumps(certificate_to_json(cert)), args.output)
        return 0
    # search
    import json as _json

    try:
        data = _json.loads(_read_text(args.catalog))
    except ValueError as exc:
        raise SpecValidationError("invalid catalog JSON: %s" % exc)
    if isinstance(data, dict) and "graphs" in data:
        raw = data["graphs"]
        base = "/graphs"
    else:
        raw = data
        base = ""
    if not isinstance(raw, list):
        raise SpecValidationError("catalog must be a JSON array of graphs", base)
    graphs = [graph_from_json(obj, "%s/%d" % (base, i)) for i, obj in enumerate(raw)]
    params = _parse_params_option(args)
    certs = search_pairs(graphs, args.budget, args.kind, params)
    doc = {
        "kind": args.kind,
        "params": params_to_json(kind_parameters(args.kind, params)),
        "certificates": [certificate_to_json(c) for c in certs],
    }
    _write_text(canonical_dumps(doc), args.output)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hmjoin",
        description="Construct labeled joins of graphs and compute their exact spectra.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p):
        p.add_argument("-o", "--output", default="-", help="output path ('-' = stdout)")

    p_join = sub.add_parser("join", help="build the join graph, print an edge list")
    p_join.add_argument("spec", help="spec JSON path ('-' = stdin)")
    add_common(p_join)
    p_join.set_defaults(func=_cmd_join)

    p_char = sub.add_parser("charpoly", help="block-factorized characteristic polynomial report")
    p_char.add_argument("spec")
    add_common(p_char)
    p_char.set_defaults(func=_cmd_charpoly)

    p_cls = sub.add_parser("classify", help="per-factor eigenvalue-class main flags")
    p_cls.add_argument("spec")
    add_common(p_cls)
    p_cls.set_defaults(func=_cmd_classify)

    p_ver = sub.add_parser("verify", help="check the factorization and carry-forward identities")
    p_ver.add_argument("spec")
    add_common(p_ver)
    p_ver.set_defaults(func=_cmd_verify)

    p_red = sub.add_parser("reduce", help="delete removable labels")
    p_red.add_argument("spec")
    p_red.add_argument("--mode", choices=REDUCTION_MODES, required=True)
    add_common(p_red)
    p_red.set_defaults(func=_cmd_reduce)

    p_fam = sub.add_parser("family", help="build a named family as a join spec")
    p_fam.add_argument("name")
    p_fam.add_argument("params", nargs="*")
    p_fam.add_argument("--charpoly", action="store_true", help="include the spectral report")
    add_common(p_fam)
    p_fam.set_defaults(func=_cmd_family)

    p_uni = sub.add_parser("universal", help="universal-matrix charpoly (alpha*A+beta*I+gamma*J+delta*D)")
    p_uni.add_argument("spec")
    p_uni.add_argument("--preset", help="A, L, Q, seidel, or Aalpha:<r>")
    p_uni.add_argument("--params", help="alpha,beta,gamma,delta as fraction strings")
    add_common(p_uni)
    p_uni.set_defaults(func=_cmd_universal)

    p_cos = sub.add_parser("cospectral", help="certify or search cospectral join pairs")
    cos_sub = p_cos.add_subparsers(dest="action", required=True)
    p_chk = cos_sub.add_parser("check", help="verify one candidate pair")
    p_chk.add_argument("spec_a")
    p_chk.add_argument("spec_b")
    p_chk.add_argument("--kind", choices=COSPECTRAL_KINDS, required=True)
    add_common(p_chk)
    p_chk.set_defaults(func=_cmd_cospectral)
    p_srch = cos_sub.add_parser("search", help="search a graph catalog for certified pairs")
    p_srch.add_argument("catalog")
    p_srch.add_argument("--kind", choices=COSPECTRAL_KINDS, required=True)
    p_srch.add_argument("--budget", type=int, default=2, help="largest subset size tried")
    p_srch.add_argument("--preset", help="universal preset for kind U")
    p_srch.add_argument("--params", help="alpha,beta,gamma,delta for kind U")
    add_common(p_srch)
    p_srch.set_defaults(func=_cmd_cospectral)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _VIOLATIONS as exc:
        print("violation: %s" % exc, file=sys.stderr)
        return 1
    except (HmJoinError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
