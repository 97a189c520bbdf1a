"""Command-line front end.

    immcob compute --catalog cp2 --format json
    immcob compute --input M.json
    immcob eh2 --catalog rp3xs2
    immcob fourgroup --catalog s1xs3
    immcob cohomology --catalog rp3 --degree 3 --coeff 8
    immcob tables
    immcob catalog list | immcob catalog get cp2
    immcob validate --input M.txt

Exit status: 0 on success, 1 on invalid input (not a closed manifold,
dimension above 7, malformed file), 2 when an internal consistency check
fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import catalog
from .algebra import Group
from .cohomology import InvariantViolation, cohomology_with_coefficients, integral_homology
from .fourgroup import four_group_report
from .graded import STAR_CONDITION, ManifoldInputError, compute_EH2, compute_graded
from .simplicial import ComplexFormatError, SimplicialComplex, load_complex, validate_closed_manifold
from .tables import P_group, tables_json

COMMANDS = ("compute", "eh2", "fourgroup", "cohomology", "tables", "catalog", "validate")
DEFAULT_MAX_CELLS = 200_000


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    catalog: str | None = None
    output_format: str = "json"
    degree: int | None = None
    coeff: str | None = None
    max_cells: int = DEFAULT_MAX_CELLS
    catalog_action: str | None = None
    catalog_name: str | None = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="immcob",
        description="Cobordism groups of codimension-one immersions in closed manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def source(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--input", help="complex file (canonical JSON or plain facet list)")
        g.add_argument("--catalog", help="name of a built-in complex, e.g. cp2 or 'sphere(3)'")
        p.add_argument("--format", dest="output_format", choices=("json", "text"), default="json")
        p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS,
                       help="refuse complexes with more simplices than this")

    source(sub.add_parser("compute", help="graded group gr*N(M)"))
    source(sub.add_parser("eh2", help="extendible classes EH^2(M)"))
    source(sub.add_parser("fourgroup", help="exact-sequence data for N(M), M an orientable 4-manifold"))
    source(sub.add_parser("validate", help="closed-manifold checks"))
    coh = sub.add_parser("cohomology", help="H^k(M; A) by universal coefficients")
    source(coh)
    coh.add_argument("--degree", type=int, required=True)
    coh.add_argument("--coeff", default="2", help="modulus m for Z/m, or P for P_k")
    tab = sub.add_parser("tables", help="P_n, Q_n, P_n/Q_n and theta_n")
    tab.add_argument("--format", dest="output_format", choices=("json", "text"), default="json")
    cat = sub.add_parser("catalog", help="list or print built-in complexes")
    cat.add_argument("catalog_action", choices=("list", "get"))
    cat.add_argument("catalog_name", nargs="?")
    cat.add_argument("--format", dest="output_format", choices=("json", "text"), default="json")
    return parser


def parse_config(argv: list[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__})


def _load(cfg: RunConfig) -> SimplicialComplex:
    try:
        K = catalog.get(cfg.catalog) if cfg.catalog else load_complex(cfg.input)
    except catalog.CatalogError as exc:
        raise InputError(exc.args[0]) from None
    except OSError as exc:
        raise InputError(f"cannot read {cfg.input}: {exc.strerror}") from None
    except ComplexFormatError as exc:
        raise InputError(f"malformed complex: {exc}") from None
    cells = sum(K.f_vector)
    if cells > cfg.max_cells:
        raise InputError(f"complex has {cells} simplices, above --max-cells {cfg.max_cells}")
    return K


def _coefficients(spec: str, k: int) -> tuple[Group, str]:
    if spec.upper() == "P":
        return P_group(k), f"P_{k}"
    try:
        m = int(spec)
    except ValueError:
        raise InputError(f"--coeff must be an integer modulus or P, got {spec!r}") from None
    if m < 2:
        raise InputError("--coeff modulus must be at least 2")
    return Group.cyclic(m), f"Z/{m}"


def render_graded(result) -> str:
    lines = [
        f"gr*N({result.manifold}), dimension {result.dimension}, "
        f"{'orientable' if result.orientable else 'non-orientable'}",
    ]
    if result.star_condition is not None:
        lines.append(f"condition {STAR_CONDITION}: {'holds' if result.star_condition else 'fails'}")
    for f in result.factors:
        name = "EH^2" if f.degree == 2 else f"H^{f.degree}(M; P_{f.degree})"
        if f.status.value == "exact":
            extra = f"  [branch {result.eh2.branch}]" if f.degree == 2 else ""
            lines.append(f"  {name} = {f.group}{extra}")
        else:
            lines.append(
                f"  {name} undetermined: a subgroup of H^2(M; Z/2) = {f.upper_bound}; "
                f"Q^2 = {f.candidate} would be exact under {STAR_CONDITION}, which fails here"
            )
    total = result.total_order
    lines.append(f"total order: {total if total is not None else 'undetermined'}")
    lines.append(result.note)
    return "\n".join(lines)


def _emit(cfg: RunConfig, payload, text: str | None = None) -> None:
    if cfg.output_format == "text" and text is not None:
        print(text)
    else:
        print(json.dumps(payload, indent=2))


def run(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return _dispatch(cfg)
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 2
    except (InputError, ManifoldInputError) as exc:
        print(str(exc), file=sys.stderr)
        return 1


def _dispatch(cfg: RunConfig) -> int:
    if cfg.command == "tables":
        data = tables_json()
        text = "\n".join(
            [f"P_{k} = {P_group(k)}" for k in range(1, 10)]
            + [f"Q_{k}: {json.dumps(v)}" for k, v in data["Q"].items()]
            + [f"P_{k}/Q_{k}: {json.dumps(v)}" for k, v in data["scriptP"].items()]
            + [f"theta_n iso for n in {data['theta_iso']}"]
        )
        _emit(cfg, data, text)
        return 0

    if cfg.command == "catalog":
        if cfg.catalog_action == "list":
            _emit(cfg, catalog.names(), "\n".join(catalog.names()))
            return 0
        if not cfg.catalog_name:
            raise InputError("catalog get needs a name")
        try:
            K = catalog.get(cfg.catalog_name)
        except catalog.CatalogError as exc:
            raise InputError(exc.args[0]) from None
        doc = K.to_json()
        doc["provenance"] = catalog.entry(cfg.catalog_name).provenance
        _emit(cfg, doc, "\n".join(" ".join(map(str, f)) for f in K.facets))
        return 0

    K = _load(cfg)

    if cfg.command == "validate":
        report = validate_closed_manifold(K)
        text = f"{K.name}: {report.verdict}" + "".join(f"\n  {r}" for r in report.reasons)
        _emit(cfg, report.to_json(), text)
        return 0 if report.accepted else 1

    if cfg.command == "compute":
        result = compute_graded(K)
        _emit(cfg, result.to_json(), render_graded(result))
        return 0

    if cfg.command == "eh2":
        r = compute_EH2(K)
        data = {
            "manifold": K.name,
            "status": r.status.value,
            "branch": r.branch,
            "group": r.group.to_json() if r.group is not None else None,
            "upper_bound": r.upper_bound.to_json(),
            "candidate": r.candidate.to_json() if r.candidate is not None else None,
        }
        text = f"EH^2({K.name}) [{r.branch}]: " + (
            str(r.group) if r.exact
            else f"undetermined, a subgroup of {r.upper_bound}; Q^2 = {r.candidate} would be exact under {STAR_CONDITION}"
        )
        _emit(cfg, data, text)
        return 0

    if cfg.command == "fourgroup":
        data = four_group_report(K)
        text = (
            f"N({K.name}): 0 -> {Group.from_json(data['kernel'])} -> N(M) -> quotient of order "
            f"{data['quotient_order']} -> 0; |N(M)| = {data['total_order']}; extension unresolved"
        )
        _emit(cfg, data, text)
        return 0

    if cfg.command == "cohomology":
        k = cfg.degree
        if not 0 <= k <= K.dim:
            raise InputError(f"--degree must be in 0..{K.dim}")
        if cfg.coeff.upper() == "P" and not 1 <= k <= 9:
            raise InputError("P_k is tabulated for k = 1..9")
        A, label = _coefficients(cfg.coeff, k)
        H = cohomology_with_coefficients(K, k, A)
        data = {
            "manifold": K.name,
            "degree": k,
            "coefficients": label,
            "group": H.to_json(),
            "integral_homology": integral_homology(K, k).to_json(),
        }
        _emit(cfg, data, f"H^{k}({K.name}; {label}) = {H}")
        return 0

    raise InputError(f"unknown command {cfg.command}")


def main() -> None:
    sys.exit(run())
