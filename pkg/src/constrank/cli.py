"""Command line front end.

Exit codes: 0 success (including a certified exhausted search), 1 when a
checked property fails (not constant rank, containment violated), 2 for
usage and parse problems, 3 when a budget is exceeded.

Reports are key=value lines under a schema=1 header (or one JSON object
with --json).  construct and search write their subspace artifact to
stdout or --output and the report to stderr; all other commands report
on stdout.  Reports contain no timing or path information, so identical
inputs produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .analysis import (
    check_image_of_kernel,
    check_kernel_bound,
    counting_report,
)
from .construct import truncated_construction
from .errors import (
    BudgetExceeded,
    ConstrankError,
    NotConstantRank,
    ParseError,
    ShapeViolation,
)
from .field import FieldSpec, parse_field_descriptor
from .matrix import MatGF
from .search import (
    DEFAULT_CENSUS_BUDGET,
    DEFAULT_NODE_BUDGET,
    SearchStatus,
    brute_force_census,
    search_constant_rank,
)
from .subspace import (
    DEFAULT_ENUMERATION_BUDGET,
    SubspaceBasis,
    is_constant_rank,
    parse_subspace,
    rank_profile,
)

__all__ = ["RunConfig", "main", "run"]

_MAX_REPORTED_VIOLATIONS = 10


@dataclass(frozen=True)
class RunConfig:
    command: str
    field: FieldSpec | None = None
    shape: tuple[int, int] | None = None
    rank: int | None = None
    dim: int | None = None
    input_path: str | None = None
    output_path: str | None = None
    budget: int | None = None
    workers: int = 1
    sample: int | None = None
    seed: int = 0
    count_all: bool = False
    use_oracle: bool = False
    json_output: bool = False


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _seed_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def _shape_type(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            f"shape must look like MxN, got {text!r}"
        )
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"shape must look like MxN, got {text!r}"
        )
    if m < 1 or n < 1:
        raise argparse.ArgumentTypeError(f"shape {text!r} must be at least 1x1")
    return m, n


def _field_type(text: str) -> FieldSpec:
    try:
        return parse_field_descriptor(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    except ConstrankError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="constrank",
        description="Construct, verify, analyze, and search for "
                    "constant-rank matrix subspaces over finite fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--json", action="store_true",
                       help="emit the report as one JSON object")
        p.add_argument("--budget", type=_positive_int, default=None,
                       help="work limit (command-specific unit)")
        return p

    p = common(sub.add_parser("construct",
                              help="emit a constant rank r subspace of "
                                   "dimension n"))
    p.add_argument("--field", type=_field_type, required=True)
    p.add_argument("--shape", type=_shape_type, required=True, metavar="MxN")
    p.add_argument("--rank", type=_positive_int, required=True)
    p.add_argument("--output", default=None)

    p = common(sub.add_parser("verify",
                              help="check that a subspace file is constant "
                                   "rank r"))
    p.add_argument("--input", required=True)
    p.add_argument("--rank", type=_positive_int, required=True)

    p = common(sub.add_parser("census",
                              help="rank distribution of a subspace file"))
    p.add_argument("--input", required=True)

    p = common(sub.add_parser("lemma-check",
                              help="image containment and kernel-slice "
                                   "bound checks"))
    p.add_argument("--input", required=True)
    p.add_argument("--sample", type=_positive_int, default=None,
                   help="check only this many maximal-rank elements")
    p.add_argument("--seed", type=_seed_int, default=0)

    p = common(sub.add_parser("counting",
                              help="annihilating-pair count, both ways"))
    p.add_argument("--input", required=True)

    p = common(sub.add_parser("search",
                              help="search for a constant rank subspace of "
                                   "a given dimension"))
    p.add_argument("--field", type=_field_type, required=True)
    p.add_argument("--shape", type=_shape_type, required=True, metavar="MxN")
    p.add_argument("--rank", type=_positive_int, required=True)
    p.add_argument("--dim", type=_positive_int, required=True)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--all", action="store_true", dest="count_all",
                   help="traverse the whole tree and count every hit")
    p.add_argument("--oracle", action="store_true", dest="use_oracle",
                   help="run the brute-force census instead of the search")
    p.add_argument("--output", default=None)

    p = common(sub.add_parser("oracle",
                              help="brute-force census of constant rank "
                                   "subspaces"))
    p.add_argument("--field", type=_field_type, required=True)
    p.add_argument("--shape", type=_shape_type, required=True, metavar="MxN")
    p.add_argument("--rank", type=_positive_int, required=True)
    p.add_argument("--dim", type=_positive_int, required=True)

    return parser


def _config_from(ns: argparse.Namespace) -> RunConfig:
    get = lambda name, default=None: getattr(ns, name, default)
    return RunConfig(
        command=ns.command,
        field=get("field"),
        shape=get("shape"),
        rank=get("rank"),
        dim=get("dim"),
        input_path=get("input"),
        output_path=get("output"),
        budget=get("budget"),
        workers=get("workers", 1),
        sample=get("sample"),
        seed=get("seed", 0),
        count_all=bool(get("count_all", False)),
        use_oracle=bool(get("use_oracle", False)),
        json_output=bool(get("json", False)),
    )


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------

def _encode_matrix(M: MatGF) -> str:
    return ";".join(
        ",".join(str(x) for x in M.row(i)) for i in range(M.m)
    )


def _fmt(value) -> str:
    if value is None:
        return "none"
    if value is True:
        return "true"
    if value is False:
        return "false"
    return str(value)


def render_report(report: dict, json_mode: bool) -> str:
    if json_mode:
        return json.dumps({"schema": 1, **report}, indent=2) + "\n"
    lines = ["schema=1"]
    for key, value in report.items():
        lines.append(f"{key}={_fmt(value)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------

def _read_subspace(config: RunConfig) -> SubspaceBasis:
    assert config.input_path is not None
    with open(config.input_path, "r", encoding="ascii") as fh:
        return parse_subspace(fh.read())


def _shape_str(m: int, n: int) -> str:
    return f"{m}x{n}"


def _pad_square(S: SubspaceBasis) -> SubspaceBasis:
    if S.m > S.n:
        raise ShapeViolation(
            f"cannot square a {S.m}x{S.n} subspace: m <= n required"
        )
    return S.pad_to_square()


def _cmd_construct(config: RunConfig):
    m, n = config.shape
    S = truncated_construction(config.field, m, n, config.rank)
    report = {
        "command": "construct",
        "field": config.field.descriptor,
        "shape": _shape_str(m, n),
        "rank": config.rank,
        "dim": S.d,
        "status": "ok",
    }
    return 0, report, S.to_text()


def _cmd_verify(config: RunConfig):
    S = _read_subspace(config)
    budget = config.budget or DEFAULT_ENUMERATION_BUDGET
    ok, witness = is_constant_rank(S, config.rank, budget=budget)
    report = {
        "command": "verify",
        "field": S.field.descriptor,
        "shape": _shape_str(S.m, S.n),
        "d": S.d,
        "rank": config.rank,
        "constant_rank": ok,
    }
    if witness is not None:
        report["witness"] = _encode_matrix(witness)
        report["witness_rank"] = witness.rank()
    return (0 if ok else 1), report, None


def _cmd_census(config: RunConfig):
    S = _read_subspace(config)
    budget = config.budget or DEFAULT_ENUMERATION_BUDGET
    profile = rank_profile(S, budget=budget)
    constant = profile.constant_rank_of()
    report = {
        "command": "census",
        "field": S.field.descriptor,
        "shape": _shape_str(S.m, S.n),
        "d": S.d,
        "counts": ",".join(str(c) for c in profile.counts),
        "total_nonzero": sum(profile.counts),
        "constant_rank": constant,
    }
    return 0, report, None


def _cmd_lemma_check(config: RunConfig):
    S = _read_subspace(config)
    square = _pad_square(S)
    budget = config.budget or DEFAULT_ENUMERATION_BUDGET
    bound = check_kernel_bound(square, budget=budget)
    image = check_image_of_kernel(
        square, sample=config.sample, seed=config.seed, budget=budget
    )
    report = {
        "command": "lemma-check",
        "field": S.field.descriptor,
        "shape": _shape_str(S.m, S.n),
        "padded_shape": _shape_str(square.m, square.n),
        "d": S.d,
        "rank": bound.r,
        "max_rank": image.max_rank,
        "lemma1_holds": image.holds,
        "elements_checked": image.elements_checked,
        "triples_checked": image.triples_checked,
        "sampled": image.sampled,
        "violations": len(image.violations),
    }
    for k, (A, u, B) in enumerate(image.violations[:_MAX_REPORTED_VIOLATIONS]):
        report[f"violation_{k + 1}"] = "|".join(
            (_encode_matrix(A), _encode_matrix(u), _encode_matrix(B))
        )
    if len(image.violations) > _MAX_REPORTED_VIOLATIONS:
        report["violations_truncated"] = True
    report.update({
        "applicable": bound.applicable,
        "bound": bound.bound,
        "min_r_u": bound.min_r_u,
        "min_u": _encode_matrix(bound.min_u),
        "bound_holds": bound.holds,
    })
    violated = (not image.holds) or (bound.applicable and not bound.holds)
    return (1 if violated else 0), report, None


def _cmd_counting(config: RunConfig):
    S = _read_subspace(config)
    square = _pad_square(S)
    budget = config.budget or DEFAULT_ENUMERATION_BUDGET
    rep = counting_report(square, budget=budget)
    report = {
        "command": "counting",
        "field": S.field.descriptor,
        "shape": _shape_str(S.m, S.n),
        "padded_shape": _shape_str(square.m, square.n),
        "q": rep.q,
        "n": rep.n,
        "rank": rep.r,
        "d": rep.d,
        "omega_elements": rep.omega_by_elements,
        "omega_vectors": rep.omega_by_vectors,
        "lhs_valuation": rep.lhs_valuation,
        "rhs_min_exponent": rep.rhs_min_exponent,
        "contradiction": rep.contradiction,
    }
    return 0, report, None


def _cmd_search(config: RunConfig):
    if config.use_oracle:
        return _cmd_oracle(config, command_name="search")
    m, n = config.shape
    budget = config.budget or DEFAULT_NODE_BUDGET
    outcome = search_constant_rank(
        config.field, m, n, config.rank, config.dim,
        budget=budget, workers=config.workers, count_all=config.count_all,
    )
    report = {
        "command": "search",
        "field": config.field.descriptor,
        "shape": _shape_str(m, n),
        "rank": config.rank,
        "dim": config.dim,
        "status": outcome.status.value,
        "nodes": outcome.nodes_explored,
        "budget": budget,
        "workers": config.workers,
    }
    if config.count_all:
        report["found_count"] = outcome.found_count
    artifact = outcome.witness.to_text() if outcome.witness else None
    code = 3 if outcome.status is SearchStatus.BUDGET_EXCEEDED else 0
    return code, report, artifact


def _cmd_oracle(config: RunConfig, command_name: str = "oracle"):
    m, n = config.shape
    budget = config.budget or DEFAULT_CENSUS_BUDGET
    count = brute_force_census(
        config.field, m, n, config.rank, config.dim, budget=budget
    )
    report = {
        "command": command_name,
        "field": config.field.descriptor,
        "shape": _shape_str(m, n),
        "rank": config.rank,
        "dim": config.dim,
        "count": count,
    }
    if command_name == "search":
        report["oracle"] = True
    return 0, report, None


_HANDLERS = {
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "census": _cmd_census,
    "lemma-check": _cmd_lemma_check,
    "counting": _cmd_counting,
    "search": _cmd_search,
    "oracle": _cmd_oracle,
}


def run(config: RunConfig):
    """Execute one command; returns (exit_code, report_dict, artifact)."""
    return _HANDLERS[config.command](config)


def main(argv=None) -> int:
    try:
        ns = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    config = _config_from(ns)
    try:
        code, report, artifact = run(config)
    except ParseError as exc:
        where = config.input_path or "<input>"
        print(f"{where}:{exc.line}:{exc.col}: {exc.bare_message}",
              file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NotConstantRank as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConstrankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    text = render_report(report, config.json_output)
    if config.command in ("construct", "search") and not config.use_oracle:
        if artifact is not None:
            if config.output_path:
                with open(config.output_path, "w", encoding="ascii") as fh:
                    fh.write(artifact)
            else:
                sys.stdout.write(artifact)
        sys.stderr.write(text)
    else:
        sys.stdout.write(text)
    return code
