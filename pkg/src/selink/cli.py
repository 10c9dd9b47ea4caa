"""Command-line interface.

One executable, ``selink``, with a subcommand per query.  Output goes to
stdout in one of three formats: ``text`` (a single human-readable line),
``records`` (one JSON object, sorted keys) or ``table`` (TSV with a
header row).  Exit codes: 0 success, 1 domain error (bad input, bad
usage), 2 internal consistency failure (a violated mathematical
invariant, which is a bug worth reporting).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction

from ._version import __version__
from .catalog import (
    dedup_records,
    enumerate_bp,
    export_table,
    read_catalog,
    run_pipeline,
    write_catalog,
)
from .dimension import (
    casson_invariant,
    moduli_dimension,
    moduli_reference,
    smale_name,
    table_lookup,
    tight_contact_count,
)
from .errors import DomainError, InternalConsistencyError
from .existence import STATUSES, decide_existence
from .homology import link_homology
from .links import (
    LINK_TYPES,
    BPExponents,
    as_link,
    classify_type,
    parse_presentation,
)
from .toric import (
    ReebVector,
    cone_from_weights,
    gorenstein_gamma,
    minimize_volume,
    read_cone_file,
    read_weight_matrix_file,
    volume,
)

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    """argparse normally exits(2) on usage errors; remap them to exit 1."""

    def error(self, message):
        raise DomainError(message)


def _emit(fmt: str, mapping: dict, stream=None) -> None:
    """Render one result in the selected output format.

    text: space-separated key=value pairs, '-' for missing values.
    records: one JSON line.  table: TSV header plus one row.
    """
    stream = stream or sys.stdout
    if fmt == "records":
        stream.write(json.dumps(mapping, sort_keys=True) + "\n")
        return

    def cell(value) -> str:
        if value is None:
            return "-"
        if isinstance(value, (list, tuple)):
            return ",".join(str(v) for v in value)
        return str(value)

    if fmt == "table":
        stream.write("\t".join(mapping) + "\n")
        stream.write("\t".join(cell(v) for v in mapping.values()) + "\n")
    else:
        stream.write(" ".join(f"{k}={cell(v)}" for k, v in mapping.items()) + "\n")


def _parse_args_presentation(tokens: list[str]):
    return parse_presentation(" ".join(tokens))


def _torsion_string(torsion: tuple[int, ...]) -> str:
    if not torsion:
        return "0"
    return " ⊕ ".join(f"Z/{d}" for d in torsion)


def _load_cone(args):
    if args.weights:
        return cone_from_weights(read_weight_matrix_file(args.file))
    return read_cone_file(args.file)


def _parse_xi(text: str) -> ReebVector:
    try:
        parts = [Fraction(tok) for tok in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad Reeb vector {text!r}: {exc}")
    return ReebVector(tuple(parts))


def _fmt_float(x: float) -> str:
    return format(float(x), ".12g")


def _fmt_components(xs) -> str:
    out = []
    for x in xs:
        out.append(str(x) if isinstance(x, (int, Fraction)) else _fmt_float(x))
    return ",".join(out)


# ---------------------------------------------------------------- commands


def _cmd_classify(args) -> int:
    link = as_link(_parse_args_presentation(args.presentation))
    _emit(
        args.format,
        {
            "type": classify_type(link),
            "index": link.index,
            "n": link.n,
            "dim": link.link_dim,
            "w": link.weights,
            "d": link.degree,
        },
    )
    return 0


def _cmd_homology(args) -> int:
    group = link_homology(_parse_args_presentation(args.presentation), source=args.source)
    if args.format == "text":
        print(f"b={group.betti} torsion={_torsion_string(group.torsion)} {group.applicability}")
    else:
        _emit(
            args.format,
            {
                "b": group.betti,
                "torsion": group.torsion,
                "degree": group.degree,
                "applicability": group.applicability,
            },
        )
    return 0


def _cmd_verdict(args) -> int:
    obj = _parse_args_presentation(args.presentation)
    bp = obj if isinstance(obj, BPExponents) else None
    verdict = decide_existence(as_link(obj), bp)
    _emit(
        args.format,
        {
            "type": verdict.link_type,
            "status": verdict.status,
            "rule": verdict.rule,
            "margin": None if verdict.margin is None else str(verdict.margin),
        },
    )
    return 0


def _cmd_dim5_name(args) -> int:
    group = link_homology(_parse_args_presentation(args.presentation))
    manifold = smale_name(group)
    _emit(args.format, {"name": manifold.name()})
    return 0


def _cmd_se_table(args) -> int:
    if args.presentation:
        if args.betti is not None or args.m is not None:
            raise DomainError("give either a presentation or --betti/--m, not both")
        manifold = smale_name(link_homology(_parse_args_presentation(args.presentation)))
    else:
        if args.betti is None:
            raise DomainError("need a presentation or --betti (with optional --m)")
        torsion = ()
        if args.m:
            try:
                torsion = tuple(int(tok) for tok in args.m.split(","))
            except ValueError:
                raise DomainError(f"bad torsion list {args.m!r}")
        from .dimension import SmaleManifold

        manifold = SmaleManifold(args.betti, torsion)
    lookup = table_lookup(manifold)
    _emit(
        args.format,
        {
            "manifold": manifold.name(),
            "status": lookup.status,
            "row": lookup.row,
            "condition": lookup.condition,
        },
    )
    return 0


def _cmd_casson(args) -> int:
    value = casson_invariant((args.a0, args.a1, args.a2))
    _emit(args.format, {"casson": value})
    return 0


def _cmd_tight_count(args) -> int:
    value = tight_contact_count(args.p, args.q)
    _emit(args.format, {"count": value})
    return 0


def _cmd_moduli(args) -> int:
    link = as_link(_parse_args_presentation(args.presentation))
    value = moduli_dimension(link)
    reference = moduli_reference(link)
    mapping: dict = {"moduli": value}
    if reference is not None:
        mapping["reference"] = reference
        mapping["delta"] = value - reference
    _emit(args.format, mapping)
    if args.format == "text" and reference is not None:
        print(
            "note: the naive monomial-count model underlying this value is "
            "not pinned to the reference normalization; the delta is expected"
        )
    return 0


def _cmd_toric_gamma(args) -> int:
    result = gorenstein_gamma(_load_cone(args))
    if result.gamma is None:
        _emit(args.format, {"gamma": None, "reason": result.reason})
    else:
        _emit(args.format, {"gamma": result.gamma})
    return 0


def _cmd_toric_volume(args) -> int:
    cone = _load_cone(args)
    value = volume(cone, _parse_xi(args.xi))
    text = str(value) if isinstance(value, Fraction) else _fmt_float(value)
    if args.format == "records":
        _emit(args.format, {"volume": text, "float": float(value)})
    else:
        _emit(args.format, {"volume": text})
    return 0


def _cmd_toric_minimize(args) -> int:
    cone = _load_cone(args)
    start = _parse_xi(args.start) if args.start else None
    result = minimize_volume(cone, start=start, grad_tol=args.grad_tol)
    _emit(
        args.format,
        {
            "xi": _fmt_components(result.reeb.components),
            "volume": _fmt_float(result.value),
            "iterations": result.iterations,
            "grad_norm": _fmt_float(result.grad_norm),
        },
    )
    return 0


def _pipeline_worker(job: tuple[str, str]) -> dict:
    presentation, timestamp = job
    return run_pipeline(presentation, timestamp=timestamp).to_dict()


def _cmd_batch(args) -> int:
    from .catalog import CatalogRecord

    timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    coprime = None
    if args.coprime:
        coprime = True
    elif args.no_coprime:
        coprime = False
    presentations = [
        bp.presentation()
        for bp in enumerate_bp(
            args.length,
            args.max_exponent,
            link_type=args.type,
            coprime=coprime,
            status=args.status,
        )
    ]
    jobs = [(p, timestamp) for p in presentations]
    if args.jobs > 1:
        # Workers compute, the parent is the single writer; map() preserves
        # input order so the catalog is deterministic regardless of --jobs.
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            dicts = list(pool.map(_pipeline_worker, jobs, chunksize=16))
    else:
        dicts = [_pipeline_worker(job) for job in jobs]
    records = dedup_records(CatalogRecord.from_dict(d) for d in dicts)
    if args.output:
        with open(args.output, "w") as fh:
            count = write_catalog(records, fh)
    else:
        count = write_catalog(records, sys.stdout)
    print(f"wrote {count} records", file=sys.stderr)
    return 0


def _cmd_export_table(args) -> int:
    with open(args.catalog) as fh:
        _, records = read_catalog(fh)
    text = export_table(records)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ----------------------------------------------------------------- parser


def _add_presentation_argument(parser):
    parser.add_argument(
        "presentation",
        nargs="+",
        help="link presentation tokens, e.g. 'w=1,1,1,4,6 d=12' or 'bp=2,3,5'",
    )


def _add_cone_arguments(parser):
    parser.add_argument("file", help="cone or weight-matrix file")
    parser.add_argument(
        "--weights",
        action="store_true",
        help="treat FILE as a weight matrix ('k n' header) instead of facet normals",
    )


def build_parser() -> _Parser:
    shared = _Parser(add_help=False)
    shared.add_argument(
        "--format",
        choices=("text", "records", "table"),
        default=argparse.SUPPRESS,
        help="output format (default text)",
    )
    shared.add_argument(
        "--jobs",
        type=int,
        default=argparse.SUPPRESS,
        help="worker processes for batch runs (default 1)",
    )
    shared.add_argument(
        "--config",
        default=argparse.SUPPRESS,
        help="JSON config file with default format/jobs",
    )

    parser = _Parser(prog="selink", description=__doc__, parents=[shared])
    parser.set_defaults(format=None, jobs=None, config=None)
    parser.add_argument("--version", action="version", version=f"selink {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("classify", parents=[shared], help="trichotomy type and index")
    _add_presentation_argument(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("homology", parents=[shared], help="Betti number and torsion")
    _add_presentation_argument(p)
    p.add_argument(
        "--source",
        choices=("bp", "chain"),
        help="declare the defining polynomial class (affects the proven flag)",
    )
    p.set_defaults(func=_cmd_homology)

    p = sub.add_parser("verdict", parents=[shared], help="existence/obstruction verdict")
    _add_presentation_argument(p)
    p.set_defaults(func=_cmd_verdict)

    p = sub.add_parser("dim5-name", parents=[shared], help="Smale name of a 5-dim link")
    _add_presentation_argument(p)
    p.set_defaults(func=_cmd_dim5_name)

    p = sub.add_parser(
        "se-table", parents=[shared], help="classification table lookup for 5-manifolds"
    )
    p.add_argument("presentation", nargs="*", help="link presentation (optional)")
    p.add_argument("--betti", type=int, help="rank of H_2")
    p.add_argument("--m", help="comma-separated torsion chain m_1|m_2|...")
    p.set_defaults(func=_cmd_se_table)

    p = sub.add_parser("casson", parents=[shared], help="Casson invariant of a Brieskorn sphere")
    p.add_argument("a0", type=int)
    p.add_argument("a1", type=int)
    p.add_argument("a2", type=int)
    p.set_defaults(func=_cmd_casson)

    p = sub.add_parser("tight-count", parents=[shared], help="tight contact structures on L(p,q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=_cmd_tight_count)

    p = sub.add_parser("moduli", parents=[shared], help="naive moduli dimension")
    _add_presentation_argument(p)
    p.set_defaults(func=_cmd_moduli)

    p = sub.add_parser("toric", parents=[shared], help="moment-cone computations")
    toric_sub = p.add_subparsers(dest="toric_command", metavar="QUERY")

    q = toric_sub.add_parser("gamma", parents=[shared], help="Gorenstein vector of the cone")
    _add_cone_arguments(q)
    q.set_defaults(func=_cmd_toric_gamma)

    q = toric_sub.add_parser("volume", parents=[shared], help="normalized volume at --xi")
    _add_cone_arguments(q)
    q.add_argument("--xi", required=True, help="comma-separated rationals, e.g. 3,3/2,3/2")
    q.set_defaults(func=_cmd_toric_volume)

    q = toric_sub.add_parser("minimize", parents=[shared], help="volume-minimizing Reeb vector")
    _add_cone_arguments(q)
    q.add_argument("--start", help="starting Reeb vector (comma-separated rationals)")
    q.add_argument("--grad-tol", type=float, default=1e-8)
    q.set_defaults(func=_cmd_toric_minimize)

    p = sub.add_parser("batch", parents=[shared], help="enumerate BP links into a catalog")
    p.add_argument("--length", type=int, required=True, help="number of exponents")
    p.add_argument("--max-exponent", type=int, required=True)
    p.add_argument("--type", choices=LINK_TYPES, help="keep only this trichotomy type")
    p.add_argument("--coprime", action="store_true", help="keep only pairwise-coprime tuples")
    p.add_argument("--no-coprime", action="store_true", help="keep only non-coprime tuples")
    p.add_argument("--status", choices=STATUSES, help="keep only this verdict status")
    p.add_argument("-o", "--output", help="catalog file (default stdout)")
    p.set_defaults(func=_cmd_batch)

    p = sub.add_parser("export-table", parents=[shared], help="catalog file to TSV")
    p.add_argument("catalog", help="catalog file written by batch")
    p.add_argument("-o", "--output", help="TSV file (default stdout)")
    p.set_defaults(func=_cmd_export_table)

    return parser


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            config = json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read config {path!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise DomainError(f"config {path!r} is not valid JSON: {exc}")
    if not isinstance(config, dict):
        raise DomainError(f"config {path!r} must be a JSON object")
    unknown = set(config) - {"format", "jobs"}
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    if "format" in config and config["format"] not in ("text", "records", "table"):
        raise DomainError(f"bad config format {config['format']!r}")
    if "jobs" in config and (not isinstance(config["jobs"], int) or config["jobs"] < 1):
        raise DomainError(f"bad config jobs {config['jobs']!r}")
    return config


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help()
            return 0
        if getattr(args, "command", None) == "toric" and args.toric_command is None:
            raise DomainError("toric needs a query: gamma, volume or minimize")
        config = _load_config(args.config) if args.config else {}
        if args.format is None:
            args.format = config.get("format", "text")
        if args.jobs is None:
            args.jobs = config.get("jobs", 1)
        if args.jobs < 1:
            raise DomainError(f"--jobs must be >= 1, got {args.jobs}")
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
