"""Command-line front door.

Exit codes: 0 success (and "periodic" for check-period), 1 a check came
out negative, 2 malformed input or internal failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog as cat
from . import semifield
from .dilog import constancy_probe, verify_identity
from .periodicity import (
    NuPeriodSpec,
    enumerate_matrix_period_nus,
    find_periods,
    matrix_period_witness,
    period_check_payload,
    perm_power,
)
from .seeds import ExchangeMatrix, IntegrityError, PrincipalSeed, Quiver, apply_sequence
from .seqlang import parse_sliced_sequence
from .serialize import canon_json
from .tysystems import (
    build_schedule,
    gen_t_system,
    gen_y_system,
    render_latex,
    render_latex_balanced,
)


class CliError(ValueError):
    pass


def _load_matrix(args) -> tuple:
    """(ExchangeMatrix, entry-or-None) from --catalog/--seed/--matrix."""
    sources = [s for s in (args.catalog, args.seed, args.matrix) if s]
    if len(sources) != 1:
        raise CliError("give exactly one of --catalog, --seed, --matrix")
    if args.catalog:
        entry = cat.get_entry(args.catalog)
        return entry.matrix, entry
    if args.seed:
        with open(args.seed) as fh:
            data = json.load(fh)
        if "B" in data:
            return ExchangeMatrix.from_rows(data["B"]), None
        if "arrows" in data:
            return Quiver.from_json(data).to_matrix(), None
        raise CliError("seed file needs a 'B' matrix or quiver 'arrows'")
    return ExchangeMatrix.from_rows(json.loads(args.matrix)), None


def _resolve_nu(text, entry, n: int) -> tuple:
    if text in (None, "id"):
        return tuple(range(n))
    if entry is not None:
        base, _, power = text.partition("^")
        if base in entry.permutations:
            nu = entry.permutations[base]
            return perm_power(nu, int(power)) if power else nu
    if text.startswith("["):
        vals = json.loads(text)
    else:
        with open(text) as fh:
            vals = json.load(fh)
    if isinstance(vals, dict):
        vals = [vals[str(i + 1)] for i in range(n)]
    nu = tuple(int(v) - 1 for v in vals)
    if sorted(nu) != list(range(n)):
        raise CliError("nu is not a bijection")
    return nu


def _resolve_sequence(args, entry) -> tuple:
    """(slices, nu) from --sequence/--claim plus --nu."""
    if getattr(args, "claim", None):
        if entry is None:
            raise CliError("--claim needs --catalog")
        for claim in entry.claims:
            if claim.label == args.claim:
                return claim.slices, claim.nu
        labels = ", ".join(c.label for c in entry.claims)
        raise CliError(f"unknown claim {args.claim!r}; entry has: {labels}")
    if not getattr(args, "sequence", None):
        raise CliError("give --sequence or --claim")
    slices = parse_sliced_sequence(args.sequence)
    return slices, None


def _emit(args, payload: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)


# -- subcommands -------------------------------------------------------------


def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = []
        for name in cat.entry_names():
            e = cat.get_entry(name)
            rows.append(
                {
                    "name": e.name,
                    "n": e.n,
                    "description": e.description,
                    "claims": len(e.claims),
                    "has_seed_period": e.has_seed_period(),
                }
            )
        _emit(args, canon_json(rows))
        return 0
    entry = cat.get_entry(args.name)
    if args.format == "dot":
        _emit(args, entry.quiver().to_dot(entry.labels))
    else:
        _emit(args, canon_json(entry.to_json()))
    return 0


def cmd_mutate(args) -> int:
    B, entry = _load_matrix(args)
    slices, _ = _resolve_sequence(args, entry)
    seq = tuple(k for sl in slices for k in sl)
    if any(not 0 <= k < B.n for k in seq):
        raise CliError(f"sequence index out of range for n={B.n}")
    seed = apply_sequence(PrincipalSeed.initial(B), seq)
    _emit(args, canon_json(seed.to_json()))
    return 0


def cmd_check_period(args) -> int:
    B, entry = _load_matrix(args)
    slices, claim_nu = _resolve_sequence(args, entry)
    seq = tuple(k for sl in slices for k in sl)
    nu = claim_nu if args.nu is None and claim_nu is not None else _resolve_nu(args.nu, entry, B.n)
    spec = NuPeriodSpec(seq, nu)
    if args.level == "matrix":
        result = {"sequence": [k + 1 for k in seq], "nu": [v + 1 for v in nu]}
        witness = matrix_period_witness(B, spec)
        ok = witness is None
        result["matrix_periodic"] = ok
        result["witness"] = witness and [witness[0] + 1, witness[1] + 1]
        _emit(args, canon_json(result))
        return 0 if ok else 1
    payload, periodic = period_check_payload(B, spec, args.method)
    _emit(args, canon_json(payload))
    return 0 if periodic else 1


def cmd_find_period(args) -> int:
    B, _ = _load_matrix(args)
    found = find_periods(B, args.max_length, args.limit)
    _emit(args, canon_json([f.to_json() for f in found]))
    return 0 if found else 1


def cmd_gen_system(args, kind: str) -> int:
    B, entry = _load_matrix(args)
    slices, claim_nu = _resolve_sequence(args, entry)
    if args.slicing == "singletons":
        slices = tuple((k,) for sl in slices for k in sl)
    nu = claim_nu if args.nu is None and claim_nu is not None else _resolve_nu(args.nu, entry, B.n)
    seq = tuple(k for sl in slices for k in sl)
    schedule = build_schedule(B, NuPeriodSpec(seq, nu), slices)
    if kind == "Y":
        rels = gen_y_system(schedule)
    else:
        rels = gen_t_system(schedule, with_coefficients=not args.no_coefficients)
    if args.format == "latex":
        if args.balanced:
            _emit(args, render_latex_balanced(schedule, rels))
        else:
            _emit(args, render_latex(rels))
    else:
        _emit(
            args,
            canon_json(
                {"schedule": schedule.to_json(), "relations": [r.to_json() for r in rels]}
            ),
        )
    return 0


def cmd_verify_dilog(args) -> int:
    B, entry = _load_matrix(args)
    if getattr(args, "claim", None) is None and getattr(args, "sequence", None) is None and entry is not None:
        slices, claim_nu = entry.seed_period_claim().slices, entry.seed_period_claim().nu
    else:
        slices, claim_nu = _resolve_sequence(args, entry)
    if not B.is_skew_symmetric() and not args.weighted:
        raise CliError("matrix is skew-symmetrizable only: pass --weighted for the weighted identity")
    nu = claim_nu if claim_nu is not None else tuple(range(B.n))
    seq = tuple(k for sl in slices for k in sl)
    # the dilogarithm data does not depend on the slicing; singletons always work
    schedule = build_schedule(B, NuPeriodSpec(seq, nu))
    report = verify_identity(
        schedule,
        trials=args.trials,
        tolerance=args.tolerance,
        rng_seed=args.rng_seed,
    )
    payload = report.to_json()
    if args.constancy:
        payload["constancy"] = constancy_probe(schedule, rng_seed=args.rng_seed).to_json()
    _emit(args, canon_json(payload))
    return 0 if report.ok else 1


def cmd_nus(args) -> int:
    B, entry = _load_matrix(args)
    slices, _ = _resolve_sequence(args, entry)
    seq = tuple(k for sl in slices for k in sl)
    nus = enumerate_matrix_period_nus(B, seq)
    _emit(args, canon_json([[v + 1 for v in nu] for nu in nus]))
    return 0 if nus else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(args.data_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _add_source_args(p):
    p.add_argument("--catalog", help="built-in entry name")
    p.add_argument("--seed", help="seed or quiver JSON file")
    p.add_argument("--matrix", help="inline JSON matrix, e.g. '[[0,1],[-1,0]]'")


def _add_sequence_args(p):
    p.add_argument("--sequence", help="mutation sequence, e.g. '(1,2)^5' or '(1,3)|(2)'")
    p.add_argument("--claim", help="named claim of the catalog entry")
    p.add_argument("--nu", help="relabeling: 'id', catalog name (e.g. 'nu', 'rho^2'), JSON list, or file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="periodica",
        description="Exact mutation periodicity checks, T/Y-systems, dilogarithm verification",
    )
    parser.add_argument("--max-terms", type=int, help="polynomial term cap")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list or show built-in quivers")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("mutate", help="apply a mutation sequence, print the tracked seed")
    _add_source_args(p)
    _add_sequence_args(p)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_mutate)

    p = sub.add_parser("check-period", help="decide matrix/seed periodicity")
    _add_source_args(p)
    _add_sequence_args(p)
    p.add_argument("--method", choices=["tropical", "symbolic", "both"], default="tropical")
    p.add_argument("--level", choices=["seed", "matrix"], default="seed")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_check_period)

    p = sub.add_parser("find-period", help="bounded search for seed periods")
    _add_source_args(p)
    p.add_argument("--max-length", type=int, default=12)
    p.add_argument("--limit", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_find_period)

    for kind, name in (("Y", "gen-ysystem"), ("T", "gen-tsystem")):
        p = sub.add_parser(name, help=f"emit the {kind}-system of a sliced period")
        _add_source_args(p)
        _add_sequence_args(p)
        p.add_argument("--slicing", choices=["given", "singletons"], default="given")
        p.add_argument("--format", choices=["json", "latex"], default="json")
        p.add_argument("--balanced", action="store_true",
                       help="half-shift presentation (regular periods only)")
        if kind == "T":
            p.add_argument("--no-coefficients", action="store_true")
        p.add_argument("--out")
        p.set_defaults(fn=lambda a, k=kind: cmd_gen_system(a, k))
        if kind == "Y":
            p.set_defaults(no_coefficients=False)

    p = sub.add_parser("verify-dilog", help="check the dilogarithm identities of a seed period")
    _add_source_args(p)
    _add_sequence_args(p)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--rng-seed", type=int, default=2026)
    p.add_argument("--weighted", action="store_true", help="allow skew-symmetrizable input (conditional identity)")
    p.add_argument("--constancy", action="store_true", help="also run the constancy probe")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify_dilog)

    p = sub.add_parser("enumerate-nu", help="all relabelings making the sequence a matrix period")
    _add_source_args(p)
    _add_sequence_args(p)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_nus)

    p = sub.add_parser("serve", help="run the HTTP/JSON service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8642)
    p.add_argument("--data-dir", default=None, help="session directory (default $PERIODICA_DATA or temp)")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_terms:
        semifield.set_max_terms(args.max_terms)
    try:
        return args.fn(args)
    except BrokenPipeError:  # pragma: no cover
        return 0
    except (
        CliError,
        ValueError,
        KeyError,
        OSError,
        json.JSONDecodeError,
        semifield.SizeLimitError,
        IntegrityError,
    ) as exc:
        print(f"periodica: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
