"""Command-line front end: ``iaforge {ia,rmar,complete,build-model,force,verify}``.

Exit codes: 0 success, 1 input error, 2 a theorem hypothesis is unmet
(or a model is not rationality-complete), 3 a violation or failed check.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from . import harness, serialization
from .admissibility import ia_levels
from .belief import FULL, IA_CHAIN, BeliefModel, build_canonical_model, check_rationality_complete, rmar_levels
from .errors import IAForgeError, InputError
from .forcing import EXHAUSTIVE, EXHAUSTIVE_LIMIT, WITNESS, analyse, canonical_names, forces, indiscernibility_probe
from .game import Game

log = logging.getLogger("iaforge")

EXIT_OK, EXIT_INPUT, EXIT_UNMET, EXIT_VIOLATION = 0, 1, 2, 3


def _model_of(path) -> BeliefModel:
    obj = serialization.read_game_or_model(path)
    if isinstance(obj, Game):
        return build_canonical_model(obj).model
    return obj


def _emit(obj, args) -> None:
    text = serialization.dumps(obj, pretty=args.pretty)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_ia(args) -> int:
    game = serialization.read_game(args.game)
    _emit(serialization.ia_report(game, ia_levels(game)), args)
    return EXIT_OK


def cmd_rmar(args) -> int:
    model = _model_of(args.model)
    _emit(serialization.rmar_report(model, rmar_levels(model)), args)
    return EXIT_OK


def cmd_complete(args) -> int:
    model = _model_of(args.model)
    report = check_rationality_complete(model, args.mode)
    _emit(serialization.completeness_report(report), args)
    return EXIT_OK if report.satisfied else EXIT_UNMET


def cmd_build_model(args) -> int:
    game = serialization.read_game(args.game)
    canon = build_canonical_model(game)
    out = serialization.model_to_dict(canon.model)
    out["completeness"] = serialization.completeness_report(canon.report)
    _emit(out, args)
    return EXIT_OK if canon.report.satisfied else EXIT_UNMET


def cmd_force(args) -> int:
    model = _model_of(args.model)
    fa = analyse(model, args.m_max, cumulative=args.unfold == "cumulative", self_pairs=args.self_pairs)
    names = canonical_names(fa.generic, fa.m_max)
    mode = args.forcing_mode
    if mode == EXHAUSTIVE and len(fa.poset) > EXHAUSTIVE_LIMIT:
        log.warning("poset has %d conditions; falling back to witness mode", len(fa.poset))
        mode = WITNESS
    verdicts = []
    for gamma in sorted(fa.generic):
        for mu in names:
            v = forces(gamma, mu, model, mode, generic=fa.generic, poset=fa.poset, levels=fa.levels)
            verdicts.append({"condition": serialization.profile_to_list(gamma.profile),
                             "name_rank": mu.rank, "mode": v.mode, "holds": v.holds,
                             "filters_checked": v.filters_checked,
                             "evidence": ([serialization.profile_to_list(p) for p in v.evidence]
                                          if v.mode == WITNESS else
                                          [{"filter": [serialization.profile_to_list(p) for p in e["filter"]],
                                            "holds": e["holds"]} for e in v.evidence])})
    probe = None
    if args.probe_k is not None:
        probe = indiscernibility_probe(model, fa.generic, args.probe_k, fa.levels)
    _emit(serialization.forcing_report(fa, verdicts, probe), args)
    return EXIT_OK if all(v["holds"] for v in verdicts) else EXIT_VIOLATION


def cmd_verify(args) -> int:
    strategies = tuple(int(x) for x in args.strategies.split(","))
    if len(strategies) == 1:
        strategies = strategies * args.players
    values = tuple(int(x) for x in args.values.split(","))
    spec = harness.GameFamilySpec(args.players, strategies, values, args.cap, args.seed, args.sample)
    log.info("verifying %d games", spec.total)
    result = harness.verify_family(spec, forcing=not args.no_forcing, timings=args.timings)
    _emit(result.manifest, args)
    return harness.exit_code(result.manifest)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")

    parser = argparse.ArgumentParser(prog="iaforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ia", parents=[common], help="iterated admissibility levels of a game")
    p.add_argument("game")
    p.set_defaults(func=cmd_ia)

    p = sub.add_parser("rmar", parents=[common], help="RmAR chain of a model (or a game's canonical model)")
    p.add_argument("model")
    p.set_defaults(func=cmd_rmar)

    p = sub.add_parser("complete", parents=[common], help="rationality-completeness check")
    p.add_argument("model")
    p.add_argument("--mode", choices=[FULL, IA_CHAIN], default=IA_CHAIN)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("build-model", parents=[common], help="canonical belief model of a game")
    p.add_argument("game")
    p.set_defaults(func=cmd_build_model)

    p = sub.add_parser("force", parents=[common], help="forcing report of a model")
    p.add_argument("model")
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--forcing-mode", choices=[WITNESS, EXHAUSTIVE], default=WITNESS)
    p.add_argument("--unfold", choices=["exact", "cumulative"], default="exact")
    p.add_argument("--self-pairs", action="store_true", help="also require t_i in P^m_i[t_i]")
    p.add_argument("--probe-k", type=int, default=None, metavar="K",
                   help="run the indiscernibility probe with terms of up to K connectives")
    p.set_defaults(func=cmd_force)

    p = sub.add_parser("verify", parents=[common], help="exhaustive verification over a game family")
    p.add_argument("--players", type=int, default=2)
    p.add_argument("--strategies", default="2", help="per-player counts, e.g. 2,3 (one value = all)")
    p.add_argument("--values", default="0,1,2", help="payoff values, comma separated")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample", type=int, default=None, help="draw this many random games instead")
    p.add_argument("--no-forcing", action="store_true")
    p.add_argument("--timings", action="store_true", help="add wall-clock per phase (not reproducible)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    level = os.environ.get("IAFORGE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    if getattr(args, "m_max", None) is not None and args.m_max < 0:
        print("iaforge: error: --m-max must be nonnegative", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"iaforge: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except IAForgeError as exc:
        print(f"iaforge: internal error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
