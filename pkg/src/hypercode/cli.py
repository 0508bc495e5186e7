"""Command-line entry point: ``hypercode <subcommand> [options]``.

Every run prints a JSON echo of its normalised arguments (including the
resolved seed) to stderr, and ``--save-config`` writes it to a file. Passing
that file back with ``hypercode --config FILE`` repeats the run exactly.

Exit status: 0 on success, 1 when decoding fails, 2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

DEFAULT_SEED = 2007
SEED_ENV = "HYPERCODE_SEED"


class UsageError(Exception):
    pass


def default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _write(path: str | None, text: str) -> None:
    if path is None:
        return
    p = Path(path)
    if p.parent and not p.parent.exists():
        p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text)


def _parse_range(spec: str) -> list[int]:
    """Weights from ``a..b`` (inclusive) or a comma list."""
    try:
        if ".." in spec:
            a, b = spec.split("..", 1)
            return list(range(int(a), int(b) + 1))
        return [int(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad weight list {spec!r}") from None


def _kappa(s: str | None):
    if s is None:
        return None
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad kappa {s!r}") from None


# bounds ---------------------------------------------------------------------------


def cmd_bounds(args) -> int:
    from . import bounds as b
    from .local_codes import make_named_code

    if (args.ensemble is None) == (args.radius is None):
        raise UsageError("give exactly one of --ensemble and --radius")
    if args.radius:
        if args.t is None or args.delta1 is None:
            raise UsageError("--radius needs --t and --delta1")
        if args.radius == "bh" and args.t % 2:
            raise UsageError("the bh radius needs even t")
        kappa = float(_kappa(args.kappa)) if args.kappa else None
        rep = b.radius_report(args.radius, args.t, args.delta1, args.alpha, kappa, args.epsilon)
        print(f"{rep.radius_fraction:.10g}")
        _write(args.out, rep.to_json() + "\n")
        return 0

    ens = args.ensemble
    if args.t is None:
        raise UsageError("--t is required")
    meta = {"ensemble": ens, "t": args.t}
    if ens in ("c1", "c3"):
        if args.rate is None:
            raise UsageError(f"--ensemble {ens} needs --rate")
        if not 0 < args.rate < 1:
            raise UsageError("--rate must lie in (0, 1)")
        F = (lambda w: b.c1_exponent(args.t, args.rate, w)) if ens == "c1" else (lambda w: b.c3_exponent(args.t, args.rate, w))
        meta["R"] = args.rate
        head = b.spectrum_first_zero(F)
    elif ens == "c2chernov":
        if not args.code:
            raise UsageError("--ensemble c2chernov needs --code")
        A = make_named_code(args.code)
        a = A.weight_enumerator
        F = lambda w: b.c2_chernov_exponent(a, A.n, args.t, w)  # noqa: E731
        meta.update(code=args.code, n=A.n)
        head = b.chernov_first_zero(a, A.n, args.t)
    elif ens == "c2mindist":
        if args.code:
            A = make_named_code(args.code)
            n, d1 = A.n, A.d1
        elif args.n and args.d1:
            n, d1 = args.n, args.d1
        else:
            raise UsageError("--ensemble c2mindist needs --code or --n and --d1")
        F = lambda w: b.c2_mindist_exponent(n, d1, args.t, w)  # noqa: E731
        meta.update(n=n, d1=d1)
        head = b.mindist_first_zero(n, d1, args.t)
    elif ens == "c2corollary":
        if args.delta1 is None:
            raise UsageError("--ensemble c2corollary needs --delta1")
        F = lambda w: b.c2_corollary_exponent(args.delta1, args.t, w)  # noqa: E731
        meta["delta1"] = args.delta1
        head = b.spectrum_first_zero(F)
    else:  # threshold
        print(f"{b.gv_attainment_threshold(args.t):.10g}")
        return 0
    print(f"{head:.10g}")
    if args.out:
        grid = np.linspace(0.0, 0.5, args.points + 1)[1:]
        _write(args.out, b.exponent_curve(F, grid, **meta).to_csv())
    return 0


# construct ------------------------------------------------------------------------


def _read_graph(path: str):
    from .gf2 import BitMatrix
    from .hypergraphs import Graph

    M = BitMatrix.from_text(Path(path).read_text())
    return Graph.from_adjacency_matrix(M.to_array())


def cmd_construct(args) -> int:
    from .gf2 import random_parity_matrix_from
    from .hypergraph_code import build, write_manifest
    from .hypergraphs import path_hypergraph, random_hypergraph
    from .local_codes import from_parity_check, make_named_code

    eps = None
    if args.model == "random":
        missing = [f for f in ("t", "m", "n") if getattr(args, f) is None]
        if missing:
            raise UsageError("--model random needs " + ", ".join("--" + f for f in missing))
        H = random_hypergraph(args.t, args.m, args.n, args.seed)
    else:
        if not args.graph or args.t is None:
            raise UsageError("--model path needs --graph and --t")
        G = _read_graph(args.graph)
        H, eps = path_hypergraph(G, args.t)
    if args.random_rows is not None:
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(args.seed, spawn_key=(1,))))
        codes = [[from_parity_check(random_parity_matrix_from(rng, args.random_rows, H.n), name=f"random_{p}_{v}")
                  for v in range(H.m)] for p in range(H.t)]
    else:
        codes = make_named_code(args.code or f"full_space_{H.n}")
    C = build(H, codes)
    meta = {"model": args.model, "seed": args.seed}
    if eps is not None:
        meta["epsilon"] = repr(eps)
    if args.out:
        write_manifest(args.out, C, meta)
    print(f"N={C.N}")
    print(f"n={C.n}")
    print(f"dimension={C.dimension}")
    print(f"rate={C.rate:.10g}")
    if eps is not None:
        print(f"epsilon={eps:.10g}")
    return 0


# decode ---------------------------------------------------------------------------


def _config(args):
    from .decoders import DecoderConfig

    return DecoderConfig(kappa=_kappa(args.kappa), depth=args.depth, bh_max_iters=args.max_iters,
                         candidate_cap=args.candidate_cap)


def cmd_decode(args) -> int:
    from .decoders import decode, trace_csv
    from .gf2 import BitVector
    from .hypergraph_code import read_manifest

    C, _ = read_manifest(args.manifest)
    if args.word is not None:
        text = args.word
    elif args.input:
        text = Path(args.input).read_text()
    else:
        raise UsageError("give --input or --word")
    try:
        y = BitVector.from_string(text.strip())
    except ValueError as e:
        raise UsageError(f"bad received word: {e}") from None
    if y.length != C.N:
        raise UsageError(f"received word has length {y.length}, code length is {C.N}")
    outcome = decode(C, y, args.decoder, _config(args))
    payload = outcome.to_json() + "\n"
    if args.out:
        _write(args.out + ".json", payload)
        if outcome.success:
            _write(args.out + ".txt", str(outcome.result) + "\n")
    if args.trace:
        truth = BitVector.from_string(Path(args.truth).read_text().strip()) if args.truth else None
        _write(args.trace, trace_csv(outcome, truth))
    if not outcome.success:
        print(payload, end="")
        return 1
    print(outcome.result)
    return 0


# simulate -------------------------------------------------------------------------


def cmd_simulate(args) -> int:
    from . import simulator as sim
    from .hypergraph_code import read_manifest

    if args.ensemble:
        missing = [f for f in ("t", "m", "n") if getattr(args, f) is None]
        if missing:
            raise UsageError("--ensemble needs " + ", ".join("--" + f for f in missing))
        ens = args.ensemble.upper()
        if ens == "C2":
            if not args.code:
                raise UsageError("C2 needs --code")
            local = args.code
        else:
            if args.rows is None:
                raise UsageError(f"{ens} needs --rows")
            local = args.rows
        rep = sim.ensemble_spectrum_mc(ens, args.t, args.m, args.n, local, args.trials, args.seed, jobs=args.jobs)
    else:
        if not args.manifest or not args.sweep:
            raise UsageError("give --ensemble, or --manifest with --sweep")
        C, _ = read_manifest(args.manifest)
        weights = _parse_range(args.sweep)
        rep = sim.decode_success_sweep(C, args.decoder, _config(args), weights, args.trials, args.seed,
                                       base=args.base, jobs=args.jobs)
    print(f"wall_time={rep.wall_time:.3f}s", file=sys.stderr)
    text = rep.to_json() + "\n" if args.format == "json" else rep.to_csv()
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


# spectrum -------------------------------------------------------------------------


def cmd_spectrum(args) -> int:
    from . import bounds as b

    if not 0 < args.rate < 1:
        raise UsageError("--rate must lie in (0, 1)")
    grid = np.linspace(0.0, 0.5, args.points + 1)[1:]
    lines = ["omega,c1,c3,random_linear"]
    for w in grid:
        lines.append(
            f"{w:.6f},{b.c1_exponent(args.t, args.rate, w):.12g},"
            f"{b.c3_exponent(args.t, args.rate, w):.12g},{b.random_linear_exponent(args.rate, w):.12g}"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


# parser ---------------------------------------------------------------------------


def _decoder_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--decoder", choices=("bh", "branching"), default="branching")
    p.add_argument("--kappa", help="threshold divisor (rational, default t+1)")
    p.add_argument("--depth", type=int, default=1, help="branching depth s")
    p.add_argument("--max-iters", type=int, default=50)
    p.add_argument("--candidate-cap", type=int, default=4096)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypercode", description="Codes on regular hypergraphs.")
    parser.add_argument("--config", help="replay a saved run configuration")
    parser.add_argument("--save-config", help="write the run configuration echo to this file")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("bounds", help="distance estimates and decoding radii")
    p.add_argument("--ensemble", choices=("c1", "c3", "c2chernov", "c2mindist", "c2corollary", "threshold"))
    p.add_argument("--radius", choices=("refined", "simple", "bh", "epsilon"))
    p.add_argument("--t", type=int)
    p.add_argument("--rate", type=float)
    p.add_argument("--code")
    p.add_argument("--n", type=int)
    p.add_argument("--d1", type=int)
    p.add_argument("--delta1", type=float)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--kappa")
    p.add_argument("--epsilon", type=float, default=0.0)
    p.add_argument("--points", type=int, default=500)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("construct", help="build a hypergraph code and write its manifest")
    p.add_argument("--model", choices=("random", "path"), required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--graph", help="adjacency matrix in matrix text format")
    p.add_argument("--code", help="named local code (default: full space)")
    p.add_argument("--random-rows", type=int, help="use independent random local checks with this many rows")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output directory")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("decode", help="decode one received word")
    p.add_argument("--manifest", required=True)
    p.add_argument("--input", help="file holding the received word as a 0/1 line")
    p.add_argument("--word", help="received word given inline")
    _decoder_flags(p)
    p.add_argument("--out", help="output prefix (.txt word, .json outcome)")
    p.add_argument("--trace", help="write the candidate trace CSV here")
    p.add_argument("--truth", help="transmitted codeword, for residual weights in the trace")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("simulate", help="Monte-Carlo decoding sweeps and ensemble spectra")
    p.add_argument("--manifest")
    p.add_argument("--sweep", help="error weights, a..b or comma list")
    _decoder_flags(p)
    p.add_argument("--base", choices=("zero", "random"), default="zero")
    p.add_argument("--ensemble", choices=("C1", "C2", "C3", "c1", "c2", "c3"))
    p.add_argument("--t", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--rows", type=int, help="parity rows per vertex (C1, C3)")
    p.add_argument("--code", help="named local code (C2)")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("spectrum", help="exponent curves of C1, C3 and random linear codes")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--points", type=int, default=500)
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectrum)
    return parser


def normalized_argv(parser: argparse.ArgumentParser, args: argparse.Namespace) -> list[str]:
    """Rebuild an argv that reproduces ``args`` (defaults spelled out)."""
    sub = parser._subparsers._group_actions[0].choices[args.command]  # type: ignore[union-attr]
    argv = [args.command]
    for action in sub._actions:
        if not action.option_strings or action.dest in ("help",):
            continue
        value = getattr(args, action.dest, None)
        if value is None:
            continue
        argv += [action.option_strings[0], str(value)]
    return argv


def run_config(parser, args) -> dict:
    return {"command": args.command, "argv": normalized_argv(parser, args), "seed": getattr(args, "seed", None)}


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    save = args.save_config
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text())
            args = parser.parse_args(cfg["argv"])
        except (OSError, ValueError, KeyError) as e:
            print(f"hypercode: cannot replay config: {e}", file=sys.stderr)
            return 2
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        if hasattr(args, "seed") and args.seed is None:
            args.seed = default_seed()
        echo = run_config(parser, args)
        print(json.dumps(echo, sort_keys=True), file=sys.stderr)
        if save:
            _write(save, json.dumps(echo, sort_keys=True, indent=1) + "\n")
        return args.func(args)
    except UsageError as e:
        print(f"hypercode: {e}", file=sys.stderr)
        return 2
    except (OSError, KeyError, ValueError) as e:
        print(f"hypercode: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
