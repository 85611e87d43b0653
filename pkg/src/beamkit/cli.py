"""Command-line surface for codeword design, codebook building, and simulation.

Commands: design-ideal, design-practical, build-codebook, simulate,
pattern, table1.  Exit codes: 0 success, 2 usage error, 3 I/O error,
4 numerical failure.  The BEAM_SEED environment variable supplies the
default seed; an optional JSON config file provides per-command defaults
that explicit flags override.
"""

import argparse
import json
import os
import statistics
import sys

import numpy as np

from .arrays import main_lobe_mse, pattern_csv, sample_pattern
from .channel import TrainingConfig, success_rate
from .codebook import build_codebook
from .ideal import SynthesisError, ls_icd, ps_icd
from .practical import deviation, fs_altmin
from .serialization import (
    load_codebook,
    load_codeword,
    save_codebook,
    save_codeword,
    save_hybrid,
)
from .targets import make_target

EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4


def _default_seed():
    return int(os.environ.get("BEAM_SEED", "0"))


def _parse_interval(text):
    lo, hi = (float(x) for x in text.split(":"))
    return lo, hi


def _parse_floats(text):
    return [np.inf if t in ("inf", "+inf") else -np.inf if t == "-inf" else float(t)
            for t in text.split(",")]


def _parse_ints(text):
    return [int(t) for t in text.split(",")]


def _merge_config(args, parser_defaults):
    """Fill unset options from the config file, then from hard defaults."""
    merged = dict(parser_defaults)
    if getattr(args, "config", None):
        with open(args.config) as fh:
            file_conf = json.load(fh)
        merged.update(file_conf.get(args.command, file_conf))
    for key, value in vars(args).items():
        if value is not None:
            merged[key] = value
    for key, value in merged.items():
        setattr(args, key, value)
    return args


def _make_cli_target(args):
    cover = _parse_interval(args.cover)
    if args.target == "step":
        heights = tuple(float(h) for h in args.heights.split(","))
        return make_target("step", cover, heights=heights, split=args.split)
    return make_target(args.target, cover)


def cmd_design_ideal(args):
    target = _make_cli_target(args)
    if args.method == "ps-icd":
        v = ps_icd(target, args.n, args.k, args.rmax, args.seed)
    else:
        v = ls_icd(target, args.n, args.k)
    save_codeword(v, args.out)
    grid = np.linspace(-1.0, 1.0, 2048)
    with open(args.pattern_csv, "w") as fh:
        fh.write(pattern_csv(sample_pattern(v, grid)))
    mse = main_lobe_mse(v, target)
    print(f"main_lobe_mse {mse:.12g}")
    return 0


def cmd_design_practical(args):
    v = load_codeword(args.input)
    nrfs = _parse_ints(str(args.nrf))
    seeds = [args.seed + i for i in range(args.seeds)]
    medians = []
    for n_rf in nrfs:
        devs = []
        for seed in seeds:
            trace = []
            hybrid = fs_altmin(v, n_rf, args.bits, t_max=args.tmax, seed=seed,
                               trace=trace)
            devs.append(deviation(v, hybrid.realized))
            if len(nrfs) == 1 and len(seeds) == 1:
                save_hybrid(hybrid, args.out)
                print("trace " + " ".join(f"{e:.12g}" for e in trace))
        med = statistics.median(devs)
        medians.append(med)
        print(f"nrf {n_rf} median_deviation {med:.12g}")
    return 0


def cmd_build_codebook(args):
    hw = None
    if args.nrf is not None:
        hw = {"n_rf": args.nrf, "b": args.bits, "t_max": args.tmax}
    cb = build_codebook(args.n, m=args.m, k=args.k, r_max=args.rmax,
                        seed=args.seed, method=args.method, hw=hw)
    save_codebook(cb, args.out)
    print(f"codebook n={cb.n} m={cb.m} layers={cb.s} written to {args.out}")
    return 0


def cmd_simulate(args):
    tx_path = args.tx_codebook or args.codebook
    rx_path = args.rx_codebook or args.codebook
    if tx_path is None or rx_path is None:
        raise ValueError("provide --codebook or both --tx-codebook/--rx-codebook")
    tx_cb = load_codebook(tx_path)
    rx_cb = load_codebook(rx_path)
    lines = ["snr_db,trials,successes,rate,ci95"]
    all_records = []
    for snr_db in _parse_floats(str(args.snr)):
        cfg = TrainingConfig(
            tx_codebook=tx_cb, rx_codebook=rx_cb, snr_db=snr_db,
            trials=args.trials, seed=args.seed, paths=args.paths,
            use_practical=args.practical,
        )
        out = success_rate(cfg)
        lines.append(
            f"{snr_db:.12g},{out['trials']},{out['successes']},"
            f"{out['rate']:.12g},{out['ci95']:.12g}"
        )
        if args.record_trials:
            all_records.append({"snr_db": snr_db, "records": out["records"]})
    text = "\n".join(lines) + "\n"
    with open(args.out, "w") as fh:
        fh.write(text)
    if args.record_trials:
        with open(args.out + ".trials.json", "w") as fh:
            json.dump(all_records, fh)
            fh.write("\n")
    sys.stdout.write(text)
    return 0


def cmd_pattern(args):
    v = load_codeword(args.input)
    grid = np.linspace(-1.0, 1.0, args.points)
    with open(args.out, "w") as fh:
        fh.write(pattern_csv(sample_pattern(v, grid)))
    return 0


def cmd_table1(args):
    sizes = _parse_ints(str(args.sizes))
    target = make_target("rect", (-1.0, 0.0))
    print("n_t,ps_icd_mse,ls_icd_mse")
    for n in sizes:
        vp = ps_icd(target, n, args.k, args.rmax, args.seed)
        vl = ls_icd(target, n, args.k)
        print(f"{n},{main_lobe_mse(vp, target):.12g},"
              f"{main_lobe_mse(vl, target):.12g}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="beamkit",
        description="Two-step beamforming codeword design toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **hard_defaults):
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON file with default option values")
        p.set_defaults(func=func, hard_defaults=hard_defaults)
        return p

    p = add("design-ideal", cmd_design_ideal, method="ps-icd", target="rect",
            cover="-1:0", heights="1,2", split=0.5, k=128, rmax=2000,
            seed=_default_seed(), out="codeword.json",
            pattern_csv="pattern.csv")
    p.add_argument("--method", choices=["ps-icd", "ls-icd"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cover", help="coverage interval as lo:hi")
    p.add_argument("--target", choices=["rect", "triangular", "step"])
    p.add_argument("--heights", help="step plateau heights h1,h2")
    p.add_argument("--split", type=float, help="step split fraction")
    p.add_argument("--k", type=int)
    p.add_argument("--rmax", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--pattern-csv", dest="pattern_csv")

    p = add("design-practical", cmd_design_practical, bits=6, tmax=50,
            seeds=1, seed=_default_seed(), out="hybrid.json")
    p.add_argument("--input", required=True, help="ideal codeword JSON")
    p.add_argument("--nrf", required=True, help="RF chain count(s), e.g. 1,2,4")
    p.add_argument("--bits", type=int)
    p.add_argument("--tmax", type=int)
    p.add_argument("--seeds", type=int, help="number of seeds for the median")
    p.add_argument("--seed", type=int)
    p.add_argument("--out")

    p = add("build-codebook", cmd_build_codebook, m=2, k=128, rmax=2000,
            method="ps-icd", bits=6, tmax=50, seed=_default_seed(),
            out="codebook.json")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--rmax", type=int)
    p.add_argument("--method", choices=["ps-icd", "ls-icd"])
    p.add_argument("--nrf", type=int, help="RF chains (omit for ideal-only)")
    p.add_argument("--bits", type=int)
    p.add_argument("--tmax", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")

    p = add("simulate", cmd_simulate, snr="-10,-5,0,5,10", trials=500,
            paths=1, seed=_default_seed(), practical=False,
            record_trials=False, out="success.csv")
    p.add_argument("--codebook", help="codebook JSON used for both ends")
    p.add_argument("--tx-codebook", dest="tx_codebook")
    p.add_argument("--rx-codebook", dest="rx_codebook")
    p.add_argument("--snr", help="SNR grid in dB, e.g. -10,-5,0 or inf")
    p.add_argument("--trials", type=int)
    p.add_argument("--paths", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--practical", action="store_const", const=True)
    p.add_argument("--record-trials", dest="record_trials",
                   action="store_const", const=True)
    p.add_argument("--out")

    p = add("pattern", cmd_pattern, points=2048, out="pattern.csv")
    p.add_argument("--input", required=True)
    p.add_argument("--points", type=int)
    p.add_argument("--out")

    p = add("table1", cmd_table1, sizes="16,32,64,128", k=128, rmax=2000,
            seed=_default_seed())
    p.add_argument("--sizes")
    p.add_argument("--k", type=int)
    p.add_argument("--rmax", type=int)
    p.add_argument("--seed", type=int)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge_config(args, args.hard_defaults)
        return args.func(args)
    except (FileNotFoundError, PermissionError, IsADirectoryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (SynthesisError, RuntimeError, np.linalg.LinAlgError,
            FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
