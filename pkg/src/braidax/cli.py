"""Command-line interface.

Braid words are given on the command line after a ``--`` separator as
whitespace-separated signed integers (i > 0 for the i-th generator, i < 0
for its inverse); the strand count is always explicit via ``--n`` and never
inferred.  Data outputs are deterministic: identical inputs give byte
identical reports, and runtime metadata goes to stderr.

Exit codes: 0 all checks passed, 1 an assertion failed, 2 usage or parse
error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .burau import conway_matches_alexander
from .conway import SkeinEngine, conway_truncated, full_conway, hoste_lowest
from .diagram import axis_link_diagram, closure_diagram, component_count, linking_matrix
from .experiments import EXPERIMENTS, ExperimentError
from .words import (
    BraidWord,
    WordError,
    admits_exchange,
    cycle_decomposition,
    exchange_split,
    exponent_sum,
    nonconjugacy_criterion,
    parse_word,
    permutation_of,
)

USAGE_ERROR, CHECK_FAILURE, OK = 2, 1, 0


@dataclass
class RunConfig:
    """Validated invocation parameters for one CLI run."""

    command: str
    strands: int | None = None
    word: tuple[int, ...] | None = None
    degree: int = 3
    m_min: int | None = None
    m_max: int | None = None
    out_dir: Path = Path(".")
    out_format: str = "both"  # tsv | json | both
    cache: bool = True
    jobs: int = 1
    extra: dict = field(default_factory=dict)

    def validate(self):
        if self.degree < 0:
            raise WordError("--degree must be >= 0")
        if self.jobs < 1:
            raise WordError("--jobs must be >= 1")
        if self.out_format not in ("tsv", "json", "both"):
            raise WordError("--format must be tsv, json, or both")
        if (self.m_min is None) != (self.m_max is None):
            raise WordError("--m-min and --m-max must be given together")
        if self.m_min is not None and self.m_min > self.m_max:
            raise WordError("--m-min must not exceed --m-max")


def _extract_word_tokens(argv: list[str]):
    """Pull the braid word out of argv: integer tokens following ``--``.

    Flags may continue after the word; only the maximal run of integer
    tokens right after the separator is consumed.
    """
    if "--" not in argv:
        return None, argv
    i = argv.index("--")
    j = i + 1
    word = []
    while j < len(argv):
        try:
            int(argv[j])
        except ValueError:
            break
        word.append(argv[j])
        j += 1
    return word, argv[:i] + argv[j:]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidax",
        description="Exchange-move braid families, axis links, and truncated"
        " Conway coefficients in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser(
        "info", help="permutation, components, exponent sum, exchange admissibility"
    )
    p_info.add_argument("--n", type=int, required=True, help="strand count")

    p_inv = sub.add_parser(
        "invariant", help="truncated Conway coefficients of closure and axis link"
    )
    p_inv.add_argument("--n", type=int, required=True, help="strand count")
    p_inv.add_argument("--degree", type=int, default=3, help="truncation degree")
    p_inv.add_argument("--no-cache", action="store_true", help="disable the skein memo cache")

    p_exp = sub.add_parser("experiment", help="run a named family experiment")
    p_exp.add_argument("name", choices=sorted(EXPERIMENTS), help="experiment name")
    p_exp.add_argument("--n", type=int, help="strand count (dn, eq54)")
    p_exp.add_argument("--n1", type=int, help="first cycle length (lemma64)")
    p_exp.add_argument("--n2", type=int, help="second cycle length (lemma64)")
    p_exp.add_argument("--alpha", type=str, help="alpha word (prop25)")
    p_exp.add_argument("--beta", type=str, help="beta word (prop25)")
    p_exp.add_argument("--canonical-odd", type=int, metavar="N",
                       help="use the odd-strand canonical family (prop25)")
    p_exp.add_argument("--m-min", type=int, help="first m of the sample range")
    p_exp.add_argument("--m-max", type=int, help="last m of the sample range")
    p_exp.add_argument("--corpus", type=str, help="corpus TSV path (table8)")
    p_exp.add_argument("--out", type=str, default=".", help="report output directory")
    p_exp.add_argument("--format", dest="out_format", default="both",
                       choices=("tsv", "json", "both"))
    p_exp.add_argument("--jobs", type=int, default=1,
                       help="parallel worker processes for family evaluations")
    return parser


# ---------------------------------------------------------------------------
# commands


def _cmd_info(cfg: RunConfig) -> int:
    w = BraidWord(cfg.strands, cfg.word)
    perm = permutation_of(w)
    dec = cycle_decomposition(perm)
    adm = admits_exchange(w)
    verdict = nonconjugacy_criterion(w)
    cycles = " ".join("(" + " ".join(map(str, c)) + ")" for c in dec.cycles)
    print(f"strands\t{w.strands}")
    print(f"word\t{w}")
    print(f"permutation\t{cycles}")
    print(f"components\t{dec.count}")
    print(f"exponent_sum\t{exponent_sum(w)}")
    adm_text = "yes" if adm.admissible else "no"
    if adm.degenerate:
        adm_text += " (degenerate: n <= 3)"
    print(f"exchange_admissible\t{adm_text}")
    split = exchange_split(w)
    if split is not None:
        print(f"split_alpha\t{split.alpha}")
        print(f"split_beta\t{split.beta}")
    if verdict.applies:
        print("nonconjugacy_criterion\tapplies")
    else:
        print(f"nonconjugacy_criterion\tfails: {verdict.reason}")
    return OK


def _cmd_invariant(cfg: RunConfig) -> int:
    w = BraidWord(cfg.strands, cfg.word)
    engine = SkeinEngine(memo=cfg.cache)
    closure = closure_diagram(w)
    axis = axis_link_diagram(w)
    closure_poly = engine.truncated(closure, cfg.degree)
    axis_poly = engine.truncated(axis, cfg.degree)
    print(f"word\t{w}")
    print(f"closure_components\t{component_count(closure)}")
    print(f"closure_nabla\t{' '.join(map(str, closure_poly.coeffs))}")
    print(f"axis_components\t{component_count(axis)}")
    print(f"axis_nabla\t{' '.join(map(str, axis_poly.coeffs))}")
    lk = linking_matrix(axis)
    for i, row in enumerate(lk.entries):
        print(f"axis_linking_row_{i}\t{' '.join(map(str, row))}")
    # lowest-coefficient cross-check: pure skein against the spanning-tree formula
    p = component_count(axis)
    skein_low = conway_truncated(axis, p - 1, memo=cfg.cache, hoste_base=False)[p - 1]
    formula_low = hoste_lowest(lk)
    match = "match" if skein_low == formula_low else f"MISMATCH {skein_low} vs {formula_low}"
    print(f"hoste_check\t{match}")
    burau_ok = None
    if len(w.letters) <= 16:
        burau_ok = conway_matches_alexander(full_conway(closure, memo=cfg.cache).coeffs, w)
        print(f"burau_check\t{'match' if burau_ok else 'MISMATCH'}")
    else:
        print("burau_check\tskipped (word longer than 16 letters)")
    ok = skein_low == formula_low and burau_ok is not False
    return OK if ok else CHECK_FAILURE


def _cmd_experiment(cfg: RunConfig, args) -> int:
    name = cfg.extra["name"]
    kwargs = {}
    if cfg.m_min is not None:
        kwargs["m_range"] = range(cfg.m_min, cfg.m_max + 1)
    if name == "prop25":
        if args.canonical_odd is not None:
            from .words import canonical_odd_knot_braid

            kwargs["form"] = canonical_odd_knot_braid(args.canonical_odd)
        elif args.alpha is not None or args.beta is not None:
            if args.n is None or args.alpha is None or args.beta is None:
                raise WordError("prop25 with explicit words needs --n, --alpha, --beta")
            from .words import ExchangeForm

            kwargs["form"] = ExchangeForm(
                args.n, parse_word(args.alpha, args.n), parse_word(args.beta, args.n)
            )
        kwargs["jobs"] = cfg.jobs
    elif name == "dn":
        if args.n is None:
            raise WordError("dn needs --n (odd, >= 5)")
        kwargs["n"] = args.n
        kwargs["jobs"] = cfg.jobs
    elif name == "lemma64":
        if args.n1 is None or args.n2 is None:
            raise WordError("lemma64 needs --n1 and --n2")
        kwargs["n1"] = args.n1
        kwargs["n2"] = args.n2
        kwargs["jobs"] = cfg.jobs
    elif name == "eq54":
        if args.n is None:
            raise WordError("eq54 needs --n (>= 4)")
        kwargs["n"] = args.n
        kwargs["jobs"] = cfg.jobs
    elif name == "table8":
        if args.corpus is not None:
            kwargs["path"] = args.corpus

    t0 = time.perf_counter()
    report = EXPERIMENTS[name](**kwargs)
    elapsed = time.perf_counter() - t0

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    stem = cfg.out_dir / f"braidax_{name}"
    if cfg.out_format in ("json", "both"):
        (stem.with_suffix(".json")).write_text(report.to_json())
    if cfg.out_format in ("tsv", "both"):
        (stem.with_suffix(".tsv")).write_text(report.to_tsv())
    sys.stdout.write(report.to_tsv())
    print(f"result\t{'PASS' if report.passed else 'FAIL'}")
    print(f"[runtime] {name}: {elapsed:.2f}s", file=sys.stderr)
    return OK if report.passed else CHECK_FAILURE


def main(argv=None) -> int:
    raw = list(sys.argv[1:] if argv is None else argv)
    word_tokens, rest = _extract_word_tokens(raw)
    parser = _build_parser()
    args = parser.parse_args(rest)
    try:
        cfg = RunConfig(command=args.command)
        if args.command in ("info", "invariant"):
            if word_tokens is None:
                raise WordError("missing braid word: give it after --")
            cfg.strands = args.n
            cfg.word = tuple(parse_word(word_tokens, args.n).letters)
            if args.command == "invariant":
                cfg.degree = args.degree
                cfg.cache = not args.no_cache
        else:
            cfg.m_min = args.m_min
            cfg.m_max = args.m_max
            cfg.out_dir = Path(args.out)
            cfg.out_format = args.out_format
            cfg.jobs = args.jobs
            cfg.extra["name"] = args.name
        cfg.validate()
        if args.command == "info":
            return _cmd_info(cfg)
        if args.command == "invariant":
            return _cmd_invariant(cfg)
        return _cmd_experiment(cfg, args)
    except (WordError, ExperimentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
