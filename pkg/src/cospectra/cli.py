"""Command-line entry point. Reports go out as JSON lines; the human summary goes to stderr.

Exit codes: 0 success, 2 input error, 3 resource cap, 4 theorem violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Iterator

from . import miner, suites
from .congruence import (
    PASS,
    check_complement_mod4_pair,
    check_walk_complement_equivalence,
    check_eta_parity_pair,
    check_walk_mod4_pair,
    cospectral,
)
from .errors import CospectraError, DomainError, InvariantViolation, ParseError
from .fixtures import example_pair
from .generate import LABELED_MAX_N, all_labeled_graphs, free_trees
from .graph import Graph, parse_graph6, read_graph6_lines, to_graph6
from .invariants import (
    DEFAULT_TRIAL_BOUND,
    complement_char_poly,
    discriminant_report,
    eta,
    walk_counts,
    walk_matrix,
)
from .linalg import char_poly, mat_from_graph, trace_power
from .walks import count_palindromic, orbit_census, odd_self_converse_count


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    graphs: list[str] = field(default_factory=list)
    mode: str = "adjacency"
    max_power: int | None = None
    trial_bound: int = DEFAULT_TRIAL_BOUND
    workers: int = 1
    output: str | None = None
    seed: int = 20240531
    paper_example: bool = False

    def __post_init__(self):
        for name in ("max_power", "trial_bound", "workers"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise DomainError(f"--{name.replace('_', '-')} must be positive")


class Emitter:
    """Writes JSON lines with sorted keys so equal reports are byte-identical."""

    def __init__(self, path: str | None):
        self._fh = open(path, "w") if path else sys.stdout
        self._own = bool(path)

    def __call__(self, record: dict) -> None:
        self._fh.write(json.dumps(record, sort_keys=True) + "\n")

    def close(self) -> None:
        if self._own:
            self._fh.close()
        else:
            self._fh.flush()


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


# -- input --------------------------------------------------------------------------

@dataclass
class Corpus:
    graphs: list[Graph]
    skipped: int = 0


def load_corpus(cfg: RunConfig, strict: bool) -> Corpus:
    """Graphs from positional graph6 strings, ``--input`` files, and ``--paper-example``.

    In strict mode a malformed line is fatal; otherwise it is reported with
    its line number and counted.
    """
    out = Corpus([])
    if cfg.paper_example:
        out.graphs.extend(example_pair())
    for text in cfg.graphs:
        out.graphs.append(parse_graph6(text))
    for path in cfg.inputs:
        try:
            fh = open(path)
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
        with fh:
            for lineno, item in read_graph6_lines(fh):
                if isinstance(item, ParseError):
                    if strict:
                        raise ParseError(f"{path}:{lineno}: {item}")
                    _say(f"warning: {path}:{lineno}: {item}")
                    out.skipped += 1
                else:
                    out.graphs.append(item)
    return out


def _exhaustive_corpus(n_max: int) -> Iterator[Graph]:
    for n in range(1, n_max + 1):
        yield from all_labeled_graphs(n)


# -- commands -----------------------------------------------------------------------

def invariant_panel(g: Graph, max_power: int | None, trial_bound: int) -> dict:
    a = mat_from_graph(g)
    phi = char_poly(a)
    e = eta(g)
    disc = discriminant_report(phi, trial_bound, to_graph6(g))
    m = 2 * g.n - 1 if max_power is None else max_power
    sign = (-1) ** g.n
    return {
        "type": "invariants",
        "graph6": to_graph6(g),
        "n": g.n,
        "phi": phi,
        "phi_det_A_minus_xI": [sign * c for c in phi],
        "phi_complement": complement_char_poly(g),
        "phi_complement_det_A_minus_xI": [sign * c for c in complement_char_poly(g)],
        "walk_matrix": walk_matrix(g),
        "det_walk_matrix": e.det_walk,
        "eta": e.eta,
        "eta_parity": e.parity,
        "discriminant": disc.delta,
        "discriminant_two_adic_valuation": disc.two_adic_valuation,
        "discriminant_odd_part_squarefree": disc.odd_part_squarefree,
        "walk_counts": list(walk_counts(g, m).counts),
    }


def cmd_invariants(cfg: RunConfig, emit: Emitter) -> int:
    corpus = load_corpus(cfg, strict=True)
    if not corpus.graphs:
        raise DomainError("no graphs given")
    for g in corpus.graphs:
        emit(invariant_panel(g, cfg.max_power, cfg.trial_bound))
    _say(f"invariants: {len(corpus.graphs)} graph(s)")
    return 0


def pair_report(g: Graph, h: Graph, max_power: int | None) -> dict:
    reports = [
        check_walk_mod4_pair(g, h, max_power),
        check_complement_mod4_pair(g, h),
        check_eta_parity_pair(g, h),
        check_walk_complement_equivalence(g, h, max_power),
    ]
    verdicts = [r.verdict for r in reports]
    if not cospectral(g, h):
        overall = "not-cospectral"
    elif all(v == PASS for v in verdicts):
        overall = PASS
    else:
        overall = "fail"
    return {
        "type": "pair",
        "g": to_graph6(g),
        "h": to_graph6(h),
        "cospectral": cospectral(g, h),
        "isomorphic": miner.is_isomorphic(g, h),
        "checks": [r.to_dict() for r in reports],
        "verdict": overall,
    }


def cmd_verify_pair(cfg: RunConfig, emit: Emitter) -> int:
    graphs = load_corpus(cfg, strict=True).graphs
    if len(graphs) != 2:
        raise DomainError(f"verify-pair needs exactly two graphs, got {len(graphs)}")
    rep = pair_report(graphs[0], graphs[1], cfg.max_power)
    emit(rep)
    _say(f"verify-pair: {rep['verdict']}")
    if rep["verdict"] == "fail":
        raise InvariantViolation(f"congruence check failed for {rep['g']} and {rep['h']}")
    return 0


def cmd_mine(cfg: RunConfig, emit: Emitter, exhaustive: int | None, member_limit: int) -> int:
    if exhaustive is not None:
        records, summary = miner.mine_exhaustive(
            exhaustive, cfg.mode, cfg.max_power, cfg.workers, member_limit=member_limit
        )
        for r in records:
            emit({"type": "class", **r})
        emit({"type": "summary", **summary})
        _say(
            f"mine: {summary['graphs']} graphs, {summary['classes']} classes "
            f"({summary['multi_member_classes']} multi-member), {summary['total_violations']} violations"
        )
        if summary["verdict"] != PASS:
            raise InvariantViolation(f"exhaustive run found violations: {summary['violations']}")
        return 0
    corpus = load_corpus(cfg, strict=False)
    classes = miner.group_by_charpoly(corpus.graphs, cfg.mode, cfg.workers)
    for cls in classes:
        miner.run_class_suite(cls, cfg.max_power)
        emit({"type": "class", **cls.to_dict()})
    multi = sum(1 for c in classes if c.size > 1)
    emit({"type": "summary", "graphs": len(corpus.graphs), "skipped": corpus.skipped, "classes": len(classes),
          "multi_member_classes": multi, "mode": cfg.mode, "verdict": PASS})
    _say(f"mine: {len(corpus.graphs)} graphs, {len(classes)} classes ({multi} multi-member), "
         f"{corpus.skipped} malformed line(s) skipped")
    return 0


def cmd_certify(cfg: RunConfig, emit: Emitter) -> int:
    corpus = load_corpus(cfg, strict=False)
    tally: dict[str, int] = {}
    for g in corpus.graphs:
        cert = miner.certify_dgs(g, cfg.trial_bound)
        tally[cert.verdict] = tally.get(cert.verdict, 0) + 1
        emit({"type": "certificate", **cert.to_dict()})
    _say(f"certify: {dict(sorted(tally.items()))}, {corpus.skipped} malformed line(s) skipped")
    return 0


def cmd_check_lemmas(cfg: RunConfig, emit: Emitter, which: str, n_max: int | None, m_max: int | None,
                     count: int) -> int:
    ok = True
    if which in ("identities", "all"):
        rep = suites.identity_suite(n_max or 6, m_max or 16)
        emit({"type": "identity-suite", **rep})
        ok &= rep["verdict"] == PASS
    if which in ("combinatorial", "all"):
        rep = suites.combinatorial_suite(n_max or 5, m_max or 10)
        emit({"type": "combinatorial-suite", **rep})
        ok &= rep["verdict"] == PASS
    if which in ("matrix", "all"):
        rep = suites.matrix_lemma_suite(count, cfg.seed, n_max or 6)
        emit({"type": "matrix-lemma-suite", **rep})
        ok &= rep["verdict"] == PASS
    _say(f"check-lemmas {which}: {'pass' if ok else 'fail'}")
    if not ok:
        raise InvariantViolation("lemma suite reported failures")
    return 0


def oracle_report(g: Graph, max_length: int) -> dict:
    a = mat_from_graph(g)
    rows = []
    for m in range(1, max_length + 1):
        census = orbit_census(g, m)
        row = {
            "m": m,
            "closed_walks": census.closed_walks,
            "trace": trace_power(a, m),
            "orbits": census.orbits,
            "orbit_sizes_divide_m": census.sizes_divide_m,
            "ok": census.ok,
        }
        if m % 2 == 0:
            row["palindromic"] = count_palindromic(g, m)
        else:
            row["odd_self_converse"] = odd_self_converse_count(g, m)
            row["ok"] = row["ok"] and row["odd_self_converse"] == 0
        rows.append(row)
    return {"type": "oracle", "graph6": to_graph6(g), "lengths": rows,
            "verdict": PASS if all(r["ok"] for r in rows) else "fail"}


def cmd_oracle(cfg: RunConfig, emit: Emitter) -> int:
    graphs = load_corpus(cfg, strict=True).graphs
    if not graphs:
        raise DomainError("no graphs given")
    m = cfg.max_power or 4
    bad = 0
    for g in graphs:
        rep = oracle_report(g, m)
        bad += rep["verdict"] != PASS
        emit(rep)
    _say(f"oracle: {len(graphs)} graph(s), lengths 1..{m}, {bad} failing")
    if bad:
        raise InvariantViolation("closed-walk enumeration disagrees with traces")
    return 0


def cmd_witnesses(cfg: RunConfig, emit: Emitter, kind: str, exhaustive: int | None) -> int:
    if kind == "tree-matching":
        corpus = load_corpus(cfg, strict=False)
        rep = miner.find_tree_matching_witnesses(corpus.graphs)
        rep["skipped"] = corpus.skipped
    elif exhaustive is not None:
        records, summary = miner.mine_exhaustive(exhaustive, "complement", cfg.max_power, cfg.workers)
        rep = {"kind": "triangle-parity", "graphs": summary["graphs"], "classes": summary["classes"],
               "multi_member_classes": summary["multi_member_classes"], "violations": summary["violations"],
               "vacuous": summary["multi_member_classes"] == 0, "verdict": summary["verdict"]}
    else:
        corpus = load_corpus(cfg, strict=False)
        rep = miner.find_triangle_parity_witnesses(corpus.graphs)
        rep["skipped"] = corpus.skipped
    emit({"type": "witnesses", **rep})
    vacuous = " (vacuous: no multi-member class)" if rep["vacuous"] else ""
    _say(f"witnesses {kind}: {rep['verdict']}{vacuous}")
    if rep["verdict"] != PASS:
        raise InvariantViolation(f"{kind} witnesses failed")
    return 0


def cmd_generate(emit_raw, labeled: int | None, trees: int | None) -> int:
    count = 0
    if labeled is not None:
        for g in _exhaustive_corpus(labeled):
            emit_raw(to_graph6(g))
            count += 1
    if trees is not None:
        for n in range(1, trees + 1):
            for t in free_trees(n):
                emit_raw(to_graph6(t))
                count += 1
    _say(f"generate: {count} graph(s)")
    return 0


# -- argument parsing -------------------------------------------------------------------

def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("graphs", nargs="*", help="graph6 strings")
    common.add_argument("--input", action="append", default=[], help="graph6 file, one graph per line")
    common.add_argument("--mode", choices=miner.MODES, default="adjacency")
    common.add_argument("--max-power", type=_positive, help="walk-count horizon M (default 2n)")
    common.add_argument("--trial-bound", type=_positive, default=DEFAULT_TRIAL_BOUND)
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--seed", type=int, default=20240531)
    common.add_argument("--output", help="write JSON lines here instead of stdout")
    common.add_argument("--paper-example", action="store_true", help="use the built-in 9-vertex pair")

    p = argparse.ArgumentParser(prog="cospectra", description="Exact cospectral-graph invariants and congruences.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("invariants", parents=[common], help="full invariant panel per graph")
    sub.add_parser("verify-pair", parents=[common], help="mod-4 congruence checks for two graphs")
    mine = sub.add_parser("mine", parents=[common], help="group a corpus into cospectral classes")
    mine.add_argument("--exhaustive", type=_positive, metavar="N",
                      help=f"all labeled graphs on 1..N vertices (N <= {LABELED_MAX_N})")
    mine.add_argument("--member-limit", type=_positive, default=miner.DEFAULT_MEMBER_LIMIT)
    sub.add_parser("certify", parents=[common], help="DGS certificates")
    lem = sub.add_parser("check-lemmas", parents=[common], help="identity, closed-walk and matrix-lemma suites")
    lem.add_argument("--suite", choices=("identities", "combinatorial", "matrix", "all"), default="all")
    lem.add_argument("--n-max", type=_positive)
    lem.add_argument("--m-max", type=_positive)
    lem.add_argument("--count", type=_positive, default=100)
    sub.add_parser("oracle", parents=[common], help="closed-walk enumeration vs traces, lengths 1..M")
    wit = sub.add_parser("witnesses", parents=[common], help="corollary checks over a corpus")
    wit.add_argument("--kind", choices=("tree-matching", "triangle-parity"), required=True)
    wit.add_argument("--exhaustive", type=_positive, metavar="N")
    gen = sub.add_parser("generate", help="write a graph6 corpus")
    gen.add_argument("--labeled", type=_positive, metavar="N")
    gen.add_argument("--trees", type=_positive, metavar="N", help="all free trees on 1..N vertices")
    gen.add_argument("--output")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            if args.labeled is None and args.trees is None:
                raise DomainError("generate needs --labeled or --trees")
            if args.labeled is not None and args.labeled > LABELED_MAX_N:
                raise DomainError(f"--labeled is limited to N <= {LABELED_MAX_N}")
            fh = open(args.output, "w") if args.output else sys.stdout
            try:
                return cmd_generate(lambda s: fh.write(s + "\n"), args.labeled, args.trees)
            finally:
                if args.output:
                    fh.close()
        cfg = RunConfig(
            command=args.command,
            inputs=args.input,
            graphs=args.graphs,
            mode=args.mode,
            max_power=args.max_power,
            trial_bound=args.trial_bound,
            workers=args.workers,
            output=args.output,
            seed=args.seed,
            paper_example=args.paper_example,
        )
        emit = Emitter(cfg.output)
        try:
            if args.command == "invariants":
                return cmd_invariants(cfg, emit)
            if args.command == "verify-pair":
                return cmd_verify_pair(cfg, emit)
            if args.command == "mine":
                return cmd_mine(cfg, emit, args.exhaustive, args.member_limit)
            if args.command == "certify":
                return cmd_certify(cfg, emit)
            if args.command == "check-lemmas":
                return cmd_check_lemmas(cfg, emit, args.suite, args.n_max, args.m_max, args.count)
            if args.command == "oracle":
                return cmd_oracle(cfg, emit)
            if args.command == "witnesses":
                return cmd_witnesses(cfg, emit, args.kind, args.exhaustive)
        finally:
            emit.close()
    except CospectraError as exc:
        _say(f"error: {exc}")
        return exc.exit_code
    raise AssertionError(f"unhandled command {args.command}")
