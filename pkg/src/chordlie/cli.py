"""Command-line interface: ``chordlie <command> [options]``.

Commands: dims, bracket, center, euler, homology, verify-oracle.
Every option can also be set through an environment variable with the
``CHORDLIE_`` prefix (``CHORDLIE_GENUS``, ``CHORDLIE_MAX_DEGREE``,
``CHORDLIE_WEIGHT``, ``CHORDLIE_FORMAT``, ``CHORDLIE_CAP_LINALG``,
``CHORDLIE_CAP_ENUM``, ``CHORDLIE_SEED``); flags win over the environment.

Exit codes: 0 success, 2 usage or parse error, 3 verification failure,
4 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from collections import Counter
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import List, Optional, Sequence

from .analysis import center_of_C, chain_dims, euler_char, homology, is_multiple_of_omega
from .diagrams import (
    DEFAULT_ENUMERATION_CAP,
    CapExceeded,
    DiagramError,
    enumerate_cyclic_basis,
    enumerate_linear,
    index_of,
)
from .lie import CVector, LCVector, bracket_cyclic, bracket_linear
from .tensors import (
    DEFAULT_LINALG_CAP,
    SymplecticSpace,
    TensorError,
    TruncationError,
    a_cyclic,
    a_lc,
    derivation_commutator,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISMATCH = 3
EXIT_CAP = 4

ENV_PREFIX = "CHORDLIE_"


@dataclass
class RunConfig:
    genus: Optional[int] = None
    max_degree: int = 3
    weight: int = 4
    m: int = 3
    format: str = "json"
    cap_linalg: int = DEFAULT_LINALG_CAP
    cap_enum: int = DEFAULT_ENUMERATION_CAP
    seed: int = 0

    def __post_init__(self) -> None:
        if self.genus is not None and self.genus < 1:
            raise ValueError("genus must be at least 1")
        for name in ("max_degree", "cap_linalg", "cap_enum"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.weight < 0:
            raise ValueError("weight must be nonnegative")
        if self.format not in ("json", "text"):
            raise ValueError("format must be json or text")

    @classmethod
    def from_sources(cls, args: argparse.Namespace, environ=os.environ) -> "RunConfig":
        values = {}
        for f in fields(cls):
            raw = getattr(args, f.name, None)
            if raw is None:
                raw = environ.get(ENV_PREFIX + f.name.upper())
            if raw is None:
                continue
            values[f.name] = raw if f.name == "format" else int(raw)
        return cls(**values)


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


# -- commands --------------------------------------------------------------------


def cmd_dims(cfg: RunConfig, args) -> int:
    rows = []
    for m in range(1, cfg.max_degree + 1):
        linear = enumerate_linear(m, cfg.cap_enum)
        hist = Counter(index_of(d) for d in linear)
        rows.append({
            "m": m,
            "dim_LC": len(linear),
            "dim_C": len(enumerate_cyclic_basis(m, cfg.cap_enum)),
            "index_histogram": {str(k): hist[k] for k in sorted(hist)},
        })
    lines = ["m  dim LC_m  dim C_m  index histogram"]
    for r in rows:
        lines.append(f"{r['m']:<2} {r['dim_LC']:>8} {r['dim_C']:>8}  {r['index_histogram']}")
    _emit(cfg, {"LC": [r["dim_LC"] for r in rows], "C": [r["dim_C"] for r in rows], "rows": rows},
          "\n".join(lines))
    return EXIT_OK


def cmd_bracket(cfg: RunConfig, args) -> int:
    if args.algebra == "C":
        x, y = CVector.parse(args.x), CVector.parse(args.y)
        z = bracket_cyclic(x, y)
    else:
        x, y = LCVector.parse(args.x), LCVector.parse(args.y)
        z = bracket_linear(x, y)
    _emit(cfg, z.to_json(), z.literal())
    return EXIT_OK


def cmd_center(cfg: RunConfig, args) -> int:
    kernel = center_of_C(cfg.m)
    report = {
        "m": cfg.m,
        "kernel_dim": len(kernel),
        "is_omega": len(kernel) == 1 and is_multiple_of_omega(kernel[0], cfg.m),
    }
    _emit(cfg, report, f"m={cfg.m} kernel_dim={report['kernel_dim']} is_omega={report['is_omega']}")
    return EXIT_OK


def cmd_euler(cfg: RunConfig, args) -> int:
    w = cfg.weight
    report = {"weight": w, "euler": euler_char(w, "dims"), "chain_dims": chain_dims("LC1", w)}
    code = EXIT_OK
    if args.route in ("ranks", "both"):
        report["euler_ranks"] = euler_char(w, "ranks", cap=cfg.cap_enum)
        if report["euler_ranks"] != report["euler"]:
            code = EXIT_MISMATCH
    _emit(cfg, report, " ".join(f"{k}={v}" for k, v in report.items()))
    return code


def cmd_homology(cfg: RunConfig, args) -> int:
    rep = homology(args.algebra, cfg.weight, cap=cfg.cap_enum).to_json()
    _emit(cfg, rep, " ".join(f"{k}={v}" for k, v in rep.items()))
    return EXIT_OK


def _oracle_pairs(degrees: Sequence[int], basis_of) -> list:
    pairs = []
    for m in degrees:
        for l in degrees:
            if l < m:
                continue
            for x in basis_of(m):
                for y in basis_of(l):
                    pairs.append((x, y))
    return pairs


def _random_c(rng: random.Random, m: int, cap: int) -> CVector:
    out = CVector()
    for k in enumerate_cyclic_basis(m, cap):
        out = out + Fraction(rng.randint(-3, 3), rng.randint(1, 3)) * CVector.basis(k)
    return out


def cmd_verify_oracle(cfg: RunConfig, args) -> int:
    checked = mismatches = 0
    failures: List[str] = []
    # oriented diagrams against the Der(T) commutator of N a(.)
    for x, y in _oracle_pairs(range(2, cfg.max_degree + 1), lambda m: enumerate_cyclic_basis(m, cfg.cap_enum)):
        space = SymplecticSpace(cfg.genus or x.m + y.m - 1)
        X, Y = CVector.basis(x), CVector.basis(y)
        lhs = a_cyclic(bracket_cyclic(X, Y), space)
        rhs = derivation_commutator(a_cyclic(X, space), a_cyclic(Y, space))
        checked += 1
        if lhs != rhs:
            mismatches += 1
            failures.append(f"C: [{x.literal()}, {y.literal()}]")
    # linear diagrams against the Der(T) commutator of a(.)
    space = SymplecticSpace(cfg.genus or 3)
    for x, y in _oracle_pairs(range(1, cfg.max_degree + 1), lambda m: enumerate_linear(m, cfg.cap_enum)):
        X, Y = LCVector.basis(x), LCVector.basis(y)
        lhs = a_lc(bracket_linear(X, Y), space)
        rhs = derivation_commutator(a_lc(X, space), a_lc(Y, space))
        checked += 1
        if lhs != rhs:
            mismatches += 1
            failures.append(f"LC: [{x.literal()}, {y.literal()}]")
    # seeded random combinations exercise bilinearity on top of the basis pairs
    rng = random.Random(cfg.seed)
    for _ in range(args.samples):
        m, l = rng.randint(2, cfg.max_degree), rng.randint(2, cfg.max_degree)
        X, Y = _random_c(rng, m, cfg.cap_enum), _random_c(rng, l, cfg.cap_enum)
        space = SymplecticSpace(cfg.genus or m + l - 1)
        lhs = a_cyclic(bracket_cyclic(X, Y), space)
        rhs = derivation_commutator(a_cyclic(X, space), a_cyclic(Y, space))
        checked += 1
        if lhs != rhs:
            mismatches += 1
            failures.append(f"C: [{X.literal()}, {Y.literal()}]")
    report = {"checked": checked, "mismatches": mismatches, "failures": failures[:20]}
    _emit(cfg, report, f"checked={checked} mismatches={mismatches}")
    for f in failures:
        print(f"mismatch {f}", file=sys.stderr)
    return EXIT_MISMATCH if mismatches else EXIT_OK


COMMANDS = {
    "dims": cmd_dims,
    "bracket": cmd_bracket,
    "center": cmd_center,
    "euler": cmd_euler,
    "homology": cmd_homology,
    "verify-oracle": cmd_verify_oracle,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--genus", "--g", dest="genus", type=int, default=None, help="genus of the symplectic space")
    common.add_argument("--max-degree", "--max-m", dest="max_degree", type=int, default=None,
                        help="largest chord count considered")
    common.add_argument("--weight", "--w", dest="weight", type=int, default=None, help="homology weight")
    common.add_argument("--m", dest="m", type=int, default=None, help="degree for the center computation")
    common.add_argument("--format", choices=("json", "text"), default=None)
    common.add_argument("--cap-linalg", dest="cap_linalg", type=int, default=None)
    common.add_argument("--cap-enum", dest="cap_enum", type=int, default=None, help="largest enumerable chord count")
    common.add_argument("--seed", type=int, default=None)

    ap = _Parser(prog="chordlie", description="Exact computations with chord-diagram Lie algebras.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("dims", parents=[common], help="dimensions of LC_m and C_m")
    p = sub.add_parser("bracket", parents=[common], help="bracket two vector literals")
    p.add_argument("algebra", choices=("C", "LC"))
    p.add_argument("x")
    p.add_argument("y")
    sub.add_parser("center", parents=[common], help="centralizer of D(m, 2m+1) in C_m")
    p = sub.add_parser("euler", parents=[common], help="Euler characteristic of C_*(LC^1) in one weight")
    p.add_argument("--route", choices=("dims", "ranks", "both"), default="dims")
    p = sub.add_parser("homology", parents=[common], help="Betti numbers in one weight")
    p.add_argument("--algebra", choices=("LC", "LC1", "C"), default="LC1")
    p = sub.add_parser("verify-oracle", parents=[common], help="check brackets against derivation commutators")
    p.add_argument("--samples", type=int, default=0, help="extra seeded random combinations in C")
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig.from_sources(args)
    except ValueError as exc:
        print(f"chordlie: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](cfg, args)
    except (DiagramError, TensorError) as exc:
        print(f"chordlie: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, TruncationError) as exc:
        print(f"chordlie: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
