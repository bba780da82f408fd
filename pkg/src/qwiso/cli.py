"""Command-line interface.

Subcommands map onto the library pipeline: paley emits a connection set,
verify and table2 reproduce the per-graph and per-frequency verification
tables, recover runs the spectral round trip, isotest decides isomorphism
for two connection-set files, and scan sweeps every symmetric set of a
given size. All numeric output is formatted to six decimals (residuals to
six significant digits) so reports are byte-stable across runs.

Exit codes: 0 success (and method agreement), 1 usage or construction
error, 2 method disagreement or scan anomalies.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import comb
from pathlib import Path

import numpy as np

from .blocks import block_decompose
from .circulant import (
    CirculantGraph,
    ConnectionSet,
    paley_connection_set,
    srg_parameters,
)
from .errors import QwisoError, TooManySets
from .recovery import (
    decide_isomorphism,
    full_pipeline_from_spectra,
    turner_isomorphic,
)
from .spectral import DEFAULT_EIG_TOL, global_char_poly, recover_c
from .walk import walk_operator

ENV_TOL_EIG = "QWISO_TOL_EIG"
SCAN_BUDGET = 100_000


class CliError(Exception):
    """Usage or input error; carries the process exit code."""

    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


def _round6(x: float) -> float:
    return round(float(x), 6)


def _sci6(x: float) -> float:
    return float(f"{float(x):.6e}")


def _eig_tolerance() -> float:
    raw = os.environ.get(ENV_TOL_EIG)
    if raw is None:
        return DEFAULT_EIG_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise CliError(f"{ENV_TOL_EIG} must be a number, got {raw!r}")
    if not 0.0 < tol <= 1e-2:
        raise CliError(f"{ENV_TOL_EIG} must be positive and <= 1e-2, got {tol}")
    return tol


def _load_connection_set(path: str) -> ConnectionSet:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")
    try:
        return ConnectionSet.from_json(text)
    except (json.JSONDecodeError, ValueError, KeyError, TypeError) as exc:
        raise CliError(f"{path} is not a valid connection-set JSON: {exc}")


def _distinct_c_values(c_values) -> list[float]:
    """Distinct coefficient values at 6-decimal resolution, ascending."""
    return sorted({_round6(c) for c in c_values})


def cmd_paley(p: int, tol_eig: float):
    cs = paley_connection_set(p)
    payload = cs.to_dict()
    header = ["p", "k", "elements"]
    rows = [[str(cs.p), str(cs.k), " ".join(str(s) for s in cs.elements)]]
    return payload, header, rows


def cmd_verify(p: int, tol_eig: float):
    """One verification row: parameters, distinct coefficients, residual, round trip."""
    graph = CirculantGraph(paley_connection_set(p))
    params = srg_parameters(graph)
    decomposition = block_decompose(walk_operator(graph))
    recovered = [
        recover_c(decomposition.blocks[j], tol_eig=tol_eig) for j in range(1, p)
    ]
    c_values = _distinct_c_values(recovered)
    report = full_pipeline_from_spectra(graph, tol_eig=tol_eig)
    payload = {
        "p": p,
        "parameters": list(params.as_tuple()) if params else None,
        "k": graph.k,
        "c_values": c_values,
        "off_diagonal_residual": _sci6(decomposition.off_diagonal_residual),
        "recovered": report.recovered_set == graph.connection_set,
    }
    header = ["p", "parameters", "k", "c_1", "c_2", "off_diagonal_residual", "recovered"]
    rows = [[
        str(p),
        "(" + ",".join(str(x) for x in params.as_tuple()) + ")" if params else "",
        str(graph.k),
        f"{c_values[0]:.6f}",
        f"{c_values[-1]:.6f}",
        f"{decomposition.off_diagonal_residual:.6e}",
        str(payload["recovered"]).lower(),
    ]]
    return payload, header, rows


def cmd_table2(p: int, tol_eig: float):
    """Per-frequency table: direct coefficient, spectrally recovered one, gap."""
    graph = CirculantGraph(paley_connection_set(p))
    k = graph.k
    decomposition = block_decompose(walk_operator(graph))
    entries = []
    for j in range(p):
        direct = sum(
            np.cos(2.0 * np.pi * ((j * s) % p) / p)
            for s in graph.connection_set.elements
        ) / k
        if j == 0:
            recovered = 1.0  # degenerate block; value fixed by regularity
        else:
            recovered = recover_c(decomposition.blocks[j], tol_eig=tol_eig)
        entries.append((j, float(direct), float(recovered), abs(direct - recovered)))
    payload = {
        "p": p,
        "k": k,
        "rows": [
            {
                "j": j,
                "direct": _round6(direct),
                "recovered": _round6(recovered),
                "abs_difference": _sci6(diff),
            }
            for j, direct, recovered, diff in entries
        ],
    }
    header = ["j", "direct", "recovered", "abs_difference"]
    rows = [
        [str(j), f"{direct:.6f}", f"{recovered:.6f}", f"{diff:.6e}"]
        for j, direct, recovered, diff in entries
    ]
    return payload, header, rows


def cmd_recover(p: int, tol_eig: float):
    graph = CirculantGraph(paley_connection_set(p))
    report = full_pipeline_from_spectra(graph, tol_eig=tol_eig)
    payload = {
        "p": report.p,
        "k": report.k,
        "c_values": [_round6(c) for c in report.c_values],
        "recovered_set": report.recovered_set.to_dict(),
        "max_rounding_residual": _sci6(report.max_rounding_residual),
    }
    header = ["p", "k", "elements", "max_rounding_residual"]
    rows = [[
        str(report.p),
        str(report.k),
        " ".join(str(s) for s in report.recovered_set.elements),
        f"{report.max_rounding_residual:.6e}",
    ]]
    return payload, header, rows


def cmd_isotest(a_path: str, b_path: str, tol_eig: float):
    s1 = _load_connection_set(a_path)
    s2 = _load_connection_set(b_path)
    verdict = decide_isomorphism(CirculantGraph(s1), CirculantGraph(s2))
    payload = verdict.to_dict()
    header = ["isomorphic", "witness_multiplier", "spectral_equal", "method_agreement"]
    rows = [[
        str(verdict.isomorphic).lower(),
        "" if verdict.witness_multiplier is None else str(verdict.witness_multiplier),
        str(verdict.spectral_equal).lower(),
        str(verdict.method_agreement).lower(),
    ]]
    return payload, header, rows


def _poly_key(coeffs: np.ndarray) -> tuple:
    """Hashable polynomial key: coefficients scaled by the largest and rounded."""
    scaled = coeffs / np.max(np.abs(coeffs))
    # avoid -0.0 vs 0.0 splitting identical keys
    return tuple((np.round(scaled, 6) + 0.0).tolist())


def cmd_scan(p: int, k: int, tol_eig: float):
    """Group every symmetric size-k set by its walk polynomial, check multipliers.

    Within a polynomial group, all strongly regular members must be related
    by a multiplier; across groups, none may be. Violations are listed as
    anomalies and flip the exit code to 2.
    """
    if k % 2 != 0 or k < 2 or k > p - 1:
        raise CliError(f"degree k must be even with 2 <= k <= p-1, got k={k}")
    half_pairs = (p - 1) // 2
    n_sets = comb(half_pairs, k // 2)
    if n_sets > SCAN_BUDGET:
        raise TooManySets(f"{n_sets} candidate sets exceed the budget of {SCAN_BUDGET}")

    from itertools import combinations

    pairs = [(a, p - a) for a in range(1, half_pairs + 1)]
    sets = []
    for combo in combinations(pairs, k // 2):
        elements = sorted(x for pair in combo for x in pair)
        sets.append(CirculantGraph(ConnectionSet(p=p, elements=tuple(elements))))
    sets.sort(key=lambda g: g.connection_set.elements)

    groups: dict[tuple, list[CirculantGraph]] = {}
    for graph in sets:
        poly = global_char_poly(block_decompose(walk_operator(graph)).blocks)
        groups.setdefault(_poly_key(poly.coeffs), []).append(graph)

    ordered = sorted(groups.values(), key=lambda gs: gs[0].connection_set.elements)
    anomalies: list[str] = []
    srg_flags = {
        g.connection_set.elements: srg_parameters(g) is not None for g in sets
    }
    for members in ordered:
        srg_members = [g for g in members if srg_flags[g.connection_set.elements]]
        for a in srg_members:
            for b in srg_members:
                if a.connection_set.elements < b.connection_set.elements:
                    if turner_isomorphic(a.connection_set, b.connection_set) is None:
                        anomalies.append(
                            f"equal polynomials but no multiplier: "
                            f"{list(a.connection_set.elements)} vs "
                            f"{list(b.connection_set.elements)}"
                        )
    all_srg = [g for g in sets if srg_flags[g.connection_set.elements]]
    group_of = {
        g.connection_set.elements: gi
        for gi, members in enumerate(ordered)
        for g in members
    }
    for a in all_srg:
        for b in all_srg:
            if a.connection_set.elements < b.connection_set.elements:
                same_group = (
                    group_of[a.connection_set.elements]
                    == group_of[b.connection_set.elements]
                )
                if not same_group and turner_isomorphic(
                    a.connection_set, b.connection_set
                ) is not None:
                    anomalies.append(
                        f"multiplier-equivalent sets in different polynomial "
                        f"groups: {list(a.connection_set.elements)} vs "
                        f"{list(b.connection_set.elements)}"
                    )

    payload = {
        "p": p,
        "k": k,
        "set_count": len(sets),
        "group_count": len(ordered),
        "groups": [
            {
                "members": [list(g.connection_set.elements) for g in members],
                "srg_members": [
                    list(g.connection_set.elements)
                    for g in members
                    if srg_flags[g.connection_set.elements]
                ],
            }
            for members in ordered
        ],
        "anomalies": anomalies,
    }
    header = ["elements", "group", "srg"]
    rows = [
        [
            " ".join(str(s) for s in g.connection_set.elements),
            str(group_of[g.connection_set.elements]),
            str(srg_flags[g.connection_set.elements]).lower(),
        ]
        for g in sets
    ]
    return payload, header, rows, (2 if anomalies else 0)


def _format_csv(header: list[str], rows: list[list[str]]) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _format_plain(header: list[str], rows: list[list[str]]) -> str:
    widths = [
        max(len(header[i]), *(len(r[i]) for r in rows)) if rows else len(header[i])
        for i in range(len(header))
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwiso",
        description="Coined-walk spectra of prime-order circulant graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument(
            "--format", choices=["json", "csv", "plain"], default="json",
            help="output format (default: json)",
        )
        sp.add_argument("--out", default=None, help="write the report to this path")

    for name, doc in [
        ("paley", "emit the quadratic-residue connection set for p"),
        ("verify", "one verification row for the Paley graph on p vertices"),
        ("table2", "per-frequency coefficient table for the Paley graph on p"),
        ("recover", "spectral round trip for the Paley graph on p"),
    ]:
        sp = sub.add_parser(name, help=doc)
        sp.add_argument("--p", type=int, required=True, help="odd prime, p = 1 (mod 4)")
        add_common(sp)

    sp = sub.add_parser("isotest", help="decide isomorphism for two connection-set files")
    sp.add_argument("--a", required=True, help="first connection-set JSON file")
    sp.add_argument("--b", required=True, help="second connection-set JSON file")
    add_common(sp)

    sp = sub.add_parser("scan", help="sweep all symmetric size-k sets over Z_p")
    sp.add_argument("--p", type=int, required=True, help="odd prime")
    sp.add_argument("--k", type=int, required=True, help="even degree, 2 <= k <= p-1")
    add_common(sp)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol_eig = _eig_tolerance()
        code = 0
        if args.command == "paley":
            payload, header, rows = cmd_paley(args.p, tol_eig)
        elif args.command == "verify":
            payload, header, rows = cmd_verify(args.p, tol_eig)
        elif args.command == "table2":
            payload, header, rows = cmd_table2(args.p, tol_eig)
        elif args.command == "recover":
            payload, header, rows = cmd_recover(args.p, tol_eig)
        elif args.command == "isotest":
            payload, header, rows = cmd_isotest(args.a, args.b, tol_eig)
            if not payload["method_agreement"]:
                code = 2
        else:
            payload, header, rows, code = cmd_scan(args.p, args.k, tol_eig)
    except CliError as exc:
        print(f"qwiso: {exc}", file=sys.stderr)
        return exc.code
    except QwisoError as exc:
        print(f"qwiso: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        text = _format_csv(header, rows)
    else:
        text = _format_plain(header, rows)
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
