"""Command-line front end.

Group file format (JSON)::

    {"degree": 3, "generators": [[1, 2, 0]]}

``degree`` is |X| and each generator is a 0-indexed image array.

Subcommands::

    orbitals     orbitals and the spectral table (d_w, lambda(u, w))
    blocks       Phi(M_{i,j}^{t,l}) for one invariant (--inv) or all (--all)
    eigenvalues  eigenvalue table of M_{i,i}^{t,l} on the rank-i level
    verify       run the oracle suite; exit 1 if anything fails

Complex numbers are written as [re, im].  The JSON form of ``blocks`` is read
back by :func:`read_blocks`.  Exit status: 0 success, 1 verification failure,
2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .block_diag import BlockImage, johnson_eigenvalue, phi
from .generalized_boolean import (
    DEFAULT_WORD_CAP, BlockIndex, OrbitInvariant, index_set_I, index_set_I_level,
    index_set_J_level, is_valid_invariant, mu,
)
from .group_action import DEFAULT_GROUP_CAP, GroupError, load_group, orbitals, spectral_table
from .verification import DEFAULT_TOL, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _cplx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _matrix(a: np.ndarray) -> list:
    return [[_cplx(v) for v in row] for row in a]


def image_record(img: BlockImage) -> dict:
    i, j, t, l = img.source
    return {
        "invariant": {"i": i, "j": j, "t": t, "l": list(l)},
        "blocks": [{"k": b.k, "s": b.s, "p": list(b.p), "offset": b.k, "rows": _matrix(v)}
                   for b, v in img.blocks.items()],
    }


def read_blocks(path) -> list[BlockImage]:
    """Rebuild the BlockImages written by ``blocks --format json``."""
    with open(path) as fh:
        doc = json.load(fh)
    out = []
    for rec in doc["images"]:
        inv = rec["invariant"]
        blocks = {}
        for b in rec["blocks"]:
            rows = np.array(b["rows"], dtype=float).reshape(-1, len(b["rows"]) or 1, 2)
            blocks[BlockIndex(b["k"], b["s"], tuple(b["p"]))] = rows[..., 0] + 1j * rows[..., 1]
        source = OrbitInvariant(inv["i"], inv["j"], inv["t"], tuple(inv["l"]))
        out.append(BlockImage(doc["n"], blocks, source))
    return out


def _emit(args, doc: dict, rows: list[list], header: list[str]) -> None:
    if args.format == "json":
        text = json.dumps(doc, indent=1) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt_tuple(t) -> str:
    return " ".join(str(v) for v in t)


def cmd_orbitals(args) -> int:
    action = load_group(args.group, cap=args.cap_group)
    st = spectral_table(action, seed=args.seed, tol=args.tol)
    orbs = orbitals(action)
    doc = {
        "x_size": action.x_size, "order": action.order, "m": st.m,
        "orbitals": [{"index": o.index, "transpose_index": o.transpose_index,
                      "pairs": sorted(map(list, o.pairs))} for o in orbs],
        "dims": list(st.dims),
        "lambda": _matrix(st.lam),
    }
    rows = [[u, w, st.dims[w], st.lam[u, w].real, st.lam[u, w].imag]
            for u in range(st.m + 1) for w in range(st.m + 1)]
    _emit(args, doc, rows, ["u", "w", "d_w", "re", "im"])
    return EXIT_OK


def _parse_inv(text: str, m: int) -> OrbitInvariant:
    try:
        i, j, t, l = text.split(":")
        inv = OrbitInvariant(int(i), int(j), int(t), tuple(int(v) for v in l.split(",") if v))
    except ValueError as exc:
        raise ValueError(f"--inv expects i:j:t:l0,...,lm, got {text!r}") from exc
    return inv


def cmd_blocks(args) -> int:
    action = load_group(args.group, cap=args.cap_group)
    st = spectral_table(action, seed=args.seed, tol=args.tol)
    if args.all:
        invs = index_set_I(args.n, st.m)
    else:
        inv = _parse_inv(args.inv, st.m)
        if not is_valid_invariant(inv, args.n, st.m):
            raise ValueError(f"{tuple(inv)} is not a valid invariant for n={args.n}, m={st.m}")
        invs = [inv]
    images = [phi(args.n, inv, st) for inv in invs]
    doc = {"n": args.n, "x_size": action.x_size, "m": st.m,
           "images": [image_record(img) for img in images]}
    rows = []
    for img in images:
        i, j, t, l = img.source
        for b, v in img.blocks.items():
            for r, c in zip(*np.nonzero(v)):
                rows.append([i, j, t, _fmt_tuple(l), b.k, b.s, _fmt_tuple(b.p),
                             r + b.k, c + b.k, v[r, c].real, v[r, c].imag])
    _emit(args, doc, rows, ["i", "j", "t", "l", "k", "s", "p", "row", "col", "re", "im"])
    return EXIT_OK


def cmd_eigenvalues(args) -> int:
    action = load_group(args.group, cap=args.cap_group)
    st = spectral_table(action, seed=args.seed, tol=args.tol)
    n, i = args.n, args.i
    if not 0 <= i <= n:
        raise ValueError(f"level i={i} out of range 0..{n}")
    tl = index_set_I_level(n, st.m, i)
    ksp = index_set_J_level(n, st.m, i)
    values = [[johnson_eigenvalue(n, i, t, l, *b, st.x_size, st.lam) for b in ksp] for t, l in tl]
    doc = {
        "n": n, "i": i, "x_size": action.x_size, "m": st.m,
        "rows": [{"t": t, "l": list(l)} for t, l in tl],
        "columns": [{"k": b.k, "s": b.s, "p": list(b.p), "multiplicity": mu(n, *b, st.dims)}
                    for b in ksp],
        "values": _matrix(np.array(values).reshape(len(tl), len(ksp))),
    }
    rows = [[t, _fmt_tuple(l), b.k, b.s, _fmt_tuple(b.p), values[r][c].real, values[r][c].imag]
            for r, (t, l) in enumerate(tl) for c, b in enumerate(ksp)]
    _emit(args, doc, rows, ["t", "l", "k", "s", "p", "re", "im"])
    return EXIT_OK


def cmd_verify(args) -> int:
    action = load_group(args.group, cap=args.cap_group)
    reports = run_suite(action, args.n, tol=args.tol, seed=args.seed, corrupt=args.corrupt)
    for rep in reports:
        print(rep.line())
    if args.out:
        with open(args.out, "w") as fh:
            for rep in reports:
                fh.write(rep.to_json() + "\n")
    failed = [r for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} oracles passed")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", required=True, help="group file (JSON: degree, generators)")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="numerical tolerance (default %(default)g)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    common.add_argument("--cap", dest="cap_group", type=int, default=DEFAULT_GROUP_CAP,
                        help="maximum group order (default %(default)d)")

    parser = argparse.ArgumentParser(prog="wreathblock", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("orbitals", parents=[common], help="orbitals and spectral table")

    p = sub.add_parser("blocks", parents=[common], help="block images of basis matrices")
    p.add_argument("--n", type=int, required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--inv", help="invariant as i:j:t:l0,...,lm")
    which.add_argument("--all", action="store_true", help="every basis invariant")

    p = sub.add_parser("eigenvalues", parents=[common], help="generalized Johnson eigenvalues")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True, help="rank level")

    p = sub.add_parser("verify", parents=[common], help="run the oracle suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--corrupt", choices=("unitary", "matrix"),
                   help="inject a negative control; the run must then fail")
    return parser


COMMANDS = {"orbitals": cmd_orbitals, "blocks": cmd_blocks,
            "eigenvalues": cmd_eigenvalues, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "n", 0) < 0 or args.tol <= 0:
        print("error: need n >= 0 and tol > 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (GroupError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
