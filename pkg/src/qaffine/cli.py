"""Command-line interface: ``qchar VERB [SUBVERB] [flags]``.

Successful results are printed as canonical JSON.  Domain errors exit with
status 1 (as ``{"error": ...}`` on stdout when ``--json`` is given, otherwise
as text on stderr); usage errors exit with status 2.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from . import sl2engine, sl2theory
from .cartan import CartanData, cartan_from_label
from .qchar import CharacterTable, char_prod, char_trunc_geq, char_trunc_leq, load_table, save_table
from .ylattice import (
    APosition,
    Monomial,
    YLatticeError,
    a_monomial,
    bar_monomial,
    canon,
    decompose_over_A,
    dual_highest_monomial,
    format_monomial,
    is_dominant,
    leq,
    monomial_to_json,
    parse_monomial,
    trunc_parts,
)

SL2_LABEL = "A1^1"
VERIFY_CHECKS = ("factg", "useqt2", "alternate", "duality", "zeta", "lzero")
ACCEPTED_VERBS = (
    "sl2 char", "sl2 tensor-char", "sl2 simple", "sl2 factor", "sl2 realize",
    "amonomial", "trunc", "decompose", "dual", "bar",
    "verify " + "|".join(VERIFY_CHECKS), "table load|save",
)


class UsageError(Exception):
    pass


class DomainError(ValueError):
    pass


# ------------------------------------------------------------ argument helpers

def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for this command")
    return value


def _monomial(args) -> Monomial:
    return parse_monomial(_need(args, "monomial"))


def _monomials(args) -> List[Monomial]:
    text = _need(args, "monomials")
    out = [parse_monomial(chunk) for chunk in text.split(";") if chunk.strip()]
    if not out:
        raise UsageError("--monomials needs at least one monomial")
    return out


def _cartan(args) -> CartanData:
    return cartan_from_label(args.type)


def _is_sl2(cd: CartanData) -> bool:
    return (cd.affine_type.letter, cd.affine_type.index, cd.affine_type.twist) == ("A", 1, 1)


def _sl2_only(args) -> CartanData:
    cd = _cartan(args)
    if not _is_sl2(cd):
        raise DomainError(f"this command is implemented for {SL2_LABEL} only, got {args.type}")
    return cd


def _point(text: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise UsageError(f"--point expects 'kappa,lambda', got {text!r}")
    try:
        return int(parts[0]), canon(Fraction(parts[1]))
    except ValueError as exc:
        raise UsageError(f"bad --point {text!r}: {exc}") from exc


def _mono_out(m: Monomial) -> dict:
    return {"monomial": monomial_to_json(m), "text": format_monomial(m)}


def _char_out(c) -> dict:
    out = c.to_json()
    out["dimension"] = c.dimension()
    out["text"] = str(c)
    return out


# ------------------------------------------------------------ verbs

def cmd_sl2_char(args) -> dict:
    _sl2_only(args)
    return _char_out(sl2theory.chi_simple_sl2(_monomial(args)))


def cmd_sl2_tensor_char(args) -> dict:
    _sl2_only(args)
    ms = _monomials(args)
    return _char_out(char_prod(sl2theory.chi_simple_sl2(m) for m in ms))


def cmd_sl2_simple(args) -> dict:
    _sl2_only(args)
    return {"simple": sl2theory.tensor_simple_sl2(_monomials(args))}


def cmd_sl2_factor(args) -> dict:
    _sl2_only(args)
    m = _monomial(args)
    strings = sl2theory.factor_into_strings(m)
    return {
        "monomial": format_monomial(m),
        "strings": [{"base": s.base, "length": s.length} for s in strings],
    }


def cmd_sl2_realize(args) -> dict:
    _sl2_only(args)
    rep = sl2engine.realize_simple(_monomial(args))
    out = sl2engine.matrix_dump(rep)
    rel = sl2engine.verify_defining_relations(rep)
    out["relations_ok"] = rel["ok"]
    out["character"] = _char_out(sl2engine.extract_qchar(rep))
    return out


def cmd_amonomial(args) -> dict:
    cd = _cartan(args)
    i = _need(args, "node")
    kappa, lam = _point(_need(args, "point"))
    return _mono_out(a_monomial(cd, APosition(i, kappa, lam)))


def cmd_trunc(args) -> dict:
    cd = _cartan(args)
    m = _monomial(args)
    L = _need(args, "level")
    le, eq, ge = trunc_parts(cd, m, L)
    out = {"level": L, "le": _mono_out(le), "eq": _mono_out(eq), "ge": _mono_out(ge)}
    if _is_sl2(cd) and is_dominant(m):
        c = sl2theory.chi_simple_sl2(m)
        out["chi_geq"] = _char_out(char_trunc_geq(cd, c, L))
        out["chi_leq"] = _char_out(char_trunc_leq(cd, c, L))
    return out


def cmd_decompose(args) -> dict:
    cd = _cartan(args)
    m = _monomial(args)
    ref = parse_monomial(_need(args, "ref"))
    dec = decompose_over_A(cd, m, ref)
    positions = None
    if dec is not None:
        positions = []
        for (i, kappa, lam), k in sorted(dec.items(), key=lambda kv: (kv[0][0], kv[0][1], Fraction(kv[0][2]))):
            f = Fraction(lam)
            positions.append([i, kappa, f.numerator, f.denominator, k])
    return {"leq": leq(cd, m, ref), "positions": positions}


def cmd_dual(args) -> dict:
    return _mono_out(dual_highest_monomial(_cartan(args), _monomial(args)))


def cmd_bar(args) -> dict:
    return _mono_out(bar_monomial(_cartan(args), _monomial(args), _need(args, "ell")))


def cmd_verify(args) -> dict:
    _sl2_only(args)
    ell = 4 if args.ell is None else args.ell
    K = 2 if args.maxk is None else args.maxk
    N = 3 if args.tuples is None else args.tuples
    seed = 0 if args.seed is None else args.seed
    check = args.check
    if check == "factg":
        return sl2theory.verify_factg(ell, K, N, samples=args.samples, seed=seed).to_json()
    if check == "zeta":
        ells = (2, 3, 4) if args.ell is None else (args.ell,)
        return sl2theory.verify_zeta(ells, K)
    if check == "lzero":
        return sl2theory.verify_lzero(K, N)
    fn: Dict[str, Callable] = {
        "useqt2": sl2theory.verify_useqt2,
        "alternate": sl2theory.verify_alternate,
        "duality": sl2theory.verify_duality,
    }
    return fn[check](ell, K)


def cmd_table(args) -> dict:
    cd = _cartan(args)
    if args.action == "load":
        t = load_table(cd, _need(args, "table"))
        return {
            "entries": len(t.entries),
            "provenance": dict(sorted(Counter(t.provenance.values()).items())),
            "monomials": [format_monomial(m) for m in sorted(t.entries, key=lambda x: x.sort_key())],
        }
    _sl2_only(args)
    path = args.table or _need(args, "out")
    ell = 4 if args.ell is None else args.ell
    K = 2 if args.maxk is None else args.maxk
    t = CharacterTable()
    for m in sl2theory.window_simples(ell, K):
        t.add(cd, sl2theory.chi_simple_sl2(m), "computed-sl2")
    save_table(t, path)
    return {"entries": len(t.entries), "path": str(path)}


# ------------------------------------------------------------ parser

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--type", default=SL2_LABEL, help="affine type label, e.g. A1^1, A2^2, D4^3")
    p.add_argument("--ell", type=int, help="window bound / bar parameter")
    p.add_argument("--level", type=int, help="truncation level L")
    p.add_argument("--json", action="store_true", help="report errors as JSON on stdout")
    p.add_argument("--out", help="write the result to PATH instead of stdout")
    p.add_argument("--seed", type=int, help="seed for sampled oracle checks")
    p.add_argument("--table", help="character table PATH")
    p.add_argument("--monomial", help="monomial literal, factors Y[i,kappa,lambda]^e joined by '*' or ';'")
    p.add_argument("--monomials", help="';'-separated list of monomials (factors joined by '*')")
    p.add_argument("--ref", help="reference monomial for decompose")
    p.add_argument("--node", type=int, help="node index for amonomial")
    p.add_argument("--point", help="spectral point 'kappa,lambda' for amonomial")
    p.add_argument("--maxk", type=int, help="maximal degree of window monomials")
    p.add_argument("--tuples", type=int, help="maximal tuple size")
    p.add_argument("--samples", type=int, default=24, help="matrix-oracle samples for verify factg")
    return p


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage().rstrip()}")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    root = _Parser(prog="qchar", description="q-character toolkit for quantum affine algebras")
    sub = root.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)
    sub.required = True

    sl2 = sub.add_parser("sl2", help="sl2-hat computations")
    sl2sub = sl2.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser)
    sl2sub.required = True
    for name, fn, doc in (
        ("char", cmd_sl2_char, "q-character of L(m)"),
        ("tensor-char", cmd_sl2_tensor_char, "q-character of a tensor product"),
        ("simple", cmd_sl2_simple, "simplicity of a tensor product"),
        ("factor", cmd_sl2_factor, "factorization into q-strings"),
        ("realize", cmd_sl2_realize, "matrices of L(m)"),
    ):
        sl2sub.add_parser(name, parents=[common], help=doc).set_defaults(func=fn)

    for name, fn, doc in (
        ("amonomial", cmd_amonomial, "the monomial A_{i,a}"),
        ("trunc", cmd_trunc, "truncation parts of a monomial"),
        ("decompose", cmd_decompose, "express m/mref over A^{-1} monomials"),
        ("dual", cmd_dual, "highest monomial of the dual"),
        ("bar", cmd_bar, "bar involution on C_ell"),
    ):
        sub.add_parser(name, parents=[common], help=doc).set_defaults(func=fn)

    ver = sub.add_parser("verify", help="verification suites")
    ver.add_argument("check", choices=VERIFY_CHECKS)
    for a in common._actions:
        ver._add_action(a)
    ver.set_defaults(func=cmd_verify)

    tab = sub.add_parser("table", help="character tables")
    tab.add_argument("action", choices=("load", "save"))
    for a in common._actions:
        tab._add_action(a)
    tab.set_defaults(func=cmd_table)
    return root


def _emit(payload, out_path: Optional[str], stream) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stream.write(text)


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    want_json = "--json" in argv
    try:
        args = parser.parse_args(list(argv))
    except UsageError as exc:
        stderr.write(f"{exc}\naccepted verbs: {', '.join(ACCEPTED_VERBS)}\n")
        return 2
    try:
        result = args.func(args)
    except UsageError as exc:
        stderr.write(f"qchar: {exc}\n")
        return 2
    except (ValueError, ArithmeticError, OSError, AssertionError) as exc:
        if want_json:
            _emit({"error": str(exc), "kind": type(exc).__name__}, None, stdout)
        else:
            stderr.write(f"qchar: error: {exc}\n")
        return 1
    out_path = None if (args.verb == "table" and args.action == "save") else args.out
    _emit(result, out_path, stdout)
    if isinstance(result, dict) and result.get("ok") is False:
        return 1
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


__all__ = ["run", "main", "build_parser", "UsageError", "DomainError", "YLatticeError"]
