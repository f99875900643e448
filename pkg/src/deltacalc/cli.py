"""Command-line interface: typing, reduction, translation, subtyping and the corpus."""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from dataclasses import dataclass
from pathlib import Path

from . import serialize
from .basis import Basis
from .coercion import coherence, target_system, translate
from .corpus import CorpusError, run_corpus
from .delta import essence
from .lam import DEFAULT_FUEL, KERNEL, Relation, RelVerdict, normalize_steps, show_lambda
from .reduction import SyncViolation, reduce_trace, show_position
from .subtyping import derive_subtype, show_subderiv
from .syntax import ParseError, parse_basis, parse_lambda, parse_term, parse_type, show_term
from .typecheck import Derivation, RelUnknown, SystemId, TypingError, derivation, infer
from .typeexpr import IllFormedType, Theory, check_wellformed, show_type

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2, 3


@dataclass
class SessionConfig:
    theory: str = "CD"
    relation: str = "syn"
    fuel: int = DEFAULT_FUEL
    atoms: list[str] | None = None
    trace: bool = False
    json: bool = False
    basis: str = ""

    @property
    def system(self) -> SystemId:
        return SystemId.parse(self.theory, self.relation)


_CONFIG_KEYS = {"theory", "relation", "fuel", "atoms", "trace", "json", "basis"}


def read_config(path: str | Path) -> dict:
    values = {}
    for n, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{n}: expected one of {sorted(_CONFIG_KEYS)} as key=value")
        values[key] = value
    return values


def _flag(value: str) -> bool:
    if value.lower() in ("1", "true", "yes", "on"):
        return True
    if value.lower() in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def build_config(args: argparse.Namespace) -> SessionConfig:
    cfg = SessionConfig()
    if args.config:
        for key, value in read_config(args.config).items():
            match key:
                case "fuel":
                    cfg.fuel = int(value)
                case "atoms":
                    cfg.atoms = [a.strip() for a in value.split(",") if a.strip()]
                case "trace" | "json":
                    setattr(cfg, key, _flag(value))
                case _:
                    setattr(cfg, key, value)
    for key in ("theory", "relation", "fuel", "basis"):
        if getattr(args, key) is not None:
            setattr(cfg, key, getattr(args, key))
    if args.atoms is not None:
        cfg.atoms = [a.strip() for a in args.atoms.split(",") if a.strip()]
    cfg.trace = cfg.trace or args.trace
    cfg.json = cfg.json or args.json
    if cfg.fuel < 0:
        raise ValueError("fuel must be non-negative")
    return cfg


def show_derivation(d: Derivation, indent: int = 0) -> list[str]:
    note = ""
    if d.verdict is not None:
        note = f"  [{d.verdict.value}]"
    elif d.subderiv is not None:
        note = f"  [{show_subderiv(d.subderiv)}]"
    lines = [f"{'  ' * indent}({d.rule}) {d.basis} |- {show_term(d.term)} : {show_type(d.type)}{note}"]
    for p in d.premises:
        lines += show_derivation(p, indent + 1)
    return lines


class _Out:
    def __init__(self, cfg: SessionConfig, stream):
        self.cfg = cfg
        self.stream = stream

    def emit(self, text: str, payload: dict) -> None:
        if self.cfg.json:
            print(json.dumps(payload, sort_keys=True), file=self.stream)
        else:
            print(text, file=self.stream)


def _basis(cfg: SessionConfig) -> Basis:
    b = parse_basis(cfg.basis)
    for _, t in b:
        check_wellformed(cfg.system.theory, t, cfg.atoms)
    return b


def cmd_type(cfg: SessionConfig, args, out: _Out) -> int:
    sys_, b, d = cfg.system, _basis(cfg), parse_term(" ".join(args.term))
    try:
        ty = infer(sys_, b, d, cfg.fuel, cfg.atoms)
    except TypingError as e:
        out.emit(f"error: {e.code}: {e}", serialize.judgment_json(sys_, b, d, e))
        return EXIT_UNKNOWN if isinstance(e, RelUnknown) else EXIT_NO
    tree = derivation(sys_, b, d, cfg.fuel) if cfg.trace else None
    text = show_type(ty) if tree is None else "\n".join(show_derivation(tree) + [show_type(ty)])
    out.emit(text, serialize.judgment_json(sys_, b, d, ty, tree))
    return EXIT_OK


def cmd_check(cfg: SessionConfig, args, out: _Out) -> int:
    sys_, b, d = cfg.system, _basis(cfg), parse_term(args.term)
    want = parse_type(args.type)
    check_wellformed(sys_.theory, want, cfg.atoms)
    try:
        ty = infer(sys_, b, d, cfg.fuel, cfg.atoms)
    except TypingError as e:
        payload = serialize.judgment_json(sys_, b, d, e) | {"holds": False}
        out.emit(f"false  ({e.code}: {e})", payload)
        return EXIT_UNKNOWN if isinstance(e, RelUnknown) else EXIT_NO
    holds = ty == want
    payload = serialize.judgment_json(sys_, b, d, ty) | {"holds": holds, "expected": show_type(want)}
    out.emit("true" if holds else f"false  (inferred {show_type(ty)})", payload)
    return EXIT_OK if holds else EXIT_NO


def cmd_essence(cfg: SessionConfig, args, out: _Out) -> int:
    m = essence(parse_term(" ".join(args.term)))
    out.emit(show_lambda(m), {"essence": show_lambda(m)})
    return EXIT_OK


def cmd_reduce(cfg: SessionConfig, args, out: _Out) -> int:
    d = parse_term(" ".join(args.term))
    try:
        result, trace = reduce_trace(d, args.mode, cfg.fuel, args.eta)
    except SyncViolation as e:
        out.emit(f"error: {e}", {"error": "SyncViolation", "message": str(e)})
        return EXIT_NO
    steps = []
    for rec in trace:
        where = ", ".join(f"{k.value}@{show_position(p)}" for p, k in rec.positions)
        steps.append({"redexes": where, "term": show_term(rec.term)})
    lines = [f"{s['redexes']}: {s['term']}" for s in steps] if cfg.trace else []
    if result is None:
        lines.append(f"absent: fuel {cfg.fuel} exhausted")
        out.emit("\n".join(lines), {"normal_form": None, "steps": len(trace), "trace": steps})
        return EXIT_UNKNOWN
    lines.append(show_term(result))
    out.emit("\n".join(lines), {"normal_form": show_term(result), "steps": len(trace), "trace": steps})
    return EXIT_OK


def cmd_normalize(cfg: SessionConfig, args, out: _Out) -> int:
    m = parse_lambda(" ".join(args.term))
    mode = Relation.BETAETA if args.eta else Relation.BETA
    nf, steps = normalize_steps(m, mode, cfg.fuel)
    if nf is None:
        out.emit(f"absent: fuel {cfg.fuel} exhausted", {"normal_form": None, "steps": steps, "kernel": KERNEL})
        return EXIT_UNKNOWN
    out.emit(show_lambda(nf), {"normal_form": show_lambda(nf), "steps": steps, "kernel": KERNEL})
    return EXIT_OK


def cmd_translate(cfg: SessionConfig, args, out: _Out) -> int:
    sys_, b, d = cfg.system, _basis(cfg), parse_term(" ".join(args.term))
    try:
        ty = infer(sys_, b, d, cfg.fuel, cfg.atoms)
        res = translate(sys_, b, d, cfg.fuel)
        target = target_system(sys_)
        ty2 = infer(target, b, res, cfg.fuel)
    except TypingError as e:
        out.emit(f"error: {e.code}: {e}", {"error": e.code, "message": str(e)})
        return EXIT_UNKNOWN if isinstance(e, RelUnknown) else EXIT_NO
    verdict = coherence(sys_, d, res, cfg.fuel)
    coherent = ty2 == ty and verdict is RelVerdict.HOLDS
    payload = {
        "term": show_term(res), "target": {"theory": target.theory.id, "relation": target.relation.value},
        "type": show_type(ty2), "source_type": show_type(ty), "verdict": verdict.value, "coherent": coherent,
    }
    text = "\n".join([
        show_term(res),
        f"target {target}: {show_type(ty2)} (source {show_type(ty)})",
        f"essence {target.relation.value}-related to source: {verdict.value}",
    ])
    out.emit(text, payload)
    return EXIT_OK if coherent else EXIT_NO


def cmd_subtype(cfg: SessionConfig, args, out: _Out) -> int:
    theory = Theory.named(cfg.theory)
    s, t = parse_type(args.sub), parse_type(args.sup)
    for x in (s, t):
        check_wellformed(theory, x, cfg.atoms)
    d = derive_subtype(theory, s, t)
    payload = {"theory": theory.id, "sub": show_type(s), "super": show_type(t), "holds": d is not None,
               "derivation": None if d is None else serialize.to_json(d)}
    out.emit("false" if d is None else f"true\n{show_subderiv(d)}", payload)
    return EXIT_OK if d is not None else EXIT_NO


def cmd_corpus(cfg: SessionConfig, args, out: _Out) -> int:
    report = run_corpus(args.path, cfg.fuel)
    payload = {
        "entries": report.entries, "checks": len(report.outcomes), "failures": [
            {"name": o.entry.name, "system": str(o.system), "expected": o.entry.expected, "got": o.got}
            for o in report.failures
        ],
    }
    lines = report.render().splitlines()
    text = "\n".join(lines if cfg.trace else [l for l in lines if not l.startswith("PASS")])
    out.emit(text, payload)
    return EXIT_OK if report.ok else EXIT_NO


def cmd_repl(cfg: SessionConfig, args, out: _Out) -> int:
    parser = build_parser(repl=True)
    stream = sys.stdin
    interactive = stream.isatty()
    while True:
        if interactive:
            print("delta> ", end="", flush=True, file=out.stream)
        line = stream.readline()
        if not line:
            return EXIT_OK
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("quit", "exit"):
            return EXIT_OK
        try:
            argv = _split(line)
        except ValueError as e:
            print(f"error: {e}", file=out.stream)
            continue
        code = run(argv, out.stream, parser, base=cfg)
        if code:
            print(f"[exit {code}]", file=out.stream)


def _split(line: str) -> list[str]:
    # quotes group words but backslashes stay literal for lambdas
    lex = shlex.shlex(line, posix=True)
    lex.whitespace_split = True
    lex.escape = ""
    lex.commenters = ""
    return list(lex)


_COMMANDS = {
    "type": cmd_type, "check": cmd_check, "essence": cmd_essence, "reduce": cmd_reduce,
    "normalize": cmd_normalize, "translate": cmd_translate, "subtype": cmd_subtype,
    "corpus": cmd_corpus, "repl": cmd_repl,
}


def build_parser(repl: bool = False) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theory", choices=["CD", "CDS", "CDV", "BCD"], default=None)
    common.add_argument("--relation", choices=["syn", "beta", "betaeta"], default=None)
    common.add_argument("--fuel", type=int, default=None, help=f"step budget (default {DEFAULT_FUEL})")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--trace", action="store_true", help="show derivations or reduction steps")
    common.add_argument("--basis", default=None, help='typing context, e.g. "x:a->b, y:a"')
    common.add_argument("--atoms", default=None, help="comma-separated atom alphabet to enforce")
    common.add_argument("--config", default=None, help="key=value file; flags override it")

    p = argparse.ArgumentParser(prog="deltacalc", description="Intersection-typed lambda calculus toolkit.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("type", parents=[common], help="infer the type of a term")
    s.add_argument("term", nargs="+", help="term text; several words are joined")
    s = sub.add_parser("check", parents=[common], help="check a term against a type")
    s.add_argument("term")
    s.add_argument("type")
    s = sub.add_parser("essence", parents=[common], help="erase a term to its untyped essence")
    s.add_argument("term", nargs="+", help="term text; several words are joined")
    s = sub.add_parser("reduce", parents=[common], help="reduce a term leftmost-outermost")
    s.add_argument("term", nargs="+", help="term text; several words are joined")
    s.add_argument("--mode", choices=["plain", "sync"], default="plain")
    s.add_argument("--eta", action="store_true")
    s = sub.add_parser("normalize", parents=[common], help="normalize an untyped lambda term")
    s.add_argument("term", nargs="+", help="term text; several words are joined")
    s.add_argument("--eta", action="store_true")
    s = sub.add_parser("translate", parents=[common], help="eliminate coercions and report coherence")
    s.add_argument("term", nargs="+", help="term text; several words are joined")
    s = sub.add_parser("subtype", parents=[common], help="decide a subtyping judgment")
    s.add_argument("sub")
    s.add_argument("sup")
    s = sub.add_parser("corpus", parents=[common], help="run a golden corpus (default: shipped)")
    s.add_argument("path", nargs="?", default=None)
    if not repl:
        sub.add_parser("repl", parents=[common], help="read commands line by line")
    return p


def run(argv: list[str], stream=None, parser: argparse.ArgumentParser | None = None,
        base: SessionConfig | None = None) -> int:
    stream = stream or sys.stdout
    parser = parser or build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    try:
        cfg = build_config(args)
        if base is not None:
            # settings given at repl start apply unless a line overrides them
            for key in ("theory", "relation", "fuel", "basis"):
                if getattr(args, key) is None and not (args.config and key in read_config(args.config)):
                    setattr(cfg, key, getattr(base, key))
            cfg.atoms = cfg.atoms if args.atoms is not None else base.atoms
            cfg.json = cfg.json or base.json
            cfg.trace = cfg.trace or base.trace
        cfg.system
        return _COMMANDS[args.command](cfg, args, _Out(cfg, stream))
    except (ParseError, IllFormedType, CorpusError, OSError, ValueError) as e:
        print(f"error: {e}", file=stream if base is not None else sys.stderr)
        return EXIT_ERROR


def main(argv: list[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
