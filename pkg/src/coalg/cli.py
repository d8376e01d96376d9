"""Command line interface: verbs, JSON reports, exit-code contract.

Exit codes: 0 when the report verdict is `valid` or `holds`, 1 when it
is `invalid` or `violated`, 2 for usage, parse, IO and hypothesis
errors (diagnostics go to stderr). Every successful run prints one
canonical JSON report to stdout; `--human` renders the same report as
text. Set COALG_VERBOSE=1 to embed solver constraint matrices in
reports.

Structure references accepted by verbs:

  coalgebras    zoo:<name> or a structure file path
  bicomodules   regular:<coalg>, switch:<coalg>, dual:<bicomodule>,
                or a structure file path
  differentials solve:<bicomodule> (basis element, see --index),
                zero:<bicomodule>, or a focc structure file
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import coalgebra as ca
from . import codual as cd
from . import comodule as cm
from . import focc as fc
from .errors import (CoalgError, DimensionError, InvalidStructureError,
                     ParseError, PreconditionError, UsageError)
from .serialize import (NamedMap, canonical_json, dense_values, emit_structure,
                        parse_structure, resolve_zoo_uri, structure_hash,
                        structure_to_jsonable, tensor_entries)

ZOO_LIST = ["zoo:trivial", "zoo:grouplike2", "zoo:grouplike3", "zoo:grouplike4",
            "zoo:matrix2", "zoo:matrix3", "zoo:primitive2"]


class Context:
    """Resolves reference strings and records them for the report."""

    def __init__(self):
        self.inputs = []

    def _record(self, ref, structure=None):
        entry = {"ref": ref}
        if structure is not None:
            try:
                entry["hash"] = structure_hash(structure)
            except UsageError:
                pass
        self.inputs.append(entry)

    def _load_file(self, path: str):
        text = Path(path).read_text()
        return parse_structure(text, resolver=self._over_resolver)

    def _over_resolver(self, ref: str):
        if ref.startswith("zoo:"):
            return resolve_zoo_uri(ref)
        inner = self._load_file(ref)
        if not isinstance(inner, ca.Coalgebra):
            raise ParseError(f"referenced file {ref!r} does not hold a coalgebra",
                             "over")
        return inner

    def coalgebra(self, ref: str) -> ca.Coalgebra:
        if ref.startswith("zoo:"):
            c = resolve_zoo_uri(ref)
        else:
            c = self._load_file(ref)
            if not isinstance(c, ca.Coalgebra):
                raise UsageError(f"{ref!r} is not a coalgebra")
        self._record(ref, c)
        return c

    def bicomodule(self, ref: str) -> cm.Bicomodule:
        b = self._resolve_bicomodule(ref)
        self._record(ref, b)
        return b

    def _resolve_bicomodule(self, ref: str) -> cm.Bicomodule:
        if ref.startswith("regular:"):
            c = self._resolve_coalgebra_quiet(ref[len("regular:"):])
            ca.ensure_valid(c)
            return cm.regular_bicomodule(c)
        if ref.startswith("switch:"):
            c = self._resolve_coalgebra_quiet(ref[len("switch:"):])
            ca.ensure_valid(c)
            if not ca.is_cocommutative(c):
                raise PreconditionError(
                    "switch carrier requires a cocommutative coalgebra")
            return cm.switch_bicomodule(cm.regular_left(c))
        if ref.startswith("dual:"):
            return cm.dual_bicomodule(self._resolve_bicomodule(ref[len("dual:"):]))
        b = self._load_file(ref)
        if not isinstance(b, cm.Bicomodule):
            raise UsageError(f"{ref!r} is not a bicomodule")
        return b

    def _resolve_coalgebra_quiet(self, ref: str) -> ca.Coalgebra:
        if ref.startswith("zoo:"):
            return resolve_zoo_uri(ref)
        c = self._load_file(ref)
        if not isinstance(c, ca.Coalgebra):
            raise UsageError(f"{ref!r} is not a coalgebra")
        return c

    def focc(self, ref: str, index: int = 0) -> fc.Focc:
        if ref.startswith("solve:"):
            carrier = self._resolve_bicomodule(ref[len("solve:"):])
            space = fc.focc_space(carrier)
            if not (0 <= index < space.dim):
                raise UsageError(
                    f"differential space has dimension {space.dim}; "
                    f"index {index} is out of range")
            f = fc.focc_from_basis(carrier, space, index)
        elif ref.startswith("zero:"):
            f = fc.zero_focc(self._resolve_bicomodule(ref[len("zero:"):]))
        else:
            f = self._load_file(ref)
            if not isinstance(f, fc.Focc):
                raise UsageError(f"{ref!r} is not a differential structure")
            _ensure_focc(f)
        self._record(ref, f)
        return f

    def named_map(self, path: str) -> NamedMap:
        m = self._load_file(path)
        if not isinstance(m, NamedMap):
            raise UsageError(f"{path!r} is not a map structure")
        self._record(path, m)
        return m

    def any_structure(self, ref: str):
        if ref.startswith("zoo:"):
            return self.coalgebra(ref)
        if ref.startswith(("regular:", "switch:", "dual:")):
            return self.bicomodule(ref)
        if ref.startswith(("solve:", "zero:")):
            return self.focc(ref)
        s = self._load_file(ref)
        self._record(ref, s)
        return s


def _ensure_bicomodule(b: cm.Bicomodule):
    violations = cm.validate_bicomodule(b)
    if violations:
        raise InvalidStructureError(
            f"input bicomodule fails {len(violations)} check(s), first: "
            f"{violations[0].rule} at {violations[0].index}", violations)


def _ensure_focc(f: fc.Focc):
    _ensure_bicomodule(f.carrier)
    if not fc.is_coderivation(f):
        raise InvalidStructureError(
            "input differential does not satisfy the co-Leibniz rule")


def _violations_jsonable(violations) -> list:
    return [{"rule": v.rule, "index": list(v.index)} for v in violations]


def _space_details(space, shape) -> dict:
    details = {
        "ambient_dim": space.ambient_dim,
        "dim": space.dim,
        "basis": [tensor_entries(v.reshape(shape)) for v in space.basis],
    }
    if os.environ.get("COALG_VERBOSE") == "1":
        details["constraints"] = tensor_entries(space.constraint_matrix)
    return details


# ---------------------------------------------------------------------------
# Verb handlers. Each returns (verdict, details).

def _cmd_validate(args, ctx: Context):
    s = ctx.any_structure(args.ref)
    if isinstance(s, ca.Coalgebra):
        kind, violations = "coalgebra", ca.validate_coalgebra(s)
    elif isinstance(s, cm.LeftComodule):
        kind, violations = "comodule", cm.validate_left(s)
    elif isinstance(s, cm.RightComodule):
        kind, violations = "comodule", cm.validate_right(s)
    elif isinstance(s, cm.Bicomodule):
        kind, violations = "bicomodule", cm.validate_bicomodule(s)
    elif isinstance(s, fc.Focc):
        kind = "focc"
        violations = cm.validate_bicomodule(s.carrier)
        defect = fc.coderivation_defect(s)
        for idx in np.ndindex(defect.shape):
            if defect[idx] != 0:
                violations.append(ca.Violation("co-leibniz", idx))
    else:
        kind, violations = "map", []
    verdict = "valid" if not violations else "invalid"
    return verdict, {"kind": kind, "violations": _violations_jsonable(violations)}


def _cmd_cocommutative(args, ctx: Context):
    c = ctx.coalgebra(args.ref)
    ca.ensure_valid(c)
    flag = ca.is_cocommutative(c)
    return ("holds" if flag else "violated"), {"cocommutative": flag}


def _cmd_dual_algebra(args, ctx: Context):
    c = ctx.coalgebra(args.ref)
    alg = ca.dual_algebra(c)
    violations = ca.validate_algebra(alg)
    verdict = "valid" if not violations else "invalid"
    return verdict, {
        "dim": alg.dim,
        "mult": tensor_entries(alg.mult),
        "unit": dense_values(alg.unit),
        "violations": _violations_jsonable(violations),
    }


def _cmd_dimodule_check(args, ctx: Context):
    c = ctx.coalgebra(args.ref)
    flag = ca.verify_dimodule(c)
    return ("holds" if flag else "violated"), {"holds": flag}


def _cmd_regular(args, ctx: Context):
    c = ctx.coalgebra(args.ref)
    ca.ensure_valid(c)
    return "valid", {"structure": structure_to_jsonable(
        cm.regular_bicomodule(c), name=f"regular-{c.name}")}


def _cmd_dual(args, ctx: Context):
    b = ctx.bicomodule(args.ref)
    _ensure_bicomodule(b)
    return "valid", {"structure": structure_to_jsonable(cm.dual_bicomodule(b))}


def _cmd_tensor(args, ctx: Context):
    a = ctx.bicomodule(args.left)
    b = ctx.bicomodule(args.right)
    _ensure_bicomodule(a)
    _ensure_bicomodule(b)
    t = cm.tensor_bicomodule(a.left, b.right)
    return "valid", {"structure": structure_to_jsonable(t)}


def _cmd_quadruple_check(args, ctx: Context):
    w = ctx.bicomodule(args.w)
    u = ctx.bicomodule(args.u)
    _ensure_bicomodule(w)
    _ensure_bicomodule(u)
    flag = cm.verify_quadruple(w, u)
    return ("holds" if flag else "violated"), {"holds": flag}


def _cmd_com_space(args, ctx: Context):
    w = ctx.bicomodule(args.w)
    u = ctx.bicomodule(args.u)
    _ensure_bicomodule(w)
    _ensure_bicomodule(u)
    if args.side == "left":
        space = cd.comodule_map_space(w.left, u.left)
    else:
        space = cd.comodule_map_space_right(w.right, u.right)
    return "valid", {"side": args.side, **_space_details(space, (u.dim, w.dim))}


def _cmd_codual(args, ctx: Context):
    b = ctx.bicomodule(args.ref)
    _ensure_bicomodule(b)
    cod = cd.left_codual(b) if args.side == "left" else cd.right_codual(b)
    details = {
        "side": cod.side,
        "dim": cod.dim,
        "basis_maps": [tensor_entries(x) for x in cod.basis_maps],
        "induced_left": tensor_entries(cod.induced_lc),
        "induced_right": tensor_entries(cod.induced_rc),
    }
    if os.environ.get("COALG_VERBOSE") == "1":
        details["constraints"] = tensor_entries(cod.space.constraint_matrix)
    return "valid", details


def _cmd_prop28(args, ctx: Context):
    c = ctx.coalgebra(args.ref)
    rep = cd.counit_pairing_iso(c)
    verdict = "holds" if rep.holds else "violated"
    return verdict, {
        "dim_codual": rep.dim_codual,
        "dim_dual": rep.dim_dual,
        "invertible": rep.invertible,
        "intertwines_left": rep.intertwines_left,
        "intertwines_right": rep.intertwines_right,
    }


def _cmd_focc_solve(args, ctx: Context):
    b = ctx.bicomodule(args.ref)
    space = fc.focc_space(b)
    return "valid", _space_details(space, (b.dim, b.over.dim))


def _cmd_coder(args, ctx: Context):
    c = ctx.coalgebra(args.ref)
    space = fc.coder_space(c)
    return "valid", _space_details(space, (c.dim, c.dim))


def _resolve_cofield(args, ctx: Context, f: fc.Focc, codual):
    if args.map is not None:
        x = ctx.named_map(args.map).matrix
        if x.shape != (f.carrier.dim, f.carrier.over.dim):
            raise DimensionError(
                f"cofield map has shape {x.shape}, expected "
                f"{(f.carrier.dim, f.carrier.over.dim)}")
        return [x]
    if args.codual_basis is not None:
        k = args.codual_basis
        if not (0 <= k < codual.dim):
            raise UsageError(
                f"codual has dimension {codual.dim}; basis index {k} is out of range")
        return [codual.basis_maps[k]]
    return list(codual.basis_maps)


def _cmd_cartan(args, ctx: Context):
    f = ctx.focc(args.focc, index=args.index)
    codual = cd.left_codual(f.carrier)
    xs = _resolve_cofield(args, ctx, f, codual)
    if len(xs) != 1:
        raise UsageError("cartan needs one cofield: pass --map or --codual-basis")
    xi = fc.cartan_map(xs[0], f, codual)
    m = NamedMap("cartan", xi)
    return "valid", {"structure": structure_to_jsonable(m)}


def _cmd_verify_thm32(args, ctx: Context):
    f = ctx.focc(args.focc, index=args.index)
    u = f.carrier
    codual = cd.left_codual(u)
    xs = _resolve_cofield(args, ctx, f, codual)
    checked = []
    ok = True
    for x in xs:
        verdict = fc.verify_cartan_comodule_law(u, f, x, codual)
        ok = ok and verdict.holds
        checked.append({
            "comodule_map_ok": verdict.comodule_map_ok,
            "co_leibniz_ok": verdict.co_leibniz_ok,
            "first_violation": _violation_jsonable(verdict.first_violation),
        })
    return ("holds" if ok else "violated"), {
        "cofields_checked": len(xs),
        "dim_codual": codual.dim,
        "results": checked,
    }


def _violation_jsonable(v):
    if v is None:
        return None
    rule, idx = v
    return {"rule": rule, "index": list(idx)}


def _cmd_verify_thm33(args, ctx: Context):
    c = ctx.coalgebra(args.ref)
    ca.ensure_valid(c)
    if not ca.is_cocommutative(c):
        raise PreconditionError("hypothesis violated: coalgebra not cocommutative")
    if args.focc is not None:
        foccs = [ctx.focc(args.focc)]
        u_left = foccs[0].carrier.left
    else:
        u_left = cm.regular_left(c)
        switched = cm.switch_bicomodule(u_left)
        space = fc.focc_space(switched)
        foccs = [fc.focc_from_basis(switched, space, i) for i in range(space.dim)]
    results = []
    ok = True
    for f in foccs:
        verdict = fc.verify_switch_coderivations(c, u_left, f)
        ok = ok and verdict.holds
        results.append({
            "dim_codual": verdict.dim_codual,
            "dim_coder": verdict.dim_coder,
            "memberships": [None if m is None else dense_values(m)
                            for m in verdict.memberships],
        })
    return ("holds" if ok else "violated"), {
        "differentials_checked": len(foccs),
        "results": results,
    }


def _cmd_probe(args, ctx: Context):
    c = ctx.coalgebra(args.ref)
    ca.ensure_valid(c)
    if args.focc is not None:
        f = ctx.focc(args.focc, index=args.index)
        u = f.carrier
    else:
        u = cm.regular_bicomodule(c)
        space = fc.focc_space(u)
        if space.dim == 0:
            f = fc.zero_focc(u)
        else:
            if not (0 <= args.index < space.dim):
                raise UsageError(
                    f"differential space has dimension {space.dim}; "
                    f"index {args.index} is out of range")
            f = fc.focc_from_basis(u, space, args.index)
    rep = fc.kahler_probe(c, u, f)
    details = {
        "dim_codual": rep.dim_codual,
        "dim_coder": rep.dim_coder,
        "rank": rep.rank,
        "kernel_dim": rep.kernel_dim,
        "injective": rep.injective,
        "surjective": rep.surjective,
        "bijective": rep.bijective,
        "image_in_coder": rep.image_in_coder,
        "coder_in_image": rep.coder_in_image,
        "summary": rep.summary,
        "differential": tensor_entries(f.d),
        "warnings": [] if rep.cocommutative else ["coalgebra is not cocommutative"],
    }
    return "valid", details


def _cmd_zoo(args, ctx: Context):
    if args.zoo_action == "list":
        members = []
        for uri in ZOO_LIST:
            c = resolve_zoo_uri(uri)
            members.append({"ref": uri, "dim": c.dim,
                            "cocommutative": ca.is_cocommutative(c)})
        return "valid", {"members": members,
                         "families": ["trivial", "grouplike(n)", "matrix(n)",
                                      "primitive2"]}
    name = args.name if args.name.startswith("zoo:") else "zoo:" + args.name
    c = resolve_zoo_uri(name)
    ctx.inputs.append({"ref": name, "hash": structure_hash(c)})
    return "valid", {"structure": structure_to_jsonable(c)}


# ---------------------------------------------------------------------------
# Parser and entry point.

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coalg",
        description="Exact calculator for coalgebras, bicomodules, coduals "
                    "and codifferential calculi.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true",
                        help="render the report as text instead of JSON")
    common.add_argument("--output", metavar="FILE",
                        help="also write the produced structure to FILE")
    sub = parser.add_subparsers(dest="verb")

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(func=func, command_name=name)
        return p

    p = add("validate", _cmd_validate, "check the axioms of a structure")
    p.add_argument("ref")
    p = add("cocommutative", _cmd_cocommutative,
            "check whether a coalgebra is cocommutative")
    p.add_argument("ref")
    p = add("dual-algebra", _cmd_dual_algebra,
            "multiplication table of the dual-basis algebra")
    p.add_argument("ref")
    p = add("dimodule-check", _cmd_dimodule_check,
            "verify the coaction/multiplication compatibilities on the dual")
    p.add_argument("ref")
    p = add("regular", _cmd_regular, "regular bicomodule of a coalgebra")
    p.add_argument("ref")
    p = add("dual", _cmd_dual, "dual bicomodule")
    p.add_argument("ref")
    p = add("tensor", _cmd_tensor,
            "tensor-product bicomodule (left of first, right of second)")
    p.add_argument("left")
    p.add_argument("right")
    p = add("quadruple-check", _cmd_quadruple_check,
            "verify the four commuting Hom(W, U) comodule structures")
    p.add_argument("w")
    p.add_argument("u")
    p = add("com-space", _cmd_com_space, "solve the space of comodule maps")
    p.add_argument("w")
    p.add_argument("u")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p = add("codual", _cmd_codual, "solve a codual with its induced coactions")
    p.add_argument("side", choices=("left", "right"))
    p.add_argument("ref")
    p = add("prop28", _cmd_prop28,
            "check the counit pairing identifies the codual of the regular "
            "bicomodule with the dual-basis bicomodule")
    p.add_argument("ref")
    p = add("focc-solve", _cmd_focc_solve,
            "solve the space of differentials on a bicomodule")
    p.add_argument("ref")
    p = add("coder", _cmd_coder, "solve the space of self-coderivations")
    p.add_argument("ref")
    p = add("cartan", _cmd_cartan,
            "endomorphism obtained by following a cofield with a differential")
    p.add_argument("focc")
    p.add_argument("--map", metavar="FILE")
    p.add_argument("--codual-basis", type=int, metavar="K")
    p.add_argument("--index", type=int, default=0,
                   help="basis index for solve: references")

    verify = sub.add_parser("verify", help="verify the structural theorems")
    vsub = verify.add_subparsers(dest="law")
    p = vsub.add_parser("thm32", parents=[common],
                        help="cofield action: comodule-map law and "
                             "deformed co-Leibniz identity")
    p.set_defaults(func=_cmd_verify_thm32, command_name="verify thm32")
    p.add_argument("focc")
    p.add_argument("--map", metavar="FILE")
    p.add_argument("--codual-basis", type=int, metavar="K")
    p.add_argument("--index", type=int, default=0)
    p = vsub.add_parser("thm33", parents=[common],
                        help="cocommutative switch carriers: cofields "
                             "act as honest coderivations")
    p.set_defaults(func=_cmd_verify_thm33, command_name="verify thm33")
    p.add_argument("ref")
    p.add_argument("--focc", metavar="FILE")

    p = add("probe", _cmd_probe,
            "compare the cofield action with the self-coderivation space")
    p.add_argument("ref")
    p.add_argument("--focc", metavar="FILE")
    p.add_argument("--index", type=int, default=0)

    zoo_p = sub.add_parser("zoo", help="built-in example structures")
    zsub = zoo_p.add_subparsers(dest="zoo_action")
    p = zsub.add_parser("list", parents=[common])
    p.set_defaults(func=_cmd_zoo, command_name="zoo list", zoo_action="list")
    p = zsub.add_parser("emit", parents=[common])
    p.set_defaults(func=_cmd_zoo, command_name="zoo emit", zoo_action="emit")
    p.add_argument("name")
    return parser


def _render_human(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    for item in report["inputs"]:
        suffix = f"  [{item['hash']}]" if "hash" in item else ""
        lines.append(f"input:   {item['ref']}{suffix}")
    lines.append(f"verdict: {report['verdict']}")
    lines.extend(_human_lines(report["details"], "  "))
    return "\n".join(lines) + "\n"


def _is_entry_list(value) -> bool:
    return (isinstance(value, list) and value
            and all(isinstance(e, list) and e and isinstance(e[-1], str)
                    for e in value))


def _human_lines(value, indent: str) -> list:
    lines = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{indent}{key}:")
                lines.extend(_human_lines(item, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {_scalar(item)}")
    elif _is_entry_list(value):
        for e in value:
            idx = ",".join(str(i) for i in e[:-1])
            lines.append(f"{indent}[{idx}] = {e[-1]}")
    elif isinstance(value, list):
        for pos, item in enumerate(value):
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{indent}- #{pos}")
                lines.extend(_human_lines(item, indent + "  "))
            else:
                lines.append(f"{indent}- {_scalar(item)}")
    else:
        lines.append(f"{indent}{_scalar(value)}")
    return lines


def _scalar(value) -> str:
    if value is True:
        return "yes"
    if value is False:
        return "no"
    if value is None:
        return "-"
    if isinstance(value, list) and not value:
        return "(none)"
    if isinstance(value, dict) and not value:
        return "(empty)"
    return str(value)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if getattr(args, "func", None) is None:
        parser.print_usage(sys.stderr)
        print("error: missing or unknown verb", file=sys.stderr)
        return 2
    ctx = Context()
    try:
        verdict, details = args.func(args, ctx)
    except (CoalgError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {
        "command": args.command_name,
        "inputs": ctx.inputs,
        "verdict": verdict,
        "details": details,
    }
    if args.human:
        sys.stdout.write(_render_human(report))
    else:
        sys.stdout.write(canonical_json(report))
    if args.output and "structure" in details:
        Path(args.output).write_text(canonical_json(details["structure"]))
    return 0 if verdict in ("valid", "holds") else 1


if __name__ == "__main__":
    sys.exit(main())
