"""Command line front end.

Every verb reads JSON objects (``-`` for stdin) and prints a report.  Exit
status: 0 when the computation succeeds and any checked property holds, 1
when a checked property fails, 2 on unreadable or malformed input.
Reports are deterministic: sorted keys, rationals as canonical strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import disk, duplicial, nerve, surface
from .disk import PervData
from .duplicial import Ducomplex, DuplicialVec
from .linalg import RatMat, is_invertible
from .nerve import Complex, ParacyclicVec, SimplicialVec
from .surface import SurfacePervData

VERBS = ("validate", "monodromy", "half-monodromy", "dualize", "nerve", "segal",
         "check-relations", "extract", "dold-kan", "ducomplex", "criterion", "euler",
         "hom", "roundtrip", "demo")


class InputError(Exception):
    """Bad input; the message names the offending file."""


class RawPerv:
    """A quadruple with correct shapes that may fail invertibility."""

    def __init__(self, phi, psi, a, b):
        self.phi, self.psi, self.a, self.b = phi, psi, a, b


# ------------------------------------------------------------------ loading

def _kind(obj) -> str:
    if not isinstance(obj, dict):
        raise ValueError("top-level JSON value must be an object")
    if "genus" in obj:
        return "surface"
    if "phi" in obj and "psi" in obj:
        return "perv"
    if "n_max" in obj:
        if "extra_degeneracies" in obj:
            return "duplicial"
        return "paracyclic" if "t" in obj else "simplicial"
    if "dims" in obj:
        return "ducomplex" if "delta" in obj else "complex"
    raise ValueError("unrecognized object: expected keys of a perverse datum, surface datum, "
                     "simplicial object, complex or ducomplex")


def _parse(kind: str, obj):
    if kind == "perv":
        phi, psi = int(obj["phi"]), int(obj["psi"])
        a, b = RatMat.from_json(obj["a"], psi, phi), RatMat.from_json(obj["b"], phi, psi)
        disk.validate(phi, psi, a, b)  # shape check
        return RawPerv(phi, psi, a, b)
    return {"surface": SurfacePervData, "duplicial": DuplicialVec, "paracyclic": ParacyclicVec,
            "simplicial": SimplicialVec, "ducomplex": Ducomplex,
            "complex": Complex}[kind].from_json(obj)


def load(path: str, allowed: tuple[str, ...] | None = None):
    """Read ``path`` and return ``(kind, value)``; raise :class:`InputError` on failure."""
    where = "<stdin>" if path == "-" else path
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{where}: cannot read: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    try:
        kind = _kind(obj)
        if allowed is not None and kind not in allowed:
            raise ValueError(f"expected {' or '.join(allowed)}, got {kind}")
        return kind, _parse(kind, obj)
    except KeyError as exc:
        raise InputError(f"{where}: missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError, IndexError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {exc}") from None


def _perv(raw: RawPerv) -> PervData | None:
    v = disk.validate(raw.phi, raw.psi, raw.a, raw.b)
    return PervData(raw.phi, raw.psi, raw.a, raw.b) if v.ok else None


# ------------------------------------------------------------------ output

def _text(value, indent="") -> list[str]:
    if isinstance(value, dict):
        out = []
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v and not _is_matrix(v):
                out.append(f"{indent}{k}:")
                out += _text(v, indent + "  ")
            else:
                out.append(f"{indent}{k}: {_scalar(v)}")
        return out
    if isinstance(value, list) and not _is_matrix(value):
        out = []
        for v in value:
            sub = _text(v, indent + "  ")
            out.append(f"{indent}-" + (" " + sub[0].lstrip() if sub else ""))
            out += sub[1:]
        return out
    return [indent + _scalar(value)]


def _is_matrix(v) -> bool:
    return isinstance(v, list) and all(isinstance(r, list) and
                                       all(isinstance(x, str) for x in r) for r in v) and bool(v)


def _scalar(v) -> str:
    if _is_matrix(v):
        return "[" + "; ".join(" ".join(r) for r in v) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_text(report)) + "\n"
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ------------------------------------------------------------------- verbs

def _mat(m: RatMat) -> list:
    return m.to_json()


def cmd_validate(args) -> tuple[dict, int]:
    kind, x = load(args.inputs[0])
    if kind == "perv":
        v = disk.validate(x.phi, x.psi, x.a, x.b)
        rep = {"kind": kind, "ok": v.ok, "t_phi": _mat(v.t_phi), "t_psi": _mat(v.t_psi),
               "t_phi_invertible": v.t_phi_invertible, "t_psi_invertible": v.t_psi_invertible,
               "problems": v.messages()}
        return rep, 0 if v.ok else 1
    if kind == "surface":
        r = surface.validate(x)
        return {"kind": kind, "ok": r.ok, "problems": list(r.problems)}, 0 if r.ok else 1
    if kind in ("simplicial", "paracyclic", "duplicial"):
        return _relations_report(kind, x)
    # complexes are validated on parsing
    return {"kind": kind, "ok": True, "problems": []}, 0


def _relations_report(kind, x) -> tuple[dict, int]:
    rep = duplicial.check_duplicial_relations(x) if kind == "duplicial" \
        else nerve.check_relations(x)
    return ({"kind": kind, "ok": rep.ok, "checked": rep.checked,
             "violations": list(rep.violations)}, 0 if rep.ok else 1)


def _require_perv(raw) -> PervData:
    F = _perv(raw)
    if F is None:
        raise _Verdict({"ok": False, "problems": disk.validate(raw.phi, raw.psi, raw.a,
                                                                 raw.b).messages()})
    return F


class _Verdict(Exception):
    def __init__(self, report):
        self.report = report


def cmd_monodromy(args):
    _, raw = load(args.inputs[0], ("perv",))
    F = _require_perv(raw)
    return {"ok": True, "t_phi": _mat(F.t_phi), "t_psi": _mat(F.t_psi)}, 0


def cmd_half_monodromy(args):
    _, raw = load(args.inputs[0], ("perv",))
    F = _require_perv(raw)
    P = disk.half_monodromy(F)
    Q = RatMat.block_diag(F.t_phi, F.t_psi)
    holds = P @ P == Q
    return {"ok": holds, "p": _mat(P), "p_squared": _mat(P @ P), "q": _mat(Q)}, 0 if holds else 1


def _emit_object(args, kind: str, obj) -> tuple[dict, int]:
    data = obj.to_json()
    if args.output:
        Path(args.output).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
        return {"ok": True, "kind": kind, "output": args.output}, 0
    return data, 0


def cmd_dualize(args):
    kind, x = load(args.inputs[0], ("perv", "surface"))
    if kind == "perv":
        return _emit_object(args, kind, disk.dualize(_require_perv(x)))
    rep = surface.validate(x)
    if not rep.ok:
        raise _Verdict({"ok": False, "problems": list(rep.problems)})
    return _emit_object(args, kind, surface.dualize(x))


def cmd_nerve(args):
    _, raw = load(args.inputs[0], ("perv",))
    return _emit_object(args, "paracyclic",
                        nerve.paracyclic_nerve(_require_perv(raw), args.levels))


def cmd_segal(args):
    _, X = load(args.inputs[0], ("simplicial", "paracyclic", "duplicial"))
    rep = nerve.segal_report(X)
    levels = [{"level": n, "dim": d, "chain_dim": c, "iso": ok} for n, d, c, ok in rep.levels]
    squares = nerve.check_segal_squares(X)
    ok = rep.ok and squares
    return {"ok": ok, "levels": levels, "squares": squares}, 0 if ok else 1


def cmd_check_relations(args):
    kind, X = load(args.inputs[0], ("simplicial", "paracyclic", "duplicial"))
    return _relations_report(kind, X)


def cmd_extract(args):
    _, X = load(args.inputs[0], ("paracyclic",))
    try:
        F = nerve.extract_perv(X)
    except nerve.NerveError as exc:
        raise _Verdict({"ok": False, "problems": [str(exc)]}) from None
    return _emit_object(args, "perv", F)


def cmd_dold_kan(args):
    kind, x = load(args.inputs[0], ("simplicial", "paracyclic", "duplicial", "complex"))
    if kind == "complex":
        return _emit_object(args, "simplicial", nerve.dold_kan_nerve(x, args.levels))
    return _emit_object(args, "complex", nerve.dold_kan_chains(x))


def _ducomplex_of(kind, x, levels: int) -> Ducomplex:
    if kind == "perv":
        x = nerve.paracyclic_nerve(_require_perv(x), levels)
        kind = "paracyclic"
    if kind == "paracyclic":
        x = duplicial.restrict_to_duplicial(x)
    try:
        return duplicial.to_ducomplex(x)
    except nerve.NerveError as exc:
        raise _Verdict({"ok": False, "problems": [str(exc)]}) from None


def cmd_ducomplex(args):
    kind, x = load(args.inputs[0], ("perv", "paracyclic", "duplicial"))
    return _emit_object(args, "ducomplex", _ducomplex_of(kind, x, args.levels))


def cmd_criterion(args):
    kind, x = load(args.inputs[0], ("ducomplex", "duplicial", "paracyclic", "perv"))
    B = x if kind == "ducomplex" else _ducomplex_of(kind, x, args.levels)
    verdicts = duplicial.paracyclicity_criterion(B)
    rep = {"levels": [{"level": n, "invertible": v} for n, v in verdicts]}
    ok = all(v for _, v in verdicts)
    if kind == "duplicial":
        rep["is_paracyclic"] = duplicial.is_paracyclic(x)
    rep["ok"] = ok
    return rep, 0 if ok else 1


def cmd_euler(args):
    _, s = load(args.inputs[0], ("surface",))
    rep = surface.validate(s)
    if not rep.ok:
        raise _Verdict({"ok": False, "problems": list(rep.problems)})
    return {"ok": True, "euler_characteristic": surface.euler_characteristic(s)}, 0


def cmd_hom(args):
    if len(args.inputs) != 2:
        raise InputError("hom needs two input files")
    k1, x = load(args.inputs[0], ("perv", "surface"))
    k2, y = load(args.inputs[1], ("perv", "surface"))
    if k1 != k2:
        raise InputError(f"{args.inputs[1]}: expected {k1}, got {k2}")
    if k1 == "perv":
        basis = disk.hom_space(_require_perv(x), _require_perv(y))
        out = [{"f_phi": _mat(m.f_phi), "f_psi": _mat(m.f_psi)} for m in basis]
    else:
        for s in (x, y):
            rep = surface.validate(s)
            if not rep.ok:
                raise _Verdict({"ok": False, "problems": list(rep.problems)})
        try:
            basis = surface.hom_space(x, y)
        except surface.SurfaceError as exc:
            raise InputError(str(exc)) from None
        out = [{"f_psi": _mat(m.f_psi), "f_phi": [_mat(f) for f in m.f_phi]} for m in basis]
    return {"ok": True, "dimension": len(out), "basis": out}, 0


def cmd_roundtrip(args):
    kind, x = load(args.inputs[0], ("perv", "complex", "ducomplex"))
    if kind == "perv":
        F = _require_perv(x)
        back = nerve.extract_perv(nerve.paracyclic_nerve(F, args.levels))
        ok = back == F
        return {"ok": ok, "kind": kind, "result": back.to_json()}, 0 if ok else 1
    if kind == "complex":
        C = nerve.dold_kan_chains(nerve.dold_kan_nerve(x, args.levels))
        E = x.trimmed()
        comp = nerve.dold_kan_comparison(x, args.levels)
        ok = C.dims == E.dims and all(is_invertible(comp[n]) for n in comp) and all(
            comp[n - 1] @ C.d[n] == E.d[n] @ comp[n] for n in C.d)
        return {"ok": ok, "kind": kind, "dims": list(C.dims)}, 0 if ok else 1
    if x.amplitude > 1:
        raise InputError(f"{args.inputs[0]}: roundtrip supports ducomplexes of amplitude <= 1")
    back = duplicial.to_ducomplex(duplicial.from_ducomplex_2term(x, args.levels))
    ok = back == x
    return {"ok": ok, "kind": kind, "result": back.to_json()}, 0 if ok else 1


def demo_bundle() -> dict:
    """A worked example: local data, a nerve summary, and a sphere with two points."""
    sky = disk.skyscraper(1)
    ext = disk.extension_by_zero(RatMat([[2]]))
    X = nerve.paracyclic_nerve(ext, 3)
    # monodromies 2 and 1/2 around the two points, as extensions by zero
    sphere = SurfacePervData(surface.StratSurface.standard(0, 2), 1, (),
                             (surface.LocalDatum(1, RatMat([[1]]), RatMat([[-1]])),
                              surface.LocalDatum(1, RatMat([[1]]), RatMat([["1/2"]]))))
    return {
        "skyscraper": {"datum": sky.to_json(), "t_phi": _mat(sky.t_phi),
                       "half_monodromy": _mat(disk.half_monodromy(sky))},
        "extension_by_zero": {
            "datum": ext.to_json(),
            "t_psi": _mat(ext.t_psi),
            "nerve_dims": list(X.dims),
            "t1": _mat(X.t[1]),
            "segal": nerve.check_segal(X),
            "relations_checked": nerve.check_relations(X).checked,
            "extract": nerve.extract_perv(X).to_json(),
        },
        "sphere_two_points": {
            "datum": sphere.to_json(),
            "valid": surface.validate(sphere).ok,
            "euler_characteristic": surface.euler_characteristic(sphere),
        },
    }


def cmd_demo(args):
    bundle = demo_bundle()
    if args.output:
        Path(args.output).write_text(json.dumps(bundle, indent=2, sort_keys=True) + "\n")
        return {"ok": True, "output": args.output}, 0
    return bundle, 0


HANDLERS = {
    "validate": cmd_validate, "monodromy": cmd_monodromy,
    "half-monodromy": cmd_half_monodromy, "dualize": cmd_dualize, "nerve": cmd_nerve,
    "segal": cmd_segal, "check-relations": cmd_check_relations, "extract": cmd_extract,
    "dold-kan": cmd_dold_kan, "ducomplex": cmd_ducomplex, "criterion": cmd_criterion,
    "euler": cmd_euler, "hom": cmd_hom, "roundtrip": cmd_roundtrip, "demo": cmd_demo,
}

_HELP = {
    "validate": "check a datum, surface datum or simplicial object",
    "monodromy": "print T_Phi and T_Psi",
    "half-monodromy": "print P and check P^2 = diag(T_Phi, T_Psi)",
    "dualize": "dual of a datum or surface datum",
    "nerve": "paracyclic nerve of a datum",
    "segal": "check the Segal conditions",
    "check-relations": "check all generator relations",
    "extract": "recover the datum from a paracyclic nerve",
    "dold-kan": "normalized chains of a simplicial object, or nerve of a complex",
    "ducomplex": "ducomplex of a duplicial or paracyclic object (or of a datum's nerve)",
    "criterion": "per-level paracyclicity criterion",
    "euler": "Euler characteristic of a surface datum",
    "hom": "basis of morphisms between two data",
    "roundtrip": "check a roundtrip (datum, complex or two-term ducomplex)",
    "demo": "print a worked example bundle",
}


def _levels(s: str) -> int:
    k = int(s)
    if not 1 <= k <= 12:
        raise argparse.ArgumentTypeError("levels must be between 1 and 12")
    return k


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paraperv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb in VERBS:
        sp = sub.add_parser(verb, help=_HELP[verb])
        nargs = "*" if verb == "demo" else ("+" if verb == "hom" else 1)
        if verb != "demo":
            sp.add_argument("inputs", nargs=nargs, metavar="FILE", help="JSON input ('-' for stdin)")
        sp.add_argument("--levels", type=_levels, default=nerve.DEFAULT_N_MAX,
                        help="truncation level (default %(default)s)")
        sp.add_argument("--output", help="write the resulting object to this file")
        sp.add_argument("--format", choices=("json", "text"), default="json")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        report, code = HANDLERS[args.verb](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _Verdict as v:
        report, code = v.report, 1
    except OSError as exc:
        print(f"error: {args.output}: {exc.strerror}", file=sys.stderr)
        return 2
    sys.stdout.write(render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
