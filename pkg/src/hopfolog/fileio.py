"""JSON module and map files with exact string scalars."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .exactfield import FieldError, Matrix
from .family import GROUP_RING, TAFT, TRUNCATED, FamilyError, HopfFamily, group_ring_z2, taft, truncated
from .grmod import GradedModule, ModuleError, ModuleHom


class ParseError(ValueError):
    """Malformed file contents; carries line/column when known."""


def _loads(text: str, origin: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{origin}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _need(obj, key, origin, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{origin}: missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise ParseError(f"{origin}: field {key!r} has the wrong type")
    return val


# ---------------------------------------------------------------------------
# family


def family_from_json(obj, origin="family") -> HopfFamily:
    kind = _need(obj, "kind", origin, str)
    cyclic = obj.get("grading", "Z") in ("Zn", "cyclic")
    if obj.get("grading", "Z") not in ("Z", "Zn", "cyclic", "none"):
        raise ParseError(f"{origin}: grading must be \"Z\" or \"Zn\"")
    try:
        if kind == TRUNCATED:
            return truncated(int(_need(obj, "p", origin)), int(obj.get("m", 1)), cyclic)
        if kind == TAFT:
            return taft(int(_need(obj, "n", origin)), cyclic, bool(obj.get("half", False)))
        if kind in (GROUP_RING, "group_ring"):
            return group_ring_z2()
    except FamilyError as exc:
        raise ParseError(f"{origin}: {exc}") from None
    raise ParseError(f"{origin}: unknown family kind {kind!r}")


def family_to_json(fam: HopfFamily) -> dict:
    if fam.kind == TRUNCATED:
        return {"kind": TRUNCATED, "p": fam.p, "m": fam.m, "grading": "Zn" if fam.cyclic else "Z"}
    if fam.kind == TAFT:
        out = {"kind": TAFT, "n": fam.taft_n, "grading": "Zn" if fam.cyclic else "Z"}
        if fam.half:
            out["half"] = True
        return out
    return {"kind": GROUP_RING}


# ---------------------------------------------------------------------------
# scalars, degrees, sparse matrices


def parse_scalar(F, lit, origin):
    if isinstance(lit, bool):
        raise ParseError(f"{origin}: bad scalar {lit!r}")
    if isinstance(lit, int):
        lit = str(lit)
    if not isinstance(lit, str):
        raise ParseError(f"{origin}: scalars must be strings or integers, got {lit!r}")
    try:
        return F.parse(lit)
    except FieldError as exc:
        raise ParseError(f"{origin}: {exc}") from None


def parse_degree(value, origin) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{origin}: bad degree {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            q = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{origin}: bad degree {value!r}") from None
        if q.denominator not in (1, 2):
            raise ParseError(f"{origin}: degree {value!r} is not a half-integer")
        return q
    raise ParseError(f"{origin}: bad degree {value!r}")


def format_degree(d2: int):
    return d2 // 2 if d2 % 2 == 0 else f"{d2}/2"


def parse_triples(F, triples, rows, cols, origin) -> Matrix:
    if not isinstance(triples, list):
        raise ParseError(f"{origin}: expected a list of [row, col, scalar] triples")
    M = Matrix(F, rows, cols)
    for k, t in enumerate(triples):
        where = f"{origin}[{k}]"
        if not (isinstance(t, list) and len(t) == 3 and isinstance(t[0], int) and isinstance(t[1], int)):
            raise ParseError(f"{where}: expected [row, col, scalar]")
        r, c, lit = t
        if not (0 <= r < rows and 0 <= c < cols):
            raise ParseError(f"{where}: index ({r}, {c}) outside {rows}x{cols}")
        M.data[r][c] = F.add(M.data[r][c], parse_scalar(F, lit, where))
    return M


def format_triples(M: Matrix) -> list:
    F = M.field
    return [[r, c, F.format(x)] for r, c, x in M.nonzero_entries()]


# ---------------------------------------------------------------------------
# modules


def module_from_json(obj, origin="module", check: bool = True) -> GradedModule:
    fam = family_from_json(_need(obj, "family", origin, dict), f"{origin}.family")
    F = fam.field
    basis = _need(obj, "basis", origin, list)
    degrees = []
    for k, b in enumerate(basis):
        deg = b.get("degree", 0) if isinstance(b, dict) else b
        q = parse_degree(deg, f"{origin}.basis[{k}]")
        degrees.append(int(q * 2))
    d = len(degrees)
    X = parse_triples(F, obj.get("X", []), d, d, f"{origin}.X")
    if "algebra" in obj:
        from .comod import SmashModule

        alg = _algebra_from_json(fam, obj["algebra"], f"{origin}.algebra")
        acts_raw = obj.get("action")
        if not isinstance(acts_raw, list):
            raise ParseError(f"{origin}: smash modules need an \"action\" list")
        if len(acts_raw) == alg.dim - 1:
            acts_raw = [None] + acts_raw
        if len(acts_raw) != alg.dim:
            raise ParseError(f"{origin}.action: expected {alg.dim} matrices")
        actions = []
        for k, a in enumerate(acts_raw):
            if a is None:
                actions.append(Matrix.identity(F, d))
            else:
                actions.append(parse_triples(F, a, d, d, f"{origin}.action[{k}]"))
        return SmashModule(fam, degrees, X, alg, actions, check=check)
    return GradedModule(fam, degrees, X, check=check)


def _algebra_from_json(fam, obj, origin):
    from .comod import DerivationAlgebra

    F = fam.field
    degrees = _need(obj, "degrees", origin, list)
    dim = len(degrees)
    if "dim" in obj and obj["dim"] != dim:
        raise ParseError(f"{origin}: dim {obj['dim']} disagrees with {dim} degrees")
    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for k, q in enumerate(_need(obj, "structure_constants", origin, list)):
        where = f"{origin}.structure_constants[{k}]"
        if not (isinstance(q, list) and len(q) == 4 and all(isinstance(x, int) for x in q[:3])):
            raise ParseError(f"{where}: expected [i, j, k, scalar]")
        i, j, kk, lit = q
        if not all(0 <= x < dim for x in (i, j, kk)):
            raise ParseError(f"{where}: index out of range")
        c = parse_scalar(F, lit, where)
        mult[i][j][kk] = F.add(mult[i][j].get(kk, F.zero), c)
    D = parse_triples(F, obj.get("derivation", []), dim, dim, f"{origin}.derivation")
    return DerivationAlgebra(fam, [int(x) for x in degrees], mult, D, obj.get("labels"))


def module_to_json(M: GradedModule) -> dict:
    out = {
        "family": family_to_json(M.family),
        "basis": [{"name": f"b{k}", "degree": format_degree(d)} for k, d in enumerate(M.degrees)],
        "X": format_triples(M.X),
    }
    alg = getattr(M, "algebra", None)
    if alg is not None:
        F = alg.field
        sc = []
        for i in range(alg.dim):
            for j in range(alg.dim):
                for k, c in sorted(alg.mult[i][j].items()):
                    if not F.is_zero(c):
                        sc.append([i, j, k, F.format(c)])
        out["algebra"] = {
            "dim": alg.dim,
            "degrees": list(alg.degrees),
            "labels": list(alg.labels),
            "structure_constants": sc,
            "derivation": format_triples(alg.deriv),
        }
        out["action"] = [format_triples(A) for A in M.actions]
    return out


def dumps_module(M: GradedModule) -> str:
    return json.dumps(module_to_json(M), indent=2, sort_keys=False)


def load_module(path, check: bool = True) -> GradedModule:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    return module_from_json(_loads(text, str(path)), str(path), check)


# ---------------------------------------------------------------------------
# maps: {"source": module or path, "target": module or path, "entries": triples}


def map_from_json(obj, origin="map", base: Path | None = None) -> ModuleHom:
    def side(key):
        v = _need(obj, key, origin)
        if isinstance(v, str):
            path = (base / v) if base else Path(v)
            return load_module(path)
        return module_from_json(v, f"{origin}.{key}")

    src, tgt = side("source"), side("target")
    if src.family != tgt.family:
        raise ParseError(f"{origin}: source and target families differ")
    mat = parse_triples(src.field, obj.get("entries", []), tgt.dim, src.dim, f"{origin}.entries")
    f = ModuleHom(src, tgt, mat)
    problems = f.violations()
    if problems:
        raise ModuleError(f"{origin}: " + "; ".join(problems))
    return f


def load_map(path) -> ModuleHom:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    return map_from_json(_loads(text, str(path)), str(path), p.parent)


def map_to_json(f: ModuleHom) -> dict:
    return {
        "source": module_to_json(f.source),
        "target": module_to_json(f.target),
        "entries": format_triples(f.mat),
    }
