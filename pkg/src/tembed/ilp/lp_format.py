"""CPLEX LP text for 0-1 models: a writer and a strict binary-only parser.

The writer emits Maximize / Subject To / Bounds / Binary / End with
variable and row names exactly as the model defines them, wrapped to
classic line widths, so exports are bit-stable and consumable by external
LP-format solvers. The parser accepts the same dialect back (plus minor
whitespace/sign liberties) and rebuilds an IlpModel with variables ordered
by the Binary section, which makes write -> parse a faithful round trip.
"""

from __future__ import annotations

import re
from pathlib import Path

from .model import EQ, GE, LE, IlpModel

_WIDTH = 78


class LpFormatError(ValueError):
    pass


class UnsupportedLpError(LpFormatError):
    pass


def _terms(model: IlpModel, coeffs: dict[int, float]) -> list[str]:
    parts = []
    for j in sorted(coeffs):
        a = coeffs[j]
        if a == 0:
            continue
        mag = f"{abs(a):g} {model.var_names[j]}"
        if not parts:
            parts.append(mag if a > 0 else f"- {mag}")
        else:
            parts.append(f"+ {mag}" if a > 0 else f"- {mag}")
    return parts


def _wrap(head: str, parts: list[str], tail: str = "") -> list[str]:
    lines = []
    cur = head
    for p in parts:
        if len(cur) + 1 + len(p) > _WIDTH and cur.strip():
            lines.append(cur)
            cur = " " * 6 + p
        else:
            cur = f"{cur} {p}"
    if tail:
        cur = f"{cur} {tail}"
    lines.append(cur)
    return lines


_SENSE_TOKEN = {LE: "<=", GE: ">=", EQ: "="}


def export_lp(model: IlpModel) -> str:
    """Render the model as CPLEX LP text."""
    out = [f"\\ {model.name}", "Maximize"]
    obj_parts = _terms(model, model.objective)
    if not obj_parts and model.num_vars:
        obj_parts = [f"0 {model.var_names[0]}"]
    out.extend(_wrap(" obj:", obj_parts))
    out.append("Subject To")
    for row in model.rows:
        parts = _terms(model, row.coeffs)
        out.extend(_wrap(f" {row.name}:", parts, f"{_SENSE_TOKEN[row.sense]} {row.rhs:g}"))
    out.append("Bounds")
    for name in model.var_names:
        out.append(f" 0 <= {name} <= 1")
    out.append("Binary")
    if model.var_names:
        out.extend(_wrap("", list(model.var_names)))
    out.append("End")
    return "\n".join(out) + "\n"


def write_lp(model: IlpModel, path) -> None:
    Path(path).write_text(export_lp(model))


_TOKEN_RE = re.compile(
    r"[A-Za-z][A-Za-z0-9_.]*|[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?|<=|>=|[+\-:=<>]"
)

_SENSE_BY_TOKEN = {"<=": LE, "<": LE, ">=": GE, ">": GE, "=": EQ}


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("\\", 1)[0] for line in text.splitlines())


class _Tokens:
    def __init__(self, text: str):
        self.toks = _TOKEN_RE.findall(_strip_comments(text))
        self.pos = 0

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> str:
        t = self.peek()
        if t is None:
            raise LpFormatError("unexpected end of file")
        self.pos += 1
        return t


_SECTION_STARTS = {
    "maximize": "max",
    "max": "max",
    "minimize": "min",
    "min": "min",
    "subject": "st",
    "st": "st",
    "s.t.": "st",
    "such": "st",
    "bounds": "bounds",
    "bound": "bounds",
    "binary": "binary",
    "binaries": "binary",
    "bin": "binary",
    "general": "general",
    "generals": "general",
    "gen": "general",
    "integer": "general",
    "integers": "general",
    "semi-continuous": "general",
    "free": None,
    "end": "end",
}


def _section_of(tok: str | None) -> str | None:
    if tok is None:
        return "end"
    return _SECTION_STARTS.get(tok.lower())


def _is_number(tok: str) -> bool:
    return bool(tok) and (tok[0].isdigit() or tok[0] == ".")


def _parse_expr(ts: _Tokens) -> dict[str, float]:
    """Linear expression: [sign] [coef [*]] name, repeated. Stops before a
    sense token or a section keyword."""
    coeffs: dict[str, float] = {}
    while True:
        tok = ts.peek()
        if tok is None or tok in _SENSE_BY_TOKEN or tok == ":":
            return coeffs
        if _section_of(tok) in ("st", "bounds", "binary", "general", "end") and not _is_number(tok):
            nxt = ts.toks[ts.pos + 1] if ts.pos + 1 < len(ts.toks) else None
            if nxt != ":" or tok.lower() in ("bounds", "binary", "binaries", "bin", "end"):
                return coeffs
        sign = 1.0
        while ts.peek() in ("+", "-"):
            if ts.next() == "-":
                sign = -sign
        tok = ts.peek()
        if tok is None or tok in _SENSE_BY_TOKEN:
            if sign != 1.0:
                raise LpFormatError("dangling sign in expression")
            return coeffs
        coef = 1.0
        if _is_number(tok):
            coef = float(ts.next())
            if ts.peek() == "*":
                ts.next()
        tok = ts.peek()
        if tok is None or _is_number(tok) or tok in _SENSE_BY_TOKEN:
            # bare constant term in an expression is not part of this dialect
            raise LpFormatError(f"expected a variable name, got {tok!r}")
        name = ts.next()
        coeffs[name] = coeffs.get(name, 0.0) + sign * coef
    # unreachable


def _parse_rhs(ts: _Tokens) -> float:
    sign = 1.0
    while ts.peek() in ("+", "-"):
        if ts.next() == "-":
            sign = -sign
    tok = ts.next()
    if not _is_number(tok):
        raise LpFormatError(f"expected a number on the right-hand side, got {tok!r}")
    return sign * float(tok)


def _maybe_label(ts: _Tokens) -> str | None:
    tok = ts.peek()
    if tok is None:
        return None
    nxt = ts.toks[ts.pos + 1] if ts.pos + 1 < len(ts.toks) else None
    if nxt == ":" and not _is_number(tok):
        ts.next()
        ts.next()
        return tok
    return None


def parse_lp(text: str) -> IlpModel:
    """Parse LP text into an IlpModel. Binary-only: every variable must be
    listed in the Binary section; Minimize and General sections are
    rejected rather than silently reinterpreted."""
    ts = _Tokens(text)
    name = "parsed"
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("\\"):
            name = stripped[1:].strip() or name
            break
        if stripped:
            break

    if _section_of(ts.peek()) == "min":
        raise UnsupportedLpError("minimization objectives are not supported")
    if _section_of(ts.peek()) != "max":
        raise LpFormatError(f"expected Maximize, got {ts.peek()!r}")
    ts.next()

    _maybe_label(ts)
    obj = _parse_expr(ts)

    if _section_of(ts.peek()) != "st":
        raise LpFormatError(f"expected Subject To, got {ts.peek()!r}")
    if ts.next().lower() == "subject":
        if ts.peek() is None or ts.peek().lower() != "to":
            raise LpFormatError("expected 'To' after 'Subject'")
        ts.next()

    rows: list[tuple[str | None, dict[str, float], int, float]] = []
    while True:
        sec = _section_of(ts.peek())
        if sec in ("bounds", "binary", "general", "end"):
            break
        label = _maybe_label(ts)
        coeffs = _parse_expr(ts)
        tok = ts.next()
        if tok not in _SENSE_BY_TOKEN:
            raise LpFormatError(f"expected a constraint sense, got {tok!r}")
        rhs = _parse_rhs(ts)
        rows.append((label, coeffs, _SENSE_BY_TOKEN[tok], rhs))

    if _section_of(ts.peek()) == "bounds":
        ts.next()
        _skip_bounds(ts)

    if _section_of(ts.peek()) == "general":
        raise UnsupportedLpError("general integer variables are not supported")
    if _section_of(ts.peek()) != "binary":
        raise UnsupportedLpError("missing Binary section in a binary-only model")
    ts.next()

    order: list[str] = []
    while True:
        tok = ts.peek()
        if tok is None or _section_of(tok) == "end":
            break
        order.append(ts.next())

    model = IlpModel(name)
    for var_name in order:
        model.binary(var_name)

    def to_idx(coeffs: dict[str, float]) -> dict[int, float]:
        out = {}
        for var_name, a in coeffs.items():
            if a == 0:
                continue
            try:
                out[model.var(var_name)] = a
            except KeyError:
                raise UnsupportedLpError(f"variable {var_name!r} is not declared Binary")
        return out

    model.maximize(to_idx(obj))
    adders = {LE: model.add_le, GE: model.add_ge, EQ: model.add_eq}
    for label, coeffs, sense, rhs in rows:
        adders[sense](to_idx(coeffs), rhs, name=label)
    return model


def _skip_bounds(ts: _Tokens) -> None:
    """Bounds entries carry no information for a binary model; validate the
    obvious shapes and move on."""
    while True:
        tok = ts.peek()
        sec = _section_of(tok)
        if sec in ("binary", "general", "end") or tok is None:
            return
        tok = ts.next()
        if tok.lower() == "free":
            raise UnsupportedLpError("free variables are not supported")
        # consume the rest of one bound entry greedily: numbers, senses,
        # signs, and at most one name per entry boundary heuristic
        # (entries in this dialect are newline-free token runs like
        #  `0 <= x <= 1`, `x <= 1`, `x >= 0`, `x = 1`)
        if _is_number(tok):
            if ts.peek() in _SENSE_BY_TOKEN:
                ts.next()
            continue
        # tok was a variable name; optionally followed by sense + number
        if ts.peek() in _SENSE_BY_TOKEN:
            ts.next()
            nxt = ts.peek()
            if nxt in ("+", "-") or (nxt is not None and _is_number(nxt)):
                _parse_rhs(ts)


def read_lp(path) -> IlpModel:
    return parse_lp(Path(path).read_text())
