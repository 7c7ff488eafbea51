"""Vector notation for bracket tables.

A table is written as an n-tuple whose k-th slot lists the brackets
landing on X_k:  "(0,0,sqrt(22).12,6.13,...)" means [X_1,X_2] =
sqrt(22) X_3, [X_1,X_3] = 6 X_4 and so on.  Summands within a slot are
joined with +/- and ordered by (i, j).  The parser also accepts the
unicode radical and middle-dot spellings found in published tables.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .index_sets import Triple
from .jacobi import BracketTable
from .radicals import SignedSqrt


class NotationError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 0) -> None:
        super().__init__("line %d, column %d: %s" % (line, column, message))
        self.line = line
        self.column = column


def render_coefficient(c: SignedSqrt) -> str:
    """Exact textual form: the rational value when it exists, else sqrt(p/q)."""
    return str(c)


_COEF_RE = re.compile(
    r"""^
    (?:
        sqrt\(\s*(?P<num>\d+)\s*(?:/\s*(?P<den>\d+)\s*)?\)   # sqrt(p) or sqrt(p/q)
      | (?P<rnum>\d+)\s*(?:/\s*(?P<rden>\d+))?               # p or p/q
    )$""",
    re.VERBOSE,
)


def parse_coefficient(text: str) -> SignedSqrt:
    """Parse "sqrt(22)", "-sqrt(274/2223)", "6", "3/2", unicode radical included."""
    s = text.strip().replace("√", "sqrt").replace("−", "-")
    sign = 1
    while s[:1] in "+-":
        if s[0] == "-":
            sign = -sign
        s = s[1:].strip()
    # "sqrt45" / "sqrt 45" / "sqrt{45}" normalise to sqrt(45)
    m = re.match(r"^sqrt\s*[{(]?\s*([0-9]+(?:\s*/\s*[0-9]+)?)\s*[)}]?$", s)
    if m:
        rad = Fraction(m.group(1).replace(" ", ""))
        if rad == 0:
            return SignedSqrt.zero()
        return SignedSqrt(sign, rad)
    m = _COEF_RE.match(s.replace(" ", ""))
    if not m:
        raise ValueError("cannot parse coefficient %r" % text)
    if m.group("num"):
        rad = Fraction(int(m.group("num")), int(m.group("den") or 1))
        if rad == 0:
            return SignedSqrt.zero()
        return SignedSqrt(sign, rad)
    value = Fraction(int(m.group("rnum")), int(m.group("rden") or 1))
    return SignedSqrt.of_rational(sign * value)


def render_vector_notation(table: BracketTable) -> str:
    """Stable textual form: slot k lists "coef.ij" summands in (i, j) order."""
    slots = []
    for k in range(1, table.n + 1):
        summands = sorted(
            ((t.i, t.j, c) for t, c in table.coefficients.items() if t.k == k),
        )
        if not summands:
            slots.append("0")
            continue
        parts = []
        for i, j, c in summands:
            body = "%s.%d%d" % (render_coefficient(abs_coefficient(c)), i, j)
            if not parts:
                parts.append(body if c.sign >= 0 else "-" + body)
            else:
                parts.append(("+" if c.sign >= 0 else "-") + body)
        slots.append("".join(parts))
    return "(" + ",".join(slots) + ")"


def abs_coefficient(c: SignedSqrt) -> SignedSqrt:
    return c if c.sign >= 0 else -c


_SUMMAND_RE = re.compile(r"^(?P<coef>.+)[.·](?P<i>\d)(?P<j>\d)$")


def _parse_summand(text: str, n: int, line: int, col: int) -> tuple[Triple, SignedSqrt]:
    s = text.strip().replace("−", "-")
    sign = 1
    while s[:1] in "+-":
        if s[0] == "-":
            sign = -sign
        s = s[1:].strip()
    s = re.sub(r"\s+", "", s)
    m = _SUMMAND_RE.match(s)
    if not m:
        # tolerate a missing separator before the two index digits ("sqrt(2)27")
        m2 = re.match(r"^(?P<coef>.*[^\d])(?P<i>\d)(?P<j>\d)$", s)
        if not m2:
            raise NotationError("cannot parse summand %r" % text, line, col)
        m = m2
    i, j = int(m.group("i")), int(m.group("j"))
    if not (1 <= i < j and i + j <= n):
        raise NotationError(
            "indices %d%d do not form an ordered-type bracket for n=%d" % (i, j, n),
            line,
            col,
        )
    try:
        coef = parse_coefficient(m.group("coef"))
    except ValueError as exc:
        raise NotationError(str(exc), line, col) from exc
    if sign < 0:
        coef = -coef
    return Triple(i, j, i + j), coef


def parse_vector_notation(
    text: str, strict: bool = True, n: int | None = None
) -> BracketTable:
    """Parse a vector-notation table.

    In strict mode each summand must sit in the slot of its target index
    (k == i + j); in lenient mode the target is derived from (i, j)
    alone, which tolerates slot misprints in transcribed tables.  The
    dimension defaults to the slot count; pass n to override it when
    parsing lenient rows with a wrong slot count.
    """
    stripped = text.strip()
    if not stripped:
        raise NotationError("empty input")
    line = 1 + text[: text.find(stripped[0])].count("\n")
    if not (stripped.startswith("(") and stripped.endswith(")")):
        raise NotationError("expected a parenthesised tuple", line, 1)
    body = stripped[1:-1]
    slots = _split_top_level(body)
    if n is None:
        n = len(slots)
    elif strict and n != len(slots):
        raise NotationError(
            "expected %d slots, got %d" % (n, len(slots)), line, 1
        )
    if n < 3:
        raise NotationError("a table needs at least 3 slots, got %d" % n, line, 1)
    coeffs: dict[Triple, SignedSqrt] = {}
    col = 1
    for k, slot in enumerate(slots, start=1):
        slot_s = slot.strip()
        col += len(slot) + 1
        if slot_s in ("", "0"):
            continue
        for part in _split_summands(slot_s):
            if not part.strip() or part.strip() in "+-":
                continue
            triple, coef = _parse_summand(part, n, line, col)
            if coef.is_zero():
                continue
            if strict and triple.k != k:
                raise NotationError(
                    "summand %r sits in slot %d but targets X_%d"
                    % (part.strip(), k, triple.k),
                    line,
                    col,
                )
            if triple in coeffs:
                raise NotationError("duplicate bracket %s" % (triple,), line, col)
            coeffs[triple] = coef
    return BracketTable(n, coeffs)


def _split_top_level(body: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(0, depth - 1)
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _split_summands(slot: str) -> list[str]:
    """Split a slot on top-level +/- while keeping each summand's sign."""
    out, depth, cur = [], 0, []
    for ch in slot:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(0, depth - 1)
        if ch in "+-−" and depth == 0 and "".join(cur).strip():
            out.append("".join(cur))
            cur = [ch if ch != "−" else "-"]
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [p for p in out if p.strip()]
