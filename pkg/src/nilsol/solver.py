"""Resolving Jacobi constraints over the solution set of U v = [1].

The squared structure constants of a candidate algebra sweep an affine
set v0 + span(kernel).  Each two-term Jacobi equation forces the
squares of its two products to agree, which is a polynomial relation of
degree <= 2 in the kernel parameters; products sharing a factor reduce
to linear relations because every coordinate is a strictly positive
square.  Propagating those relations either pins the parameters down,
exposes a coordinate that is forced nonpositive (an exact refutation),
or leaves a nonlinear system that is attacked by rational root
isolation (kernel dimension <= 2) plus an exhaustive search over the
signs of the constants that occur in some equation.  Any soliton
verdict is backed by a certificate that is re-verified from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import root_gram
from .index_sets import IndexSet, Triple
from .jacobi import BracketTable, JacobiEquation, evaluate_equation, jacobi_bruteforce, jacobi_system
from .linalg import AffineSolutionSet, scale_primitive
from .radicals import SignedSqrt, radical_mul, squarefree_decompose
from .soliton import RicciData, _fm_feasible, is_ordered_type, soliton_data


# ---------------------------------------------------------------------------
# small exact polynomials in the kernel parameters
# ---------------------------------------------------------------------------


class Poly:
    """Multivariate polynomial over Q; monomials are sorted tuples of variable ids."""

    __slots__ = ("terms",)

    def __init__(self, terms=None) -> None:
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[tuple(sorted(mono))] = c
        self.terms = clean

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls({(): Fraction(c)})

    @classmethod
    def variable(cls, v: int) -> "Poly":
        return cls({(v,): Fraction(1)})

    def __add__(self, other: "Poly") -> "Poly":
        t = dict(self.terms)
        for mono, c in other.terms.items():
            t[mono] = t.get(mono, Fraction(0)) + c
        return Poly(t)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        t: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(sorted(m1 + m2))
                t[mono] = t.get(mono, Fraction(0)) + c1 * c2
        return Poly(t)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly({m: x * c for m, x in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def variables(self) -> set[int]:
        out: set[int] = set()
        for m in self.terms:
            out.update(m)
        return out

    def constant_value(self) -> Fraction | None:
        if self.degree() == 0:
            return self.terms.get((), Fraction(0))
        return None

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(sorted(mono)), Fraction(0))

    def substitute(self, var: int, replacement: "Poly") -> "Poly":
        out = Poly()
        for mono, c in self.terms.items():
            e = sum(1 for v in mono if v == var)
            rest = tuple(v for v in mono if v != var)
            piece = Poly({rest: c})
            for _ in range(e):
                piece = piece * replacement
            out = out + piece
        return out

    def evaluate(self, values: dict[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for mono, c in self.terms.items():
            prod = c
            for v in mono:
                prod *= values[v]
            total += prod
        return total

    def univariate_coefficients(self, var: int) -> tuple[Fraction, Fraction, Fraction]:
        """(a, b, c) with the poly equal to a*t^2 + b*t + c in the single variable var."""
        a = self.coefficient((var, var))
        b = self.coefficient((var,))
        c = self.coefficient(())
        return a, b, c

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (len(m), m)):
            c = self.terms[mono]
            if not mono:
                parts.append(str(c))
                continue
            names: list[str] = []
            seen: dict[int, int] = {}
            for v in mono:
                seen[v] = seen.get(v, 0) + 1
            for v in sorted(seen):
                names.append("t%d" % v if seen[v] == 1 else "t%d^%d" % (v, seen[v]))
            body = "*".join(names)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append("%s*%s" % (c, body))
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text


# ---------------------------------------------------------------------------
# parameterisation of the solution set
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParameterizedSquares:
    """Squared structure constants as affine polynomials in the kernel parameters."""

    params: tuple[str, ...]
    coord_polys: tuple[Poly, ...]


def parameterize(solution: AffineSolutionSet) -> ParameterizedSquares:
    """coord i  ->  v0[i] + sum_r t_r * kernel[r][i]."""
    d = solution.dimension
    polys = []
    for i, c0 in enumerate(solution.v0):
        terms = {(): c0}
        for r in range(d):
            kv = solution.kernel[r][i]
            if kv:
                terms[(r,)] = kv
        polys.append(Poly(terms))
    return ParameterizedSquares(
        params=tuple("t%d" % r for r in range(d)), coord_polys=tuple(polys)
    )


def derive_sign_square_relations(
    equations: list[JacobiEquation], squares: ParameterizedSquares, index_set: IndexSet
) -> list[Poly]:
    """Squared relations P1 - P2 of the two-term equations.

    Equations with more than two terms contribute nothing on this path.
    """
    pos = {t: r for r, t in enumerate(index_set.triples)}
    out = []
    for eq in equations:
        if len(eq.terms) != 2:
            continue
        t1, t2 = eq.terms
        p1 = squares.coord_polys[pos[t1.first]] * squares.coord_polys[pos[t1.second]]
        p2 = squares.coord_polys[pos[t2.first]] * squares.coord_polys[pos[t2.second]]
        out.append(p1 - p2)
    return out


# ---------------------------------------------------------------------------
# verdicts and certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    status: str  # "soliton" | "nonsoliton" | "candidate"
    certificate: BracketTable | None = None
    ricci: RicciData | None = None
    refutation: str | None = None
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    ricci: RicciData | None
    normalization: Fraction | None
    problems: tuple[str, ...]


def verify_certificate(table: BracketTable) -> CertificateCheck:
    """Full re-check of a concrete bracket table.

    Valid iff the table is nonabelian, satisfies the Jacobi identity
    under exact radical arithmetic, its squares solve U v = c [1] for a
    single positive constant c, and the resulting derivation is a
    positive multiple of (1, ..., n).
    """
    problems: list[str] = []
    if not table.coefficients:
        return CertificateCheck(False, None, None, ("table is abelian",))
    if not jacobi_bruteforce(table):
        for eq in jacobi_system(table.support()):
            value = evaluate_equation(eq, table)
            if not value.is_zero():
                problems.append(
                    "Jacobi equation %s evaluates to %s" % (eq.render(), value)
                )
        if not problems:
            problems.append("Jacobi identity fails")
    index_set = table.support()
    u = root_gram.gram(index_set)
    v = [table.coefficients[t].radicand for t in index_set.triples]
    constant: Fraction | None = None
    for a in range(len(u)):
        val = sum(u[a][b] * v[b] for b in range(len(u)))
        if constant is None:
            constant = val
        elif val != constant:
            problems.append(
                "U * squares is not a constant vector (rows differ: %s vs %s)"
                % (constant, val)
            )
            constant = None
            break
    if constant is not None and constant <= 0:
        problems.append("U * squares = %s [1] needs a positive constant" % constant)
    data = soliton_data(index_set, v)
    if data is None:
        problems.append("no single soliton constant fits every triple")
    elif not is_ordered_type(data.derivation):
        problems.append(
            "derivation %s is not a positive multiple of (1..n)"
            % (tuple(map(str, data.derivation)),)
        )
    return CertificateCheck(not problems, data, constant, tuple(problems))


# ---------------------------------------------------------------------------
# exact root utilities (rational and quadratic-surd roots)
# ---------------------------------------------------------------------------


def _fraction_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if x < 0:
        return None
    pn, pd = x.numerator, x.denominator
    rn, rd = isqrt(pn), isqrt(pd)
    if rn * rn == pn and rd * rd == pd:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class _SurdPoint:
    """The number u + w * sqrt(s), s squarefree > 1, w != 0."""

    u: Fraction
    w: Fraction
    s: int

    def approx(self) -> tuple[Fraction, Fraction]:
        """A rational enclosure accurate to 1e-6, computed with integers only."""
        scale = 10**6
        lo = isqrt(self.s * scale * scale)
        bounds = (
            self.u + self.w * Fraction(lo, scale),
            self.u + self.w * Fraction(lo + 1, scale),
        )
        return (min(bounds), max(bounds))

    def __str__(self) -> str:
        lo, hi = self.approx()
        return "%s %s %s*sqrt(%d) (in [%s, %s])" % (
            self.u,
            "+" if self.w >= 0 else "-",
            abs(self.w),
            self.s,
            lo,
            hi,
        )


def _surd_sign(x: Fraction, y: Fraction, s: int) -> int:
    """Sign of x + y*sqrt(s) for squarefree s >= 1."""
    if y == 0:
        return 0 if x == 0 else (1 if x > 0 else -1)
    if x == 0:
        return 1 if y > 0 else -1
    if x > 0 and y > 0:
        return 1
    if x < 0 and y < 0:
        return -1
    diff = x * x - y * y * s
    if diff == 0:
        return 0
    # x and y have opposite signs: the larger magnitude wins
    return (1 if x > 0 else -1) if diff > 0 else (1 if y > 0 else -1)


def _quadratic_roots(a: Fraction, b: Fraction, c: Fraction):
    """Real roots of a*t^2 + b*t + c (a != 0) split into rational and surd roots.

    Returns (rationals, surds, has_real_roots).
    """
    disc = b * b - 4 * a * c
    if disc < 0:
        return [], [], False
    if disc == 0:
        return [-b / (2 * a)], [], True
    root = _fraction_sqrt(disc)
    if root is not None:
        return [(-b + root) / (2 * a), (-b - root) / (2 * a)], [], True
    # sqrt(p/q) = (f/q) * sqrt(s) with s squarefree
    s, f = squarefree_decompose(disc.numerator * disc.denominator)
    w = Fraction(f, disc.denominator) / (2 * a)
    u = -b / (2 * a)
    return [], [_SurdPoint(u, w, s), _SurdPoint(u, -w, s)], True


def _eval_quadratic_at_surd(
    a: Fraction, b: Fraction, c: Fraction, pt: _SurdPoint
) -> bool:
    """Whether a*t^2 + b*t + c vanishes exactly at t = u + w*sqrt(s)."""
    rat = a * (pt.u * pt.u + pt.w * pt.w * pt.s) + b * pt.u + c
    irr = 2 * a * pt.u * pt.w + b * pt.w
    return rat == 0 and irr == 0


# ---------------------------------------------------------------------------
# the resolution pipeline
# ---------------------------------------------------------------------------


@dataclass
class _State:
    """Affine coordinates (one poly per triple) during propagation."""

    index_set: IndexSet
    coords: list[Poly]
    trace: list[str] = field(default_factory=list)

    def clone(self) -> "_State":
        return _State(self.index_set, list(self.coords), list(self.trace))

    def position(self, t: Triple) -> int:
        return self.index_set.triples.index(t)

    def active_vars(self) -> list[int]:
        out: set[int] = set()
        for p in self.coords:
            out.update(p.variables())
        return sorted(out)


class _Refuted(Exception):
    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


def _check_fixed_positive(state: _State) -> None:
    for idx, p in enumerate(state.coords):
        v = p.constant_value()
        if v is not None and v <= 0:
            raise _Refuted(
                "coordinate %d (triple %s) is forced to %s <= 0"
                % (idx + 1, state.index_set.triples[idx], v)
            )


def _relations(state: _State, equations) -> tuple[list[tuple[JacobiEquation, Poly]], Poly | None, str]:
    """Current squared relations; also the first linear relation found.

    Returns (quadratics, linear_poly_or_None, linear_source_text).
    """
    quads: list[tuple[JacobiEquation, Poly]] = []
    for eq in equations:
        if len(eq.terms) == 1:
            t = eq.terms[0]
            raise _Refuted(
                "equation %s has a single term: the product of two nonzero "
                "constants cannot vanish" % eq.render()
            )
        if len(eq.terms) != 2:
            continue
        t1, t2 = eq.terms
        pair1 = frozenset((t1.first, t1.second))
        pair2 = frozenset((t2.first, t2.second))
        if pair1 == pair2:
            if t1.coefficient + t2.coefficient == 0:
                continue
            raise _Refuted(
                "equation %s forces the square of a nonzero product to vanish"
                % eq.render()
            )
        shared = pair1 & pair2
        if len(shared) == 1:
            s = next(iter(shared))
            a = next(iter(pair1 - shared))
            b = next(iter(pair2 - shared))
            rel = state.coords[state.position(a)] - state.coords[state.position(b)]
            src = (
                "equation %s shares the factor a(%s); since its square is "
                "positive, squares of a(%s) and a(%s) must agree" % (eq.render(), s, a, b)
            )
        else:
            rel = (
                state.coords[state.position(t1.first)]
                * state.coords[state.position(t1.second)]
                - state.coords[state.position(t2.first)]
                * state.coords[state.position(t2.second)]
            )
            src = "squared relation of equation %s" % eq.render()
        if rel.is_zero():
            continue
        if rel.degree() == 0:
            raise _Refuted(
                "%s reduces to the impossible constant relation %s = 0"
                % (src, rel)
            )
        if rel.degree() == 1:
            return quads, rel, src
        quads.append((eq, rel))
    return quads, None, ""


def _apply_linear(state: _State, rel: Poly, src: str) -> None:
    """Eliminate one parameter using the affine relation rel = 0."""
    var = max(rel.variables())
    coef = rel.coefficient((var,))
    rest = rel - Poly({(var,): coef})
    replacement = rest.scale(Fraction(-1) / coef)
    state.trace.append("%s: t%d = %s" % (src, var, replacement))
    state.coords = [p.substitute(var, replacement) for p in state.coords]


def _propagate(state: _State, equations) -> list[tuple[JacobiEquation, Poly]]:
    """Run linear propagation to a fixpoint; returns surviving quadratics."""
    while True:
        _check_fixed_positive(state)
        quads, linear, src = _relations(state, equations)
        if linear is None:
            return quads
        _apply_linear(state, linear, src)


def _sign_search(
    index_set: IndexSet, squares: dict[Triple, Fraction], equations
) -> dict[Triple, int] | None:
    """Find signs making every Jacobi equation vanish; None if impossible.

    Only constants that occur in some equation are searched; the rest
    are gauge freedom and stay +1.  Depth-first with per-equation
    pruning, deterministic order.  Each term's radical product is
    precomputed once: sqrt(v_a)*sqrt(v_b) = c*sqrt(s), so an equation
    vanishes iff the signed rational coefficients cancel per key s.
    """
    involved: list[Triple] = []
    for t in index_set.triples:
        if any(t in (term.first, term.second) for eq in equations for term in eq.terms):
            involved.append(t)
    order = {t: i for i, t in enumerate(involved)}

    # per equation: list of (signed rational coeff, key s, pos_a, pos_b)
    compiled = []
    for eq in equations:
        terms = []
        last = 0
        for term in eq.terms:
            prod = radical_mul(
                SignedSqrt(1, squares[term.first]), SignedSqrt(1, squares[term.second])
            )
            ((s, c),) = prod.terms.items()
            terms.append((c * term.coefficient, s, order[term.first], order[term.second]))
            last = max(last, order[term.first], order[term.second])
        compiled.append((last, terms))

    checkpoint: dict[int, list] = {}
    for last, terms in compiled:
        checkpoint.setdefault(last, []).append(terms)

    def eq_zero(terms, signs_list) -> bool:
        acc: dict[int, Fraction] = {}
        for c, s, a, b in terms:
            acc[s] = acc.get(s, Fraction(0)) + c * signs_list[a] * signs_list[b]
        return all(v == 0 for v in acc.values())

    signs_list = [1] * len(involved)

    def dfs(depth: int) -> bool:
        if depth == len(involved):
            return True
        for sign in (1, -1):
            signs_list[depth] = sign
            if all(eq_zero(t, signs_list) for t in checkpoint.get(depth, ())) and dfs(
                depth + 1
            ):
                return True
        signs_list[depth] = 1
        return False

    if not dfs(0):
        return None
    signs: dict[Triple, int] = {t: 1 for t in index_set.triples}
    for i, t in enumerate(involved):
        signs[t] = signs_list[i]
    return signs


def _certificate_from_point(
    index_set: IndexSet, values: list[Fraction], equations, notes: list[str]
) -> Verdict | None:
    """Try to turn strictly positive squares into a verified certificate."""
    squares = dict(zip(index_set.triples, values))
    signs = _sign_search(index_set, squares, equations)
    if signs is None:
        notes.append("no sign assignment satisfies the Jacobi system at this point")
        return None
    primitive = scale_primitive(values)
    table = BracketTable(
        index_set.n,
        {
            t: SignedSqrt(signs[t], Fraction(primitive[i]))
            for i, t in enumerate(index_set.triples)
        },
    )
    check = verify_certificate(table)
    if not check.ok:
        notes.append("candidate certificate failed verification: %s" % (check.problems,))
        return None
    return Verdict(
        status="soliton",
        certificate=table,
        ricci=check.ricci,
        notes=tuple(notes),
    )


def _endgame(state: _State, equations, quads, notes: list[str]) -> Verdict:
    active = state.active_vars()
    d = len(active)
    if d == 0:
        _check_fixed_positive(state)  # raises if any coordinate <= 0
        values = [p.constant_value() for p in state.coords]
        verdict = _certificate_from_point(state.index_set, values, equations, notes)
        if verdict is not None:
            return verdict
        return Verdict(status="candidate", notes=tuple(notes))
    if d > 2:
        notes.append("nonlinear system left unresolved at kernel dimension %d" % d)
        return Verdict(status="candidate", notes=tuple(notes))
    if not quads:
        # no polynomial constraints remain: any positive point will do,
        # but multi-term equations may still require sign cancellation.
        point = _positive_point(state, active)
        if point is None:
            raise _Refuted(
                "the solution set does not meet the open positive orthant"
            )
        values = [p.evaluate(point) for p in state.coords]
        verdict = _certificate_from_point(state.index_set, values, equations, notes)
        if verdict is not None:
            return verdict
        notes.append("free positive point admits no signed solution")
        return Verdict(status="candidate", notes=tuple(notes))
    if d == 1:
        return _endgame_univariate(state, equations, quads, active[0], notes)
    return _endgame_bivariate(state, equations, quads, active, notes)


def _positive_point(state: _State, active: list[int]):
    ineqs = []
    for p in state.coords:
        ineqs.append(
            (p.coefficient(()),) + tuple(p.coefficient((v,)) for v in active)
        )
    point = _fm_feasible(ineqs, len(active))
    if point is None:
        return None
    return {v: point[i] for i, v in enumerate(active)}


def _endgame_univariate(
    state: _State, equations, quads, var: int, notes: list[str]
) -> Verdict:
    first_eq, first = quads[0]
    a, b, c = first.univariate_coefficients(var)
    rationals, surds, has_real = _quadratic_roots(a, b, c)
    if not has_real:
        raise _Refuted(
            "squared relation of %s has no real solution (discriminant < 0)"
            % first_eq.render()
        )

    def passes_rest(value: Fraction) -> bool:
        return all(rel.evaluate({var: value}) == 0 for _, rel in quads[1:])

    def positive_at(value: Fraction) -> bool:
        return all(p.evaluate({var: value}) > 0 for p in state.coords)

    candidates = sorted(
        {r for r in rationals if passes_rest(r) and positive_at(r)}
    )
    for r in candidates:
        values = [p.evaluate({var: r}) for p in state.coords]
        verdict = _certificate_from_point(state.index_set, values, equations, notes)
        if verdict is not None:
            return verdict
    # surviving irrational branches can be excluded exactly but not certified
    open_surds = []
    for pt in surds:
        ok = all(
            _eval_quadratic_at_surd(*rel.univariate_coefficients(var), pt)
            for _, rel in quads[1:]
        )
        if ok:
            ok = all(
                _surd_sign(
                    p.coefficient(()) + p.coefficient((var,)) * pt.u,
                    p.coefficient((var,)) * pt.w,
                    pt.s,
                )
                > 0
                for p in state.coords
            )
        if ok:
            open_surds.append(pt)
    if open_surds:
        for pt in open_surds:
            notes.append("irrational branch retained: t%d = %s" % (var, pt))
        return Verdict(status="candidate", notes=tuple(notes))
    if candidates:
        return Verdict(status="candidate", notes=tuple(notes))
    raise _Refuted(
        "no solution of the squared relations meets the positive orthant "
        "(first relation %s)" % first
    )


def _endgame_bivariate(
    state: _State, equations, quads, active: list[int], notes: list[str]
) -> Verdict:
    univar = None
    for eq, rel in quads:
        vs = rel.variables()
        if len(vs) == 1:
            univar = (eq, rel, next(iter(vs)))
            break
    if univar is None:
        notes.append("nonlinear system left unresolved at kernel dimension 2")
        return Verdict(status="candidate", notes=tuple(notes))
    eq, rel, var = univar
    a, b, c = rel.univariate_coefficients(var)
    if a == 0:
        # degree-1 relations were consumed by propagation
        raise _Refuted("internal: linear relation reached the bivariate endgame")
    rationals, surds, has_real = _quadratic_roots(a, b, c)
    if not has_real:
        raise _Refuted(
            "squared relation of %s has no real solution (discriminant < 0)"
            % eq.render()
        )
    irrational_open = bool(surds)
    child_notes: list[str] = []
    refuted_all = True
    for r in sorted(set(rationals)):
        branch = state.clone()
        branch.trace.append(
            "branching on rational root t%d = %s of %s" % (var, r, rel)
        )
        branch.coords = [p.substitute(var, Poly.constant(r)) for p in branch.coords]
        try:
            bq = _propagate(branch, equations)
            verdict = _endgame(branch, equations, bq, child_notes)
        except _Refuted:
            continue
        if verdict.status == "soliton":
            return verdict
        refuted_all = False
    if irrational_open:
        notes.append(
            "irrational branches of %s retained at kernel dimension 2" % rel
        )
        return Verdict(status="candidate", notes=tuple(notes + child_notes))
    if refuted_all:
        raise _Refuted(
            "every root of %s (from %s) is exactly refuted" % (rel, eq.render())
        )
    return Verdict(status="candidate", notes=tuple(notes + child_notes))


def resolve(
    index_set: IndexSet, solution: AffineSolutionSet, equations
) -> Verdict:
    """Classify one index set given its solution set and Jacobi system.

    Outcomes: a verified soliton certificate, an exact refutation, or an
    unresolved candidate.  Soliton verdicts are always re-verified via
    verify_certificate before being returned.
    """
    squares = parameterize(solution)
    state = _State(index_set=index_set, coords=list(squares.coord_polys))
    notes: list[str] = []
    try:
        quads = _propagate(state, equations)
        return _endgame(state, equations, quads, notes)
    except _Refuted as exc:
        trace = list(state.trace)
        trace.append(exc.reason)
        return Verdict(
            status="nonsoliton",
            refutation="\n".join(trace),
            notes=tuple(notes),
        )
