"""Jacobi identity constraints for ordered-type bracket tables.

For eigenvalue type 1 < 2 < ... < n every bracket lands on X_{i+j}, so
the cyclic Jacobi sum for a generator set {a, b, c} (a < b < c) can only
contribute to the single target m = a + b + c, through at most three
chained products:

    [[X_a,X_b],X_c] + [[X_b,X_c],X_a] + [[X_c,X_a],X_b] = 0

With all structure constants normalised to first index < second index
(skew-symmetry folds into the term coefficient) this becomes

    s1 * a(a,b,a+b)*a(min(a+b,c),max(a+b,c),m)
       - a(b,c,b+c)*a(a,b+c,m)
       + a(a,c,a+c)*a(b,a+c,m)  = 0

where s1 is +1 if a+b < c, -1 if a+b > c, and the first product is
absent when a+b == c.  A term is present only when both of its triples
lie in the index set; a bracket table is a Lie algebra exactly when
every generated equation evaluates to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .index_sets import IndexSet, Triple
from .radicals import RadicalSum, SignedSqrt, radical_mul


@dataclass(frozen=True)
class JacobiTerm:
    """One product coefficient * a(first) * a(second) in an equation."""

    coefficient: int  # +1 or -1
    first: Triple
    second: Triple

    def __str__(self) -> str:
        sign = "-" if self.coefficient < 0 else "+"
        return "%s a(%s)*a(%s)" % (sign, self.first, self.second)


@dataclass(frozen=True)
class JacobiEquation:
    """The cyclic Jacobi constraint of one generator set, restricted to an index set."""

    target: int
    generators: tuple[int, int, int]
    terms: tuple[JacobiTerm, ...]

    def render(self) -> str:
        parts = []
        for t in self.terms:
            body = "a(%s)*a(%s)" % (t.first, t.second)
            if not parts:
                parts.append(body if t.coefficient > 0 else "-" + body)
            else:
                parts.append(("+ " if t.coefficient > 0 else "- ") + body)
        return " ".join(parts) + " = 0"

    def __str__(self) -> str:
        return self.render()


class BracketTable:
    """An ordered-type bracket table: coefficients [X_i, X_j] = a * X_{i+j}.

    Coefficients are SignedSqrt values keyed by Triple; a zero
    coefficient means the bracket is absent.
    """

    def __init__(self, n: int, coefficients: dict[Triple, SignedSqrt]) -> None:
        self.n = n
        clean: dict[Triple, SignedSqrt] = {}
        for t, c in coefficients.items():
            t = Triple(*t)
            if not (1 <= t.i < t.j and t.k == t.i + t.j and t.k <= n):
                raise ValueError("triple %s is not ordered-type for n=%d" % (t, n))
            if not c.is_zero():
                clean[t] = c
        self.coefficients = clean

    def support(self) -> IndexSet:
        return IndexSet.from_triples(self.coefficients.keys(), self.n)

    def coefficient(self, t: Triple) -> SignedSqrt:
        return self.coefficients.get(Triple(*t), SignedSqrt.zero())

    def squares(self) -> dict[Triple, Fraction]:
        return {t: c.radicand for t, c in self.coefficients.items()}

    def bracket(self, x: int, y: int) -> tuple[int, SignedSqrt] | None:
        """[X_x, X_y] as (target index, coefficient); None when zero."""
        if x == y:
            return None
        i, j = (x, y) if x < y else (y, x)
        if i + j > self.n:
            return None
        c = self.coefficients.get(Triple(i, j, i + j))
        if c is None:
            return None
        return (i + j, c if x < y else -c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BracketTable):
            return NotImplemented
        return self.n == other.n and self.coefficients == other.coefficients

    def __repr__(self) -> str:
        return "BracketTable(n=%d, %d brackets)" % (self.n, len(self.coefficients))


def jacobi_system(index_set: IndexSet) -> list[JacobiEquation]:
    """All Jacobi constraints an ordered-type table on this index set must satisfy.

    One equation per unordered generator set {a, b, c} that chains at
    least one product inside the index set.  Equations are normalised so
    the first present term has coefficient +1.
    """
    n = index_set.n
    members = set(index_set.triples)
    equations = []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            for c in range(b + 1, n + 1):
                m = a + b + c
                if m > n:
                    continue
                terms = []
                # [[X_a,X_b],X_c]
                s1 = a + b
                if s1 != c:
                    t_ab = Triple(a, b, s1)
                    t_sc = Triple(min(s1, c), max(s1, c), m)
                    if t_ab in members and t_sc in members:
                        terms.append(JacobiTerm(1 if s1 < c else -1, t_ab, t_sc))
                # [[X_b,X_c],X_a]  (b+c > a always)
                t_bc = Triple(b, c, b + c)
                t_sa = Triple(a, b + c, m)
                if t_bc in members and t_sa in members:
                    terms.append(JacobiTerm(-1, t_bc, t_sa))
                # [[X_c,X_a],X_b]  (a+c > b always)
                t_ac = Triple(a, c, a + c)
                t_sb = Triple(b, a + c, m)
                if t_ac in members and t_sb in members:
                    terms.append(JacobiTerm(1, t_ac, t_sb))
                if not terms:
                    continue
                if terms[0].coefficient < 0:
                    terms = [
                        JacobiTerm(-t.coefficient, t.first, t.second) for t in terms
                    ]
                equations.append(
                    JacobiEquation(target=m, generators=(a, b, c), terms=tuple(terms))
                )
    return equations


def aggregated_system(index_set: IndexSet) -> list[JacobiEquation]:
    """Jacobi constraints merged by target index.

    The sum over all generator sets with the same m is still a
    necessary condition (it is a sum of equations that each vanish),
    but it is strictly weaker than the per-generator system: products
    from different generators may cancel.  This is the granularity used
    by the published specialised equations for n <= 9, and therefore by
    the default classification pipeline; distinct generators never
    produce the same factor pair, so terms concatenate without merging.
    """
    by_target: dict[int, list[JacobiTerm]] = {}
    for eq in jacobi_system(index_set):
        by_target.setdefault(eq.target, []).extend(eq.terms)
    out = []
    for m in sorted(by_target):
        terms = by_target[m]
        if terms[0].coefficient < 0:
            terms = [JacobiTerm(-t.coefficient, t.first, t.second) for t in terms]
        out.append(
            JacobiEquation(target=m, generators=(0, 0, m), terms=tuple(terms))
        )
    return out


def evaluate_equation(eq: JacobiEquation, table: BracketTable) -> RadicalSum:
    """Exact value of one equation's left-hand side on a concrete table."""
    total = RadicalSum.zero()
    for t in eq.terms:
        prod = radical_mul(table.coefficient(t.first), table.coefficient(t.second))
        total = total + (prod if t.coefficient > 0 else -prod)
    return total


def jacobi_bruteforce(table: BracketTable) -> bool:
    """Direct evaluation of the classical cyclic identity for all i < j < k.

    Deliberately independent of jacobi_system: brackets are composed
    one by one and accumulated per target basis index.
    """
    n = table.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                acc: dict[int, RadicalSum] = {}
                for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = table.bracket(x, y)
                    if inner is None:
                        continue
                    s, c1 = inner
                    outer = table.bracket(s, z)
                    if outer is None:
                        continue
                    m, c2 = outer
                    acc[m] = acc.get(m, RadicalSum.zero()) + radical_mul(c1, c2)
                for value in acc.values():
                    if not value.is_zero():
                        return False
    return True


def jacobi_check_via_system(table: BracketTable) -> bool:
    """Evaluate the generated constraint system; True iff every equation vanishes."""
    for eq in jacobi_system(table.support()):
        if not evaluate_equation(eq, table).is_zero():
            return False
    return True
