"""Admissible bracket positions and index sets for ordered-type derivations.

For a derivation with eigenvalues 1 < 2 < ... < n every nonzero bracket
has the form [X_i, X_j] = a * X_{i+j}, so the admissible positions are
the triples (i, j, i+j) with i < j and i+j <= n.  A subset of them is
encoded as a bitmask over the dictionary-ordered triple list.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple


class Triple(NamedTuple):
    i: int
    j: int
    k: int

    def __str__(self) -> str:
        return "%d,%d,%d" % self


@functools.lru_cache(maxsize=None)
def _theta(n: int) -> tuple[Triple, ...]:
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n - i + 1):
            out.append(Triple(i, j, i + j))
    return tuple(out)


def theta(n: int) -> list[Triple]:
    """All (i, j, i+j) with i < j and i+j <= n, in dictionary order.

    Empty for n < 3 (no admissible pair exists).
    """
    return list(_theta(n))


@dataclass(frozen=True)
class IndexSet:
    """A subset of theta(n): dimension, sorted triples, and the bitmask.

    Bit r of the mask corresponds to theta(n)[r], least significant bit
    first; the triple list is always in dictionary order.
    """

    n: int
    triples: tuple[Triple, ...]
    mask: int

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "IndexSet":
        full = _theta(n)
        if mask < 0 or mask >= 1 << len(full):
            raise ValueError("mask %d out of range for n=%d" % (mask, n))
        chosen = tuple(t for r, t in enumerate(full) if mask >> r & 1)
        return cls(n=n, triples=chosen, mask=mask)

    @classmethod
    def from_triples(cls, triples, n: int) -> "IndexSet":
        full = _theta(n)
        pos = {t: r for r, t in enumerate(full)}
        mask = 0
        for t in triples:
            t = Triple(*t)
            if t not in pos:
                raise ValueError(
                    "(%d,%d,%d) is not an admissible triple for n=%d" % (*t, n)
                )
            mask |= 1 << pos[t]
        return cls.from_mask(mask, n)

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    def __contains__(self, t) -> bool:
        return Triple(*t) in set(self.triples)

    def to_string(self) -> str:
        return ";".join(str(t) for t in self.triples)

    def __str__(self) -> str:
        return self.to_string()


def decode(mask: int, n: int) -> IndexSet:
    """Index set whose triples are exactly the theta(n) positions set in mask."""
    return IndexSet.from_mask(mask, n)


def encode(index_set: IndexSet) -> int:
    return index_set.mask


def parse_index_set(text: str, n: int) -> IndexSet:
    """Parse either a decimal mask or a semicolon-separated triple list.

    Accepted forms: "11" (mask) and "1,2,3;1,3,4".
    """
    text = text.strip()
    if not text:
        return IndexSet.from_mask(0, n)
    if text.isdigit():
        return IndexSet.from_mask(int(text), n)
    triples = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        nums = [int(x) for x in part.split(",")]
        if len(nums) != 3:
            raise ValueError("bad triple %r (expected i,j,k)" % part)
        triples.append(Triple(*nums))
    return IndexSet.from_triples(triples, n)


def direct_sum_reason(index_set: IndexSet) -> str | None:
    """Why the bracket table splits off a direct factor, or None if it doesn't.

    Either (a) some basis index in 1..n appears in no triple (an abelian
    factor), or (b) the touched indices fall into two nonempty groups
    with no triple meeting both (a direct sum of proper ideals).
    Connectivity is taken on the hypergraph whose hyperedges are the
    triples.
    """
    n = index_set.n
    if not index_set.triples:
        return "empty index set (abelian algebra)"
    used: set[int] = set()
    for t in index_set.triples:
        used.update(t)
    if len(used) < n:
        missing = sorted(set(range(1, n + 1)) - used)
        return "abelian factor: indices %s appear in no bracket" % (
            ",".join(map(str, missing)),
        )
    # BFS over triples through shared indices.
    reached = set(index_set.triples[0])
    pending = list(index_set.triples[1:])
    changed = True
    while changed and pending:
        changed = False
        rest = []
        for t in pending:
            if reached & set(t):
                reached.update(t)
                changed = True
            else:
                rest.append(t)
        pending = rest
    if pending:
        return "direct sum: indices %s are not connected to the rest" % (
            ",".join(map(str, sorted(reached))),
        )
    return None


def has_direct_sum_factor(index_set: IndexSet) -> bool:
    """True iff the bracket table splits off a direct factor."""
    return direct_sum_reason(index_set) is not None
