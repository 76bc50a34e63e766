"""T-norm tables on a finite lattice: axioms, order, idempotents, continuity.

A t-norm is a commutative, associative, monotone binary operation with the
top element as neutral element. Tables are plain index grids over one
lattice; every predicate returns a verdict carrying a minimal witness so a
failed theorem check reads as a concrete counterexample.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .errors import LatticeMismatch, NotClosed, TopMissing, UnknownLabel
from .lattice import ElementSet, FiniteLattice, induced_sublattice


@dataclass(frozen=True)
class Verdict:
    """Outcome of a table check; ``witness`` names the first violation found."""

    ok: bool
    axiom: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return f"violates {self.axiom} at {self.witness}"


OK = Verdict(True)


class TNormTable:
    """A total binary operation table over one lattice's elements.

    ``verdict`` caches the verification result; None means unchecked.
    """

    __slots__ = ("lattice", "table", "verdict")

    def __init__(self, lattice: FiniteLattice, table, verdict: Verdict | None = None):
        n = lattice.n
        rows = tuple(tuple(row) for row in table)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ValueError(f"table must be {n}x{n}")
        for row in rows:
            for v in row:
                if not 0 <= v < n:
                    raise ValueError(f"table entry {v} is not an element id")
        self.lattice = lattice
        self.table = rows
        self.verdict = verdict

    def value(self, x: int, y: int) -> int:
        return self.table[x][y]

    def by_names(self, xname: str, yname: str) -> str:
        lat = self.lattice
        return lat.name(self.table[lat.index(xname)][lat.index(yname)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TNormTable):
            return NotImplemented
        same = self.lattice is other.lattice or self.lattice == other.lattice
        return same and self.table == other.table

    def __hash__(self) -> int:
        return hash((self.lattice.names, self.table))

    def __repr__(self) -> str:
        return f"TNormTable(on {self.lattice.n} elements)"


def verify_tnorm(t: TNormTable) -> Verdict:
    """Check the four t-norm axioms, returning the first violation found.

    Monotonicity is only checked across cover pairs; transitivity of the
    order carries it to all comparable pairs (cross-checked in the tests
    against the all-pairs formulation).
    """
    if t.verdict is not None:
        return t.verdict
    lat = t.lattice
    tbl = t.table
    n = lat.n
    top = lat.top
    verdict = OK
    for x in range(n):
        if tbl[x][top] != x:
            verdict = Verdict(False, "neutral", (lat.name(x), lat.name(top)))
            break
        if tbl[top][x] != x:
            verdict = Verdict(False, "neutral", (lat.name(top), lat.name(x)))
            break
    if verdict.ok:
        for x in range(n):
            row = tbl[x]
            for y in range(x + 1, n):
                if row[y] != tbl[y][x]:
                    verdict = Verdict(False, "commutativity", (lat.name(x), lat.name(y)))
                    break
            if not verdict.ok:
                break
    if verdict.ok:
        for lo, hi in lat.covers:
            for x in range(n):
                if not lat.leq(tbl[x][lo], tbl[x][hi]):
                    verdict = Verdict(False, "monotonicity", (lat.name(x), lat.name(lo), lat.name(hi)))
                    break
            if not verdict.ok:
                break
    if verdict.ok:
        for x in range(n):
            for y in range(n):
                xy = tbl[x][y]
                for z in range(n):
                    if tbl[xy][z] != tbl[x][tbl[y][z]]:
                        verdict = Verdict(False, "associativity", (lat.name(x), lat.name(y), lat.name(z)))
                        break
                if not verdict.ok:
                    break
            if not verdict.ok:
                break
    t.verdict = verdict
    return verdict


def t_min(lat: FiniteLattice) -> TNormTable:
    """The strongest t-norm: pointwise meet."""
    return TNormTable(lat, lat.meet_table)


def t_drastic(lat: FiniteLattice) -> TNormTable:
    """The weakest t-norm: meet when top is an argument, bottom otherwise."""
    top, bot = lat.top, lat.bottom
    n = lat.n
    tbl = [[bot] * n for _ in range(n)]
    for x in range(n):
        tbl[x][top] = x
        tbl[top][x] = x
    return TNormTable(lat, tbl)


def tnorm_le(t1: TNormTable, t2: TNormTable) -> bool:
    """Pointwise order between two tables on the same lattice."""
    if t1.lattice is not t2.lattice:
        raise LatticeMismatch("tables live on different lattices")
    lat = t1.lattice
    n = lat.n
    return all(lat.leq(t1.table[x][y], t2.table[x][y]) for x in range(n) for y in range(n))


def idempotents(t: TNormTable) -> ElementSet:
    """Elements fixed on the diagonal."""
    mask = 0
    for x in range(t.lattice.n):
        if t.table[x][x] == x:
            mask |= 1 << x
    return ElementSet(t.lattice, mask)


def is_left_continuous(t: TNormTable) -> Verdict:
    """Join preservation in each argument over arbitrary finite families.

    The binary form suffices: general families follow by induction, and
    the empty family reduces to T(a, 0) = 0, which is checked directly.
    """
    lat = t.lattice
    tbl = t.table
    n = lat.n
    bot = lat.bottom
    for a in range(n):
        if tbl[a][bot] != bot:
            return Verdict(False, "left-continuity(empty)", (lat.name(a), lat.name(bot)))
    join = lat.join_table
    for a in range(n):
        row = tbl[a]
        for x in range(n):
            rx = row[x]
            for y in range(x, n):
                if row[join[x][y]] != join[rx][row[y]]:
                    return Verdict(False, "left-continuity", (lat.name(a), lat.name(x), lat.name(y)))
    return OK


def is_right_continuous(t: TNormTable) -> Verdict:
    """Meet preservation in each argument; the empty family is the neutral axiom."""
    lat = t.lattice
    tbl = t.table
    n = lat.n
    top = lat.top
    for a in range(n):
        if tbl[a][top] != a:
            return Verdict(False, "right-continuity(empty)", (lat.name(a), lat.name(top)))
    meet = lat.meet_table
    for a in range(n):
        row = tbl[a]
        for x in range(n):
            rx = row[x]
            for y in range(x, n):
                if row[meet[x][y]] != meet[rx][row[y]]:
                    return Verdict(False, "right-continuity", (lat.name(a), lat.name(x), lat.name(y)))
    return OK


def is_continuous(t: TNormTable) -> Verdict:
    left = is_left_continuous(t)
    if not left.ok:
        return left
    return is_right_continuous(t)


def is_left_semicontinuous(t: TNormTable) -> Verdict:
    """Join preservation restricted to families whose join stays below top.

    Binary reduction is sound here because every partial join of such a
    family also stays below top.
    """
    lat = t.lattice
    tbl = t.table
    n = lat.n
    bot, top = lat.bottom, lat.top
    for a in range(n):
        if tbl[a][bot] != bot:
            return Verdict(False, "left-semicontinuity(empty)", (lat.name(a), lat.name(bot)))
    join = lat.join_table
    for a in range(n):
        row = tbl[a]
        for x in range(n):
            rx = row[x]
            for y in range(x, n):
                j = join[x][y]
                if j != top and row[j] != join[rx][row[y]]:
                    return Verdict(False, "left-semicontinuity", (lat.name(a), lat.name(x), lat.name(y)))
    return OK


def restrict(t: TNormTable, members: ElementSet) -> TNormTable:
    """Restrict the table to a sub-poset containing the top element.

    Requires the member set to be closed under the table; the result is a
    table over the induced sublattice (elements keep their names and
    relative order). A closed restriction of a t-norm is again a t-norm.
    """
    lat = t.lattice
    if members.lattice is not lat:
        raise LatticeMismatch("restriction set belongs to a different lattice")
    if lat.top not in members:
        raise TopMissing("restriction set must contain the top element")
    ids = list(members)
    for x in ids:
        for y in ids:
            v = t.table[x][y]
            if v not in members:
                raise NotClosed(lat.name(x), lat.name(y), lat.name(v))
    sub = induced_sublattice(lat, members)
    pos = {e: i for i, e in enumerate(ids)}
    table = [[pos[t.table[x][y]] for y in ids] for x in ids]
    return TNormTable(sub, table)


def table_to_csv(t: TNormTable) -> str:
    """Cayley table as CSV: header row/column of element names in file order."""
    lat = t.lattice
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(lat.names))
    for x in range(lat.n):
        writer.writerow([lat.names[x]] + [lat.names[v] for v in t.table[x]])
    return buf.getvalue()


def table_from_csv(lat: FiniteLattice, text: str) -> TNormTable:
    """Parse a Cayley-table CSV against a known lattice.

    The header may list the elements in any order, but must cover exactly
    the lattice's elements; row labels must match the header.
    """
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    if not rows:
        raise ValueError("empty table")
    header = rows[0][1:]
    if sorted(header) != sorted(lat.names):
        raise UnknownLabel(f"header {header!r} does not match the lattice elements")
    if len(rows) != lat.n + 1:
        raise ValueError(f"expected {lat.n} data rows, found {len(rows) - 1}")
    n = lat.n
    table = [[0] * n for _ in range(n)]
    seen = set()
    for row in rows[1:]:
        if len(row) != n + 1:
            raise ValueError(f"malformed row {row!r}")
        x = lat.index(row[0])
        if x in seen:
            raise ValueError(f"row {row[0]!r} appears twice")
        seen.add(x)
        for col, cell in zip(header, row[1:]):
            table[x][lat.index(col)] = lat.index(cell)
    return TNormTable(lat, table)
