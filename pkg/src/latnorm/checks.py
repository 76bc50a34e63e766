"""Cross-cutting consistency checks tying the pipeline's pieces together.

Each check exercises one structural fact about the generated families on
a concrete lattice and reports a witness on failure. They back the CLI's
``check`` subcommand; the test suite runs them over the whole corpus.
"""

from __future__ import annotations

from dataclasses import dataclass

from .construction import (
    AtomSelection,
    family_powerset_isomorphism,
    generated_family,
    semicontinuity_criterion,
    skeleton,
)
from .errors import BoundExceeded, DegenerateLength
from .extension import condition_c, extend, restrict_to_original, s_family
from .lattice import FiniteLattice
from .tnorm import is_left_semicontinuous, restrict, tnorm_le, verify_tnorm


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  ({self.detail})" if self.detail else ""
        return f"{status}  {self.name}{tail}"


def check_lift_restriction_roundtrip(lat: FiniteLattice, atom_cap: int = 12) -> CheckResult:
    """Restricting each lift back to the skeleton returns the skeleton table."""
    name = "lift-restriction round-trip"
    skel = skeleton(lat)
    for g in generated_family(lat, atom_cap=atom_cap):
        back = restrict(g.lifted, skel.members)
        if back != g.on_skeleton:
            return CheckResult(name, False, f"selection {g.selection.label()} does not round-trip")
    return CheckResult(name, True)


def check_semicontinuity_criterion(lat: FiniteLattice, atom_cap: int = 12) -> CheckResult:
    """The selection-level criterion matches the table scan for every selection."""
    name = "left-semicontinuity criterion vs table scan"
    for g in generated_family(lat, atom_cap=atom_cap):
        predicted = semicontinuity_criterion(lat, g.selection)
        scanned = is_left_semicontinuous(g.lifted)
        if predicted.ok != scanned.ok:
            return CheckResult(
                name,
                False,
                f"selection {g.selection.label()}: criterion says {predicted.ok}, scan says {scanned.ok}",
            )
    return CheckResult(name, True)


def check_family_isomorphism(lat: FiniteLattice, atom_cap: int = 6) -> CheckResult:
    """The lifted family is the atom powerset as an ordered structure."""
    name = "family vs atom-powerset isomorphism"
    try:
        report = family_powerset_isomorphism(lat, atom_cap=atom_cap)
    except DegenerateLength:
        return CheckResult(name, True, "degenerate length; unique t-norm")
    if not report.passed:
        return CheckResult(name, False, report.failures[0])
    return CheckResult(name, True)


def check_extension_gate(lat: FiniteLattice, atom_cap: int = 12) -> CheckResult:
    """The restriction gate holds exactly when the restriction is a t-norm."""
    name = "extension restriction gate (both directions)"
    ext = extend(lat)
    n0 = lat.n
    family = generated_family(ext.extended, atom_cap=atom_cap)
    for g in family:
        gate = condition_c(ext, AtomSelection.from_mask(ext.extended, g.selection.mask))
        closed = all(v < n0 for row in g.lifted.table[:n0] for v in row[:n0])
        if gate.ok != closed:
            return CheckResult(
                name, False, f"selection {g.selection.label()}: gate {gate.ok}, closure {closed}"
            )
        if closed:
            verdict = verify_tnorm(restrict_to_original(ext, g))
            if not verdict.ok:
                return CheckResult(
                    name, False, f"selection {g.selection.label()}: restriction {verdict.describe()}"
                )
    return CheckResult(name, True)


def check_restriction_joins(lat: FiniteLattice, atom_cap: int = 12) -> CheckResult:
    """Selection unions realize least upper bounds of gated restrictions.

    Also confirms that adding the atom inserted under a join-irreducible
    top never changes a restriction.
    """
    name = "restriction family joins"
    ext = extend(lat)
    fam = s_family(ext, atom_cap=atom_cap)
    members = fam.members()
    by_mask = {sel.mask: table for sel, table in members}
    for sel_a, table_a in members:
        for sel_b, table_b in members:
            union_table = by_mask[sel_a.mask | sel_b.mask]
            ubs = [t for _, t in members if tnorm_le(table_a, t) and tnorm_le(table_b, t)]
            least = [t for t in ubs if all(tnorm_le(t, other) for other in ubs)]
            if len(set(least)) != 1 or least[0] != union_table:
                return CheckResult(
                    name,
                    False,
                    f"({sel_a.label()}, {sel_b.label()}): union is not the least upper bound",
                )
    top = lat.top
    if lat.ji_mask >> top & 1 and top in ext.new_atoms:
        w1 = ext.new_atoms[top]
        for sel, table in members:
            if w1 in sel:
                continue
            widened = by_mask.get(sel.mask | 1 << w1)
            if widened is None or widened != table:
                return CheckResult(
                    name, False, f"adding {ext.extended.name(w1)} to {sel.label()} changed the restriction"
                )
    return CheckResult(name, True)


def run_all_checks(lat: FiniteLattice, atom_cap: int = 12) -> list[CheckResult]:
    """Run every applicable check; family checks use the extension when needed."""
    results = []
    target = lat
    note = ""
    if not lat.is_atomistic():
        target = extend(lat).extended
        note = " (on the atomistic extension)"
    for fn in (check_lift_restriction_roundtrip, check_semicontinuity_criterion):
        try:
            res = fn(target, atom_cap=atom_cap)
        except BoundExceeded as exc:
            res = CheckResult(fn.__name__, False, str(exc))
        results.append(CheckResult(res.name + note, res.passed, res.detail))
    try:
        res = check_family_isomorphism(target)
        results.append(CheckResult(res.name + note, res.passed, res.detail))
    except BoundExceeded as exc:
        results.append(CheckResult("family vs atom-powerset isomorphism" + note, False, str(exc)))
    for fn in (check_extension_gate, check_restriction_joins):
        try:
            res = fn(lat, atom_cap=atom_cap)
        except BoundExceeded as exc:
            res = CheckResult(fn.__name__, False, str(exc))
        results.append(res)
    return results
