#!/usr/bin/env python3
"""End-to-end walkthrough on the stemmed-diamond lattice.

Builds the lattice, extends it to an atomistic one, generates the t-norm
for the selection {b, w_d} on the skeleton, lifts it, and restricts it
back, printing every table along the way.
"""

from latnorm.catalog import stemmed_diamond
from latnorm.construction import AtomSelection, GeneratedTNorm, lift, skeleton, skeleton_tnorm
from latnorm.extension import condition_c, continuity_of_restriction, extend, restrict_to_original
from latnorm.tnorm import is_left_continuous, is_left_semicontinuous, table_to_csv, verify_tnorm


def show(title, text):
    print(f"== {title}")
    print(text)


def main():
    lat = stemmed_diamond()
    show("lattice", lat.to_json())
    print(f"atoms: {lat.atoms().names()}  join-irreducibles: {lat.join_irreducibles().names()}")
    print(f"atomistic: {lat.is_atomistic()}\n")

    ext = extend(lat)
    show("atomistic extension", ext.extended.to_json())
    print(f"inserted atoms: {ext.sidecar_map()}\n")

    skel = skeleton(ext.extended)
    selection = AtomSelection.from_names(ext.extended, ["b", "w_d"])
    on_c = skeleton_tnorm(skel, selection)
    show("t-norm on the skeleton (selection b, w_d)", table_to_csv(on_c))

    lifted = lift(ext.extended, on_c)
    show("lifted t-norm", table_to_csv(lifted))
    print(f"verifies: {verify_tnorm(lifted).ok}")
    print(f"left-semicontinuous: {is_left_semicontinuous(lifted).ok}")
    print(f"left-continuous: {is_left_continuous(lifted).describe()}\n")

    g = GeneratedTNorm(selection, on_c, lifted)
    print(f"restriction gate: {condition_c(ext, selection).ok}")
    restricted = restrict_to_original(ext, g)
    show("restriction to the original lattice", table_to_csv(restricted))
    report = continuity_of_restriction(ext, g, restricted)
    print(f"restriction left-semicontinuous: {report.restriction_left_semicontinuous.ok}")
    print(f"restriction left-continuous: {report.restriction_left_continuous.describe()}")


if __name__ == "__main__":
    main()
