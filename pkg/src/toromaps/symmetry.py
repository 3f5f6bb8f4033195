"""Isotropy groups of covers and classification of covers up to isomorphism.

A cover E/K with K named by the HNF M keeps the symmetry S of the tiling
exactly when S normalises K, i.e. when M^-1 S M is integral.  Two covers are
isomorphic when some point-group element carries one lattice onto the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .lattice import HnfMatrix, conjugation_integral, hnf_reduce
from .tilings.model import AffineSymmetry, TilingSpec


@dataclass(frozen=True)
class IsotropyGroup:
    members: tuple[AffineSymmetry, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.members]

    def __contains__(self, label: str) -> bool:
        return label in self.labels


def isotropy(spec: TilingSpec, M: HnfMatrix) -> IsotropyGroup:
    return IsotropyGroup(tuple(s for s in spec.point_group if conjugation_integral(s.linear, M)))


def orbit_of_matrix(spec: TilingSpec, M: HnfMatrix) -> set[HnfMatrix]:
    return {hnf_reduce(s.linear @ M.matrix()) for s in spec.point_group}


@dataclass(frozen=True)
class IsoClass:
    representative: HnfMatrix
    members: tuple[HnfMatrix, ...]
    isotropy: IsotropyGroup

    @property
    def isotropy_order(self) -> int:
        return self.isotropy.order

    def to_dict(self) -> dict:
        return {
            "representative": self.representative.triple(),
            "isotropy_order": self.isotropy_order,
            "isotropy_labels": self.isotropy.labels,
        }


def classify_up_to_iso(spec: TilingSpec, mats: Sequence[HnfMatrix]) -> list[IsoClass]:
    """Partition mats into isomorphism classes, ordered by representative."""
    dets = {M.n for M in mats}
    if len(dets) > 1:
        raise ValueError("all matrices must have the same determinant")
    remaining = set(mats)
    classes = []
    for M in sorted(mats, key=HnfMatrix.sort_key):
        if M not in remaining:
            continue
        orbit = orbit_of_matrix(spec, M)
        members = tuple(sorted((X for X in orbit if X in remaining), key=HnfMatrix.sort_key))
        remaining.difference_update(orbit)
        rep = min(orbit, key=HnfMatrix.sort_key)
        classes.append(IsoClass(rep, members, isotropy(spec, rep)))
    return sorted(classes, key=lambda c: c.representative.sort_key())


def equivalent(spec: TilingSpec, M1: HnfMatrix, M2: HnfMatrix) -> bool:
    return M2 in orbit_of_matrix(spec, M1)


def class_sizes(spec: TilingSpec, classes: Iterable[IsoClass]) -> list[int]:
    return [spec.order // c.isotropy_order for c in classes]
