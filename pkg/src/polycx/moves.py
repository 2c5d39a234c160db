"""Dual complexes of stratified intersection data and the two moves that
leave their homotopy type unchanged: barycentric subdivision of a simplex
and coning over a closed star."""

import itertools
from dataclasses import dataclass

from .simplicial import SimplicialComplex, label_key


@dataclass(frozen=True)
class DualComplexMove:
    kind: str      # "barycentric" or "cone-over-star"
    target: tuple  # vertex labels of the target simplex

    def __post_init__(self):
        if self.kind not in ("barycentric", "cone-over-star"):
            raise ValueError("unknown move kind: %r" % (self.kind,))


def _fresh_barycenter(simplex):
    return "b(%s)" % ",".join(str(v) for v in sorted(simplex, key=label_key))


def stellar_subdivide(K, simplex, new_label=None):
    """Star the complex at one simplex: its open star is replaced by the
    cone from a fresh barycenter vertex."""
    fs = frozenset(simplex)
    if fs not in K:
        raise ValueError("target simplex not in complex")
    if len(fs) == 1:
        return K
    b = new_label if new_label is not None else _fresh_barycenter(fs)
    if b in set(K.vertices):
        raise ValueError("barycenter label %r already used" % (b,))
    keep = [t for t in K.simplices() if not fs <= t]
    added = []
    for t in K.star(fs):
        rest = t - fs
        for r in range(len(fs)):
            for alpha in itertools.combinations(sorted(fs, key=label_key), r):
                added.append(frozenset(alpha) | rest | {b})
    return SimplicialComplex(keep + added, vertices=K.vertices)


def barycentric_move(K, simplex):
    """Replace the closed target simplex by its barycentric subdivision,
    extended through all incident simplices (stellar subdivisions of its
    faces in decreasing dimension)."""
    fs = frozenset(simplex)
    if fs not in K:
        raise ValueError("target simplex not in complex")
    out = K
    for size in range(len(fs), 1, -1):
        for face in itertools.combinations(sorted(fs, key=label_key), size):
            out = stellar_subdivide(out, frozenset(face))
    return out


def cone_over_star(K, simplex, new_label=None):
    """Attach the cone over the closed star of the target simplex."""
    fs = frozenset(simplex)
    if fs not in K:
        raise ValueError("target simplex not in complex")
    c = new_label if new_label is not None else "c(%s)" % ",".join(
        str(v) for v in sorted(fs, key=label_key))
    if c in set(K.vertices):
        raise ValueError("cone label %r already used" % (c,))
    cone = [t | {c} for t in K.closed_star(fs).simplices()]
    return SimplicialComplex(list(K.simplices()) + cone, vertices=K.vertices)


def dual_move(K, move):
    if move.kind == "barycentric":
        return barycentric_move(K, move.target)
    return cone_over_star(K, move.target)


def dual_complex(components, strata):
    """Dual complex of intersection data.

    components: vertex labels.  strata: map from frozensets of labels to the
    number of connected components of the corresponding intersection.  A
    stratum with count m >= 2 is realized as m subdivided copies of the
    simplex glued along their common boundary.
    """
    components = list(components)
    comp_set = set(components)
    counts = {}
    for J, m in strata.items():
        J = frozenset(J)
        if not J <= comp_set:
            raise ValueError("stratum %r uses unknown components" % (sorted(J),))
        if not J:
            raise ValueError("empty stratum")
        m = int(m)
        if m < 0:
            raise ValueError("negative component count")
        if m > 0:
            counts[J] = m
    for J in counts:
        for r in range(1, len(J)):
            for sub in itertools.combinations(sorted(J, key=label_key), r):
                if frozenset(sub) not in counts:
                    raise ValueError(
                        "strata not downward-closed: %r is missing under %r"
                        % (list(sub), sorted(J, key=label_key)))
    for J, m in counts.items():
        if len(J) == 1 and m != 1:
            raise ValueError("a component is a single vertex; count must be 1")
        if m >= 2:
            if any(J < J2 for J2 in counts):
                raise ValueError(
                    "unsupported strata: %r has multiplicity %d below a larger stratum"
                    % (sorted(J, key=label_key), m))
    simplices = []
    for J, m in counts.items():
        if m == 1:
            simplices.append(J)
        else:
            verts = sorted(J, key=label_key)
            for t in range(1, m + 1):
                apex = "z%d(%s)" % (t, ",".join(str(v) for v in verts))
                for r in range(len(J)):
                    for F in itertools.combinations(verts, r):
                        simplices.append(frozenset(F) | {apex})
    return SimplicialComplex(simplices, vertices=components)
