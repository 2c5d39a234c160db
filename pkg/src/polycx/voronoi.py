"""Voronoi complexes of rational site sets and their Delaunay nerves.

Cells come straight from the bisector inequalities 2(y'-y)·x <= y'·y'-y·y,
with redundant bisectors filtered incrementally (nearest sites first).  The
complex itself is the face/intersection closure of the cells.  Genericity
("simple configuration") is a rank condition on equidistance systems; the
Delaunay nerve is certified exactly: affine independence, pairwise disjoint
open simplices, and volume additivity against the convex hull.
"""

import itertools
import random
from dataclasses import dataclass

from .rationals import QQ, ZERO, ONE, rat, rat_str, vec
from . import linalg
from .polyhedra import (LinearInequality, RationalPolyhedron, _solve_constraints,
                        convex_hull_inequalities, polytope_volume, simplex_volume,
                        format_poly, parse_poly)
from .complexes import PolyhedralComplex
from .simplicial import SimplicialComplex


class SiteSet:

    def __init__(self, ambient_dim, sites):
        self.ambient_dim = int(ambient_dim)
        self.sites = tuple(vec(p) for p in sites)
        for p in self.sites:
            if len(p) != self.ambient_dim:
                raise ValueError("site arity does not match ambient dimension")
        if len(set(self.sites)) != len(self.sites):
            raise ValueError("duplicate sites")
        if not self.sites:
            raise ValueError("need at least one site")

    def __len__(self):
        return len(self.sites)


def _sq(p):
    return linalg.dot(p, p)


def bisector(y, y2):
    """Halfspace of points at least as close to y as to y2."""
    normal = tuple(2 * (b - a) for a, b in zip(y, y2))
    return LinearInequality(normal, _sq(y2) - _sq(y), False)


def _cell_inequalities(Y, i):
    y = Y.sites[i]
    others = sorted((j for j in range(len(Y)) if j != i),
                    key=lambda j: (_sq(tuple(a - b for a, b in zip(Y.sites[j], y))), j))
    kept = []
    for j in others:
        q = bisector(y, Y.sites[j])
        if kept:
            neg = q.negation()
            probe = [(w.normal, w.offset, w.strict) for w in kept]
            probe.append((neg.normal, neg.offset, neg.strict))
            if _solve_constraints([], probe) is None:
                continue  # already entailed by nearer bisectors
        kept.append(q)
    return kept


@dataclass
class VoronoiComplex:
    complex: PolyhedralComplex
    cell_of: dict  # site index -> FaceId


def voronoi_complex(Y):
    cells = [RationalPolyhedron(Y.ambient_dim, _cell_inequalities(Y, i))
             for i in range(len(Y))]
    cx = PolyhedralComplex.from_subdivision(cells)
    cell_of = {}
    for i, cell in enumerate(cells):
        fid = cx.id_of_polyhedron(cell)
        if fid is None:
            raise AssertionError("cell disappeared during closure")
        cell_of[i] = fid
    return VoronoiComplex(cx, cell_of)


def equidistance_system(Y, indices):
    """Equations d(x,y_0)=d(x,y_j) for the given site indices."""
    base = Y.sites[indices[0]]
    rows, rhs = [], []
    for j in indices[1:]:
        q = bisector(base, Y.sites[j])
        rows.append(q.normal)
        rhs.append(q.offset)
    return rows, rhs


def is_simple_configuration(Y):
    """(flag, witness): every small equidistance locus is transversal.

    Subsets larger than N+2 never need checking: a degenerate one always
    contains a degenerate subset of size at most N+2.  Subsets of size up
    to N+1 must be affinely independent; a size-N+2 subset is degenerate
    exactly when its points share a circumsphere, so instead of sweeping
    all N+2 subsets we hash circumcenters of the N+1 subsets and look for
    a collision (same center and radius).
    """
    if len(Y) < 2:
        raise ValueError("need at least two sites")
    N = Y.ambient_dim
    k = len(Y)
    for size in range(3, min(k, N + 1) + 1):
        for W in itertools.combinations(range(k), size):
            rows, _ = equidistance_system(Y, W)
            if linalg.rank(rows) != size - 1:
                return False, W
    if k >= N + 2:
        spheres = {}
        for W in itertools.combinations(range(k), N + 1):
            rows, rhs = equidistance_system(Y, W)
            center = linalg.solve(rows, rhs)  # unique: rank N from the stage above
            p0 = Y.sites[W[0]]
            radius2 = _sq(tuple(c - a for c, a in zip(center, p0)))
            key = (tuple(center), radius2)
            other = spheres.get(key)
            if other is not None:
                union = sorted(set(other) | set(W))
                return False, tuple(union[:N + 2])
            spheres[key] = W
    return True, None


def perturb_to_simple(Y, bound, seed, retries=8):
    bound = rat(bound)
    if bound <= 0:
        raise ValueError("perturbation bound must be positive")
    if len(Y) >= 2 and is_simple_configuration(Y)[0]:
        return Y
    rng = random.Random(seed)
    for attempt in range(retries):
        scale = bound / (2 ** attempt)
        den = 2 ** (attempt + 10)
        lim = int(scale * den)
        sites = []
        for p in Y.sites:
            sites.append(tuple(c + QQ(rng.randint(-lim, lim), den) for c in p))
        if len(set(sites)) != len(sites):
            continue
        cand = SiteSet(Y.ambient_dim, sites)
        if is_simple_configuration(cand)[0]:
            return cand
    raise ValueError("perturbation failed after %d retries" % retries)


@dataclass
class DelaunayRealization:
    complex: SimplicialComplex  # vertices are site indices
    eta: dict                   # site index -> point
    hull_dim: int
    hull_volume: object
    simplex_volumes: list       # (vertex tuple, volume) for top simplices


def _site_span(Y):
    base = Y.sites[0]
    diffs = [tuple(p[i] - base[i] for i in range(Y.ambient_dim)) for p in Y.sites[1:]]
    dirs, _ = linalg.rref(diffs)
    return base, list(dirs)


def _param_coords(base, dirs, point):
    rows = [tuple(d[i] for d in dirs) for i in range(len(base))]
    rhs = tuple(point[i] - base[i] for i in range(len(base)))
    if not dirs:
        return ()
    t = linalg.solve(rows, rhs)
    if t is None:
        raise AssertionError("point outside site span")
    return t


def delaunay(Y):
    ok, witness = is_simple_configuration(Y)
    if not ok:
        raise ValueError(
            "site set is not simple (witness subset %r); run perturb_to_simple first"
            % (witness,))
    V = voronoi_complex(Y)
    site_of = {fid: i for i, fid in V.cell_of.items()}
    nerve = V.complex.nerve().relabeled(site_of)
    eta = {i: Y.sites[i] for i in range(len(Y))}

    # (a) injectivity: affine independence per simplex
    for s in nerve.simplices():
        pts = [Y.sites[i] for i in sorted(s)]
        rows = [tuple(p[i] - pts[0][i] for i in range(Y.ambient_dim)) for p in pts[1:]]
        if linalg.rank(rows) != len(rows):
            raise ValueError("Delaunay simplex %r is affinely degenerate" % (sorted(s),))

    # (a) injectivity: open simplex images pairwise disjoint
    simps = nerve.simplices()
    for s, t in itertools.combinations(simps, 2):
        if _open_simplices_meet([Y.sites[i] for i in sorted(s)],
                                [Y.sites[i] for i in sorted(t)]):
            raise ValueError("open Delaunay simplices %r and %r overlap"
                             % (sorted(s), sorted(t)))

    # (b) surjectivity onto the hull: exact volume additivity in span coordinates
    base, dirs = _site_span(Y)
    d = len(dirs)
    params = {i: _param_coords(base, dirs, Y.sites[i]) for i in range(len(Y))}
    if d == 0:
        hull_vol = ZERO
        tops = []
    else:
        hull = convex_hull_inequalities([params[i] for i in range(len(Y))])
        hull_vol = polytope_volume(hull)
        tops = []
        for s in nerve.maximal_simplices():
            if len(s) != d + 1:
                raise ValueError("Delaunay facet %r has wrong dimension" % (sorted(s),))
            v = simplex_volume([params[i] for i in sorted(s)])
            if v <= 0:
                raise ValueError("degenerate top simplex %r" % (sorted(s),))
            tops.append((tuple(sorted(s)), v))
        total = sum((v for _, v in tops), ZERO)
        if total != hull_vol:
            raise ValueError("simplex volumes %s do not add up to hull volume %s"
                             % (rat_str(total), rat_str(hull_vol)))
    return DelaunayRealization(nerve, eta, d, hull_vol, tops)


def _open_simplices_meet(pts_a, pts_b):
    """Exact test: do the relative interiors of two simplices intersect?"""
    N = len(pts_a[0])
    na, nb = len(pts_a), len(pts_b)
    nvars = na + nb
    eqs = []
    eqs.append((tuple([ONE] * na + [ZERO] * nb), ONE))
    eqs.append((tuple([ZERO] * na + [ONE] * nb), ONE))
    for i in range(N):
        row = [p[i] for p in pts_a] + [-q[i] for q in pts_b]
        eqs.append((tuple(row), ZERO))
    ineqs = []
    for v in range(nvars):
        e = [ZERO] * nvars
        e[v] = -ONE
        ineqs.append((tuple(e), ZERO, True))
    return _solve_constraints(eqs, ineqs) is not None


# -- clipping -----------------------------------------------------------------

class PolyhedralRegion:

    def __init__(self, pieces):
        self.pieces = tuple(pieces)
        if not self.pieces:
            raise ValueError("region needs at least one piece")
        self.ambient_dim = self.pieces[0].ambient_dim
        for p in self.pieces:
            if p.ambient_dim != self.ambient_dim:
                raise ValueError("pieces live in different ambient spaces")
            if p.is_empty():
                raise ValueError("empty region piece")
            if not p.is_bounded():
                raise ValueError("region pieces must be bounded")

    def meets(self, poly):
        return any(not poly.intersect(p).is_empty() for p in self.pieces)

    def bounding_box(self):
        los = [None] * self.ambient_dim
        his = [None] * self.ambient_dim
        for p in self.pieces:
            for v in p.vertices():
                for i, c in enumerate(v):
                    if los[i] is None or c < los[i]:
                        los[i] = c
                    if his[i] is None or c > his[i]:
                        his[i] = c
        return los, his


def clipped_complex(Y, region):
    ok, witness = is_simple_configuration(Y)
    if not ok:
        raise ValueError("site set is not simple (witness subset %r)" % (witness,))
    V = voronoi_complex(Y)
    cx = V.complex
    removed = {c for c in cx.ids() if not region.meets(cx.faces[c])}
    # faces disjoint from the region form a subcomplex automatically
    clipped = cx.difference(removed)
    flag, bad = clipped.is_simple()
    if not flag:
        raise AssertionError("clipped complex lost simplicity at face %r" % (bad,))
    return clipped


def dense_lattice_sites(region, eps, seed, bound=None, retries=8):
    """Sites (eps·Z)^N within eps of the region, perturbed to simplicity."""
    eps = rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    N = region.ambient_dim
    los, his = region.bounding_box()
    ranges = []
    for i in range(N):
        lo = (los[i] - eps) / eps
        hi = (his[i] + eps) / eps
        lo_i = lo.numerator // lo.denominator  # floor
        hi_i = -((-hi.numerator) // hi.denominator)  # ceil
        ranges.append(range(int(lo_i), int(hi_i) + 1))
    sites = []
    for combo in itertools.product(*ranges):
        p = tuple(eps * c for c in combo)
        box = RationalPolyhedron.from_box([c - eps for c in p], [c + eps for c in p])
        if region.meets(box):
            sites.append(p)
    Y = SiteSet(N, sites)
    if bound is None:
        bound = eps / 4
    return perturb_to_simple(Y, bound, seed, retries=retries)


# -- PTS/1 and RGN/1 -----------------------------------------------------------

def format_pts(Y):
    lines = ["%d %d" % (Y.ambient_dim, len(Y))]
    for p in Y.sites:
        lines.append(" ".join(rat_str(c) for c in p))
    return "\n".join(lines) + "\n"


def parse_pts(text):
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("PTS/1: empty input")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("PTS/1: header must be 'N k' (line 1)")
    n, k = int(head[0]), int(head[1])
    if len(lines) - 1 != k:
        raise ValueError("PTS/1: expected %d points, got %d" % (k, len(lines) - 1))
    sites = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != n:
            raise ValueError("PTS/1: bad point arity (line %d)" % lineno)
        sites.append(tuple(rat(p) for p in parts))
    return SiteSet(n, sites)


def format_rgn(region):
    blocks = [str(len(region.pieces))]
    for p in region.pieces:
        blocks.append(format_poly(p).rstrip("\n"))
    return "\n".join(blocks) + "\n"


def parse_rgn(text):
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("RGN/1: empty input")
    count = int(lines[0])
    pos = 1
    pieces = []
    for _ in range(count):
        if pos >= len(lines):
            raise ValueError("RGN/1: truncated input (line %d)" % (pos + 1))
        head = lines[pos].split()
        if len(head) != 2:
            raise ValueError("RGN/1: bad POLY/1 header (line %d)" % (pos + 1))
        m = int(head[1])
        block = lines[pos:pos + m + 1]
        if len(block) != m + 1:
            raise ValueError("RGN/1: truncated POLY/1 block (line %d)" % (pos + 1))
        pieces.append(parse_poly("\n".join(block)))
        pos += m + 1
    if pos != len(lines):
        raise ValueError("RGN/1: trailing data (line %d)" % (pos + 1))
    return PolyhedralRegion(pieces)
