"""Acceptance suite: eleven certified criteria, one printed line each.

Every numeric comparison is exact rational or integer equality; there are
no tolerances anywhere.  Each criterion also carries a wall-clock budget.
"""

import itertools
import json
import random
import time

import pytest

from polycx import (
    QQ,
    rat,
    SiteSet,
    SimplicialComplex,
    PolyhedralRegion,
    RationalPolyhedron,
    PolyhedralComplex,
    is_simple_configuration,
    perturb_to_simple,
    delaunay,
    clipped_complex,
    dense_lattice_sites,
    span_assignment,
    parasitic_intersections,
    saturate,
    verify_proper,
    blowup_plan,
    ParasiticRecord,
    no_limit_witness,
    higman_presentation,
    presentation_complex,
    presentation_complex_stats,
    q_superperfect_certificate,
    abelianization,
    fundamental_group,
    smith_normal_form,
    homology,
    dual_move,
    DualComplexMove,
    format_poly, parse_poly,
    format_cplx, parse_cplx,
    format_scx, parse_scx,
    format_grp, parse_grp,
    format_pts, parse_pts,
    format_rgn, parse_rgn,
    format_ledger, parse_ledger,
)
from polycx.cli import run as cli_run

import _corpus
from _corpus import box, random_sites
from oracles import snf_invariant_factors


_CORPUS = None
_PIPELINES = {}


def corpus():
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = _corpus.simple_polyhedral_corpus()
    return _CORPUS


def pipeline(name, C):
    if name not in _PIPELINES:
        spans = span_assignment(C)
        records = saturate(C, spans, parasitic_intersections(C, spans))
        _PIPELINES[name] = (spans, records)
    return _PIPELINES[name]


class Criterion:
    """Collects a verdict and prints the single pass/fail line."""

    def __init__(self, number, title, budget):
        self.number = number
        self.title = title
        self.budget = budget
        self.t0 = time.monotonic()

    def conclude(self, ok, detail):
        elapsed = time.monotonic() - self.t0
        print("criterion %02d %s: %s (%s; %.1fs, budget %ds)"
              % (self.number, self.title, "PASS" if ok else "FAIL",
                 detail, elapsed, self.budget))
        assert ok, "criterion %02d failed: %s" % (self.number, detail)
        assert elapsed < self.budget, \
            "criterion %02d exceeded %ds budget" % (self.number, self.budget)


def test_01_voronoi_delaunay_duality():
    crit = Criterion(1, "voronoi-delaunay-duality", 60)
    cases = [(1, k, s) for s, k in enumerate([4, 5, 6, 7, 8, 9, 10] * 2)]
    cases += [(2, k, 50 + s) for s, k in enumerate([4, 5, 6, 7, 8] * 5)]
    cases += [(3, k, 90 + s) for s, k in enumerate([4, 5, 5, 6, 4, 5, 6,
                                                    5, 4, 6, 5])]
    assert len(cases) == 50
    checked = 0
    for n, k, seed in cases:
        Y = random_sites(n, k, seed)
        assert is_simple_configuration(Y)[0]
        D = delaunay(Y)  # certifies injectivity and disjointness internally
        assert all(v > 0 for _, v in D.simplex_volumes)
        assert sum((v for _, v in D.simplex_volumes), QQ(0)) == D.hull_volume
        checked += 1
    crit.conclude(checked == 50, "%d site sets certified" % checked)


def test_02_simplicity_density():
    crit = Criterion(2, "simplicity-density", 30)
    on_circle = [(3, 4), (4, 3), (-3, 4), (-4, 3), (5, 0), (0, 5),
                 (-5, 0), (0, -5), (3, -4), (4, -3)]
    degenerate = []
    for seed in range(20):
        rng = random.Random(seed)
        if seed % 2 == 0:
            pts = sorted(rng.sample(on_circle, 5))  # cocircular
        else:
            slope = rng.randint(1, 5)
            pts = [(t, slope * t) for t in range(5)]  # collinear
        degenerate.append(SiteSet(2, pts))
    successes = 0
    for seed, Y in enumerate(degenerate):
        assert not is_simple_configuration(Y)[0]
        try:
            Z = perturb_to_simple(Y, QQ(1, 100), seed=seed)
        except ValueError:
            continue
        assert is_simple_configuration(Z)[0]
        successes += 1
    crit.conclude(successes >= 19, "%d/20 perturbations succeeded" % successes)


def test_03_difference_hereditarity():
    crit = Criterion(3, "difference-hereditarity", 60)
    checked = 0
    for name, C in corpus():
        assert C.is_simple()[0], name
        rng = random.Random(sum(map(ord, name)))
        ids = C.ids()
        candidates = [i for i in ids
                      if set(C.downward_closure([i])) != set(ids)]
        seeds = rng.sample(candidates, min(2, len(candidates)))
        B = C.downward_closure(seeds)
        if set(B) == set(ids):
            B = C.downward_closure(seeds[:1])
        D = C.difference(B)
        flag, witness = D.is_simple()
        assert flag, (name, witness)
        checked += 1
    crit.conclude(checked >= 30, "%d difference complexes stayed simple" % checked)


def test_04_parasite_lemma():
    crit = Criterion(4, "parasite-properness", 30)
    checked = 0
    for name, C in corpus():
        spans, records = pipeline(name, C)
        report = verify_proper(C, spans, records)
        assert report["passed"], (name, report["violations"])
        checked += 1
    # negative control: the span of a whole 2-face is never a valid center
    C = PolyhedralComplex.from_subdivision([box([0, 0], [1, 1])])
    spans = span_assignment(C)
    top = max(C.ids(), key=C.face_dim)
    bad = ParasiticRecord(top, (top,), spans[top], saturated=True)
    report = verify_proper(C, spans, [bad])
    control = (not report["passed"]
               and {v["check"] for v in report["violations"]}
               == {"dimension", "contains-face"}
               and all(v["ambient"] == top for v in report["violations"]))
    crit.conclude(checked == len(corpus()) and control,
                  "%d complexes proper, negative control caught" % checked)


def test_05_blowup_ledger_separation():
    crit = Criterion(5, "blowup-ledger-separation", 30)
    checked = pairs = 0
    for name, C in corpus():
        spans, records = pipeline(name, C)
        ledger = blowup_plan(C, spans, records)  # asserts separation
        for d, stage in enumerate(ledger.stages):
            for ambient, centers in stage.items():
                assert all(s.dim == d for s in centers), name
                assert all(s != spans[ambient] for s in centers), name
        for cert in ledger.certificates:
            for entry in cert["pairs"]:
                assert entry["separated"] in ("disjoint", "via-lower-stage")
                pairs += 1
        checked += 1
    crit.conclude(checked == len(corpus()),
                  "%d ledgers, %d stage pairs separated" % (checked, pairs))


def test_06_no_limit_oracle():
    crit = Criterion(6, "no-direct-limit", 20)
    dims = []
    for d in range(1, 9):
        report = no_limit_witness(d)
        dims.append(report["restriction_image_dim"])
        assert report["identities_3"], d
        assert report["identities_4"], d
    control = no_limit_witness(8, shear=False)["restriction_image_dim"]
    crit.conclude(dims == [1] * 8 and control > 1,
                  "image dim 1 at degrees 1..8, control dim %d" % control)


def test_07_higman_fixture():
    crit = Criterion(7, "higman-fixture", 10)
    pres = higman_presentation()
    ab = abelianization(pres)
    chi, balanced = presentation_complex_stats(pres)
    cert = q_superperfect_certificate(presentation_complex(pres))
    crit.conclude(ab == (0, ()) and chi == 1 and balanced and cert["certified"],
                  "H1=0, chi=1, Q-superperfect certified")


def test_08_homology_engine():
    crit = Criterion(8, "homology-engine", 60)
    rp2 = homology(_corpus.projective_plane(), "Z")
    assert rp2.torsion[1] == (2,)
    assert homology(_corpus.sphere2(), "Q").betti == (1, 0, 1)
    assert homology(_corpus.torus(), "Q").betti == (1, 2, 1)
    rng = random.Random(88)
    for trial in range(200):
        m = rng.randint(1, 8)
        n = rng.randint(1, 8)
        M = [[rng.randint(-30, 30) for _ in range(n)] for _ in range(m)]
        snf = smith_normal_form(M)
        assert snf.certify(M), M
        assert snf.invariant_factors == snf_invariant_factors(M), M
    crit.conclude(True, "surface profiles exact, 200 SNF certificates verified")


def _simplicial_fixtures():
    out = [_corpus.sphere2(), _corpus.torus(), _corpus.projective_plane(),
           _corpus.circle(3), _corpus.circle(5)]
    for name, C in corpus():
        if len(out) >= 20:
            break
        K = C.nerve()
        if K.is_connected() and K.dim() >= 1:
            out.append(K)
    return out[:20]


def test_09_dual_move_invariance():
    crit = Criterion(9, "dual-move-invariance", 60)
    fixtures = _simplicial_fixtures()
    assert len(fixtures) == 20
    checked = 0
    for i, K in enumerate(fixtures):
        rng = random.Random(i)
        if i % 2 == 0:
            targets = sorted(K.simplices(min(K.dim(), 2)), key=repr)
            move = DualComplexMove("barycentric", tuple(rng.choice(targets)))
        else:
            targets = sorted(K.simplices(0), key=repr)
            move = DualComplexMove("cone-over-star", tuple(rng.choice(targets)))
        L = dual_move(K, move)
        hk, hl = homology(K, "Q"), homology(L, "Q")
        assert all(hk.betti_at(d) == hl.betti_at(d) for d in range(4)), i
        assert abelianization(fundamental_group(K)) == \
            abelianization(fundamental_group(L)), i
        checked += 1
    crit.conclude(checked == 20, "20 moves preserved Betti and H1 invariants")


def test_10_clipped_complex_homotopy():
    crit = Criterion(10, "clipped-complex-homotopy", 120)
    annulus = PolyhedralRegion([
        box([0, 0], [12, 2]), box([0, 10], [12, 12]),
        box([0, 2], [2, 10]), box([10, 2], [12, 10]),
    ])
    Y = dense_lattice_sites(annulus, 2, seed=5)
    C = clipped_complex(Y, annulus)
    ha = homology(C.nerve(), "Q")
    convex = PolyhedralRegion([box([0, 0], [3, 3])])
    Z = dense_lattice_sites(convex, 1, seed=9)
    D = clipped_complex(Z, convex)
    hc = homology(D.nerve(), "Q")
    ok = (ha.betti_at(0) == 1 and ha.betti_at(1) == 1
          and all(ha.betti_at(d) == 0 for d in range(2, 5))
          and hc.betti_at(0) == 1
          and all(hc.betti_at(d) == 0 for d in range(1, 5)))
    crit.conclude(ok, "annulus betti %s, convex betti %s"
                  % (list(ha.betti), list(hc.betti)))


def test_11_determinism_round_trip(tmp_path):
    crit = Criterion(11, "determinism-round-trip", 30)
    pts = tmp_path / "p.pts"
    pts.write_text("2 4\n0 0\n1 0\n0 1\n1 1\n")
    outputs = []
    for tag in ("a", "b"):
        moved = tmp_path / ("m%s.pts" % tag)
        cplx = tmp_path / ("v%s.cplx" % tag)
        rep = tmp_path / ("r%s.json" % tag)
        assert cli_run(["perturb", "--points", str(pts), "--bound", "1/100",
                        "--seed", "11", "--out", str(moved)]) == 0
        assert cli_run(["voronoi", "--points", str(moved),
                        "--out", str(cplx)]) == 0
        assert cli_run(["no-limit-check", "--degree", "3",
                        "--out", str(rep)]) == 0
        outputs.append((moved.read_bytes(), cplx.read_bytes(), rep.read_bytes()))
    identical = outputs[0] == outputs[1]

    # round-trips of every format
    poly = box([0, 0], [1, 1]).with_tightened([0])
    C = _corpus.square_strip(2)
    K = _corpus.projective_plane()
    pres = higman_presentation()
    Y = random_sites(2, 4, seed=4)
    region = PolyhedralRegion([box([0, 0], [1, 1])])
    spans, records = span_assignment(C), None
    records = saturate(C, spans, parasitic_intersections(C, spans))
    ledger = blowup_plan(C, spans, records)
    trips = [
        parse_poly(format_poly(poly)).same_solution_set(poly),
        format_cplx(parse_cplx(format_cplx(C))) == format_cplx(C),
        parse_scx(format_scx(K)) == K,
        parse_grp(format_grp(pres)) == pres,
        parse_pts(format_pts(Y)).sites == Y.sites,
        format_rgn(parse_rgn(format_rgn(region))) == format_rgn(region),
        format_ledger(parse_ledger(format_ledger(ledger))) == format_ledger(ledger),
    ]
    crit.conclude(identical and all(trips),
                  "byte-identical CLI artifacts, 7 formats round-trip")
