import hashlib
import math
from fractions import Fraction
from importlib import resources

import pytest

from rulercompass.euclidplane import Point, dist_sq, on_circle
from rulercompass.exactangle import chord_sq, is_constructible, supported_ngon
from rulercompass.exactfield import TowerContext, to_decimal
from rulercompass.geoscript import Scene, UnboundNameError, interpret, parse
from rulercompass.polyverify import (
    EUCLID_VARIANT_FILE, PAPER_SCENE_FILE, TABLE_1, EdgeClaim, OpCount,
    build_euclid_variant, build_paper_scene, compare_op_counts, identify_ngon,
    load_script, op_count, verify_edge, verify_table,
)

GOLDEN_SHA256 = {
    PAPER_SCENE_FILE: "17495c4e6ab77e725748193d3c7024cbe957dd639e1afe15068919327c5e3f53",
    EUCLID_VARIANT_FILE: "0fc710dea0ae3997282d0813dca59fa4c7ec122f8747aa01e3d48f5cdf09cfa0",
}


@pytest.fixture(scope="module")
def paper():
    return build_paper_scene()


@pytest.fixture(scope="module")
def variant():
    return build_euclid_variant()


def test_scene_files_are_frozen():
    for name, digest in GOLDEN_SHA256.items():
        data = resources.files("rulercompass.scenes").joinpath(name).read_bytes()
        assert hashlib.sha256(data).hexdigest() == digest, name


def test_named_points(paper):
    ctx = paper.context
    r5 = ctx.rational(5).sqrt()
    assert paper.point("H") == Point.of(ctx, 0, 1)
    assert paper.point("G") == Point.of(ctx, Fraction(1, 2), 0)
    assert dist_sq(paper.point("H"), paper.point("J")) == (3 - r5) / 2
    assert paper.point("I") == Point((10 - 2 * r5).sqrt() / 4, (1 + r5) / 4)


def test_paper_tower_is_shallow(paper):
    assert paper.context.depth == 3


def test_variant_point_r(variant):
    r = variant.point("R")
    assert on_circle(r, variant.get("X"))
    ctx = variant.context
    assert r == Point(ctx.rational(3).sqrt() / 2, ctx.rational(Fraction(1, 2)))
    r5 = ctx.rational(5).sqrt()
    expected = (7 - r5 - (30 - 6 * r5).sqrt()) / 4
    assert dist_sq(r, variant.point("I")) == expected
    assert dist_sq(r, variant.point("I")) == chord_sq(15, ctx.one())


def test_verify_edge_examples(paper):
    assert verify_edge(paper, EdgeClaim(6, "E", "A")).passed
    assert verify_edge(paper, EdgeClaim(12, "H", "E")).passed
    wrong = verify_edge(paper, EdgeClaim(4, "E", "A"))
    assert wrong.on_circle_p and wrong.on_circle_q
    assert not wrong.chord_exact_match
    assert not wrong.passed


def test_verify_table_all_rows(paper):
    report = verify_table(paper)
    assert report.overall
    assert report.passed_count == 10
    assert [r.reconstructed for r in report.results] == [c.n == 5 for c in TABLE_1]


def test_every_endpoint_is_on_the_base_circle(paper):
    x = paper.get("X")
    for claim in TABLE_1:
        assert on_circle(paper.point(claim.p_name), x)
        assert on_circle(paper.point(claim.q_name), x)


def test_chords_agree_with_floating_point(paper):
    for claim in TABLE_1:
        d2 = dist_sq(paper.point(claim.p_name), paper.point(claim.q_name))
        value = math.sqrt(float(to_decimal(d2, 80).midpoint))
        assert abs(value - 2 * math.sin(math.pi / claim.n)) < 1e-12, claim.label


def test_misselected_k_fails_row_5():
    src = load_script(PAPER_SCENE_FILE)
    bad = src.replace("point K = intersect(IH, X) farthest H",
                      "point K = intersect(IH, X) nearest H")
    assert bad != src
    report = verify_table(interpret(parse(bad)))
    by_n = {r.claim.n: r for r in report.results}
    assert not by_n[5].passed
    assert not report.overall
    assert all(r.passed for n, r in by_n.items() if n != 5)


def test_missing_point_raises():
    with pytest.raises(UnboundNameError):
        verify_edge(Scene(), EdgeClaim(6, "E", "A"))


def test_identify_ngon_examples():
    ctx = TowerContext()
    r5 = ctx.rational(5).sqrt()
    one = ctx.one()
    assert identify_ngon((3 - r5) / 2, one, 64) == 10
    assert identify_ngon(chord_sq(60, one), one) == 60
    assert identify_ngon(ctx.rational(Fraction(7, 3)), one) is None
    assert identify_ngon(chord_sq(60, one), one, n_max=30) is None
    with pytest.raises(ValueError):
        identify_ngon(one, ctx.zero())


def test_identify_ngon_round_trip():
    ctx = TowerContext()
    for n in range(3, 65):
        if is_constructible(n) and supported_ngon(n):
            r2 = ctx.rational(Fraction(9, 4))
            assert identify_ngon(chord_sq(n, r2), r2) == n


def test_op_counts_are_frozen(paper, variant):
    cmp = compare_op_counts(paper, variant)
    assert cmp.paper_full == OpCount(10, 4, 15)
    assert cmp.paper_shared_prefix == OpCount(6, 4, 11)
    assert cmp.paper_pentadecagon_route == OpCount(9, 4, 14)
    assert cmp.variant_full == OpCount(7, 4, 12)
    assert cmp.variant_pentadecagon_route == OpCount(7, 4, 12)
    assert cmp.variant_minus_prefix == OpCount(1, 0, 1)
    assert cmp.variant_minus_paper_route == OpCount(-2, 0, -2)


def test_op_count_ignores_assertions(paper):
    plain = [s for s in paper.steps if s.kind != "assert"]
    assert op_count(plain) == op_count(paper)


@pytest.mark.parametrize("scale", [3, Fraction(5, 2), Fraction(1, 7)])
def test_scale_invariance(scale):
    scene = build_paper_scene(scale)
    assert scene.point("A") == Point.of(scene.context, scale, 0)
    assert verify_table(scene).overall
    assert op_count(scene) == op_count(build_paper_scene())
    assert verify_table(build_euclid_variant(scale), [EdgeClaim(15, "R", "I")]).overall
