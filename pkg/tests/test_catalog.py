from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from blfkit.catalog import (
    BLOCK_NAMES,
    CatalogEntry,
    DiscrepancyError,
    InadmissibleError,
    building_block,
    family_X,
    family_Y,
    find_discrepancies,
    lookup,
    manifest,
    report,
    verify_entry,
    verify_manifest_item,
)
from blfkit.diagram import BoundaryCircle, canonical_form, total_parity, validate

# members whose closed-form parity no construction reaches
UNREACHABLE = {"X(0,1)"} | {f"Y(0,{m},1)" for m in range(1, 7)}


def flip_parity(d):
    c = d.circles[0]
    return replace(d, circles=(BoundaryCircle.make(c.corners, -c.parity),) + d.circles[1:])


def add_corner(d):
    c = d.circles[0]
    return replace(d, circles=(BoundaryCircle.make(c.corners + ("extra",), c.parity),) + d.circles[1:])


@pytest.mark.parametrize("name, corners, parity, chi", [
    ("cp2", 3, 1, 3), ("cp2bar", 3, -1, 3), ("s2xs2", 4, 1, 4), ("s4", 2, -1, 2),
    ("s3xs1_disk", 0, 1, 0), ("s3xs1_annulus", 0, 1, 0)])
def test_building_blocks(name, corners, parity, chi):
    e = building_block(name)
    assert e.diagram.corner_count == corners
    assert total_parity(e.diagram) == parity
    assert e.chi == chi == report(e.diagram).chi
    assert verify_entry(e).corner_count == corners


def test_annulus_has_two_circles():
    assert len(building_block("s3xs1_annulus").diagram.circles) == 2


@pytest.mark.parametrize("g, h", [(0, 2), (1, 0), (1, 1), (2, 3), (3, 0)])
def test_sphere_bundle_family(g, h):
    e = building_block("sphere_bundle_family", g, h)
    assert e.diagram.genus == g and len(e.diagram.circles) == h
    assert e.chi == 0 == report(e.diagram).chi
    assert find_discrepancies(e) == []


@pytest.mark.parametrize("g, h", [(0, 0), (0, 1), (None, 2), (-1, 4)])
def test_sphere_bundle_family_rejects(g, h):
    with pytest.raises(ValueError):
        building_block("sphere_bundle_family", g, h)


def test_unknown_names():
    with pytest.raises(ValueError):
        building_block("k3")
    with pytest.raises(ValueError):
        family_Y(0, 0, 0)
    with pytest.raises(ValueError):
        family_X(-1, 0)


def test_family_x_examples():
    e = family_X(1, 0)
    assert (e.diagram.corner_count, total_parity(e.diagram), e.chi) == (4, 1, 4)
    e = family_X(2, 1)
    assert (e.diagram.corner_count, total_parity(e.diagram), e.chi) == (4, 1, 4)
    assert e.betti == (1, 1, 4, 2, 1, 1)
    e = family_X(3, 4)
    assert e.diagram.corner_count == 0 and e.chi == 0


def test_family_y_examples():
    e = family_Y(1, 1, 0)
    assert (e.diagram.corner_count, total_parity(e.diagram)) == (4, 1)
    e = family_Y(2, 1, 2)
    assert e.diagram.corner_count == 1 and e.chi == 1
    assert find_discrepancies(e) == []


@pytest.mark.parametrize("n, l, chi", [(1, 3, -2), (0, 2, -2), (2, 5, -4)])
def test_family_x_inadmissible(n, l, chi):
    with pytest.raises(InadmissibleError) as info:
        family_X(n, l)
    assert info.value.chi == chi


def test_family_y_inadmissible():
    with pytest.raises(InadmissibleError) as info:
        family_Y(1, 0, 2)
    assert info.value.chi == -1


def test_known_unreachable_member_reports_parity():
    e = family_Y(0, 1, 1)
    assert e.expected_parity == 1
    assert total_parity(e.diagram) == -1
    assert {p.invariant for p in find_discrepancies(e)} == {"total_parity", "admits_gcs_total"}
    with pytest.raises(DiscrepancyError) as info:
        verify_entry(e)
    assert info.value.invariant == "total_parity"


@given(st.integers(0, 6), st.data())
def test_family_x_closed_forms(n, data):
    l = data.draw(st.integers(0, n + 1))
    e = family_X(n, l)
    assert validate(e.diagram) == []
    assert e.diagram.corner_count == 2 * n + 2 - 2 * l
    assert report(e.diagram).chi == 2 + 2 * n - 2 * l == e.chi
    if e.name not in UNREACHABLE:
        assert total_parity(e.diagram) == (-1) ** (n - 1 + l)
        assert find_discrepancies(e) == []


@given(st.integers(0, 6), st.integers(0, 6), st.data())
def test_family_y_closed_forms(n, m, data):
    if n + m == 0:
        return
    l = data.draw(st.integers(0, (n + m + 2) // 2))
    e = family_Y(n, m, l)
    assert validate(e.diagram) == []
    assert e.diagram.corner_count == n + m + 2 - 2 * l
    assert report(e.diagram).chi == 2 + n + m - 2 * l
    if e.name not in UNREACHABLE:
        assert total_parity(e.diagram) == (-1) ** (n - 1 + l)
        assert find_discrepancies(e) == []


@given(st.integers(0, 4), st.data())
def test_family_builds_are_deterministic(n, data):
    l = data.draw(st.integers(0, n + 1))
    assert family_X(n, l).diagram == family_X(n, l).diagram
    assert family_X(n, l).diagram.history == family_X(n, l).diagram.history


def test_family_history_records_strategy():
    h = family_X(2, 1).diagram.history
    assert h[0]["op"] == "family" and h[0]["strategy"] in ("planned", "fallback")


def test_mutations_are_flagged():
    e = family_X(2, 1)
    assert [p.invariant for p in find_discrepancies(replace(e, diagram=flip_parity(e.diagram)))] \
        == ["total_parity", "admits_gcs_total"]
    assert {p.invariant for p in find_discrepancies(replace(e, diagram=add_corner(e.diagram)))} \
        == {"corner_count", "chi"}
    assert [p.invariant for p in find_discrepancies(replace(e, expected_corners=7))] == ["corner_count"]


def test_invalid_diagram_is_a_discrepancy():
    e = building_block("cp2")
    c = e.diagram.circles[0]
    bad = replace(e.diagram, circles=(BoundaryCircle(c.corners + c.corners[:1], c.component),))
    assert find_discrepancies(replace(e, diagram=bad))[0].invariant == "validity"


def test_lookup():
    assert lookup("X", n=1, l=0).name == "X(1,0)"
    assert lookup("Y", n=1, m=2, l=0).name == "Y(1,2,0)"
    assert lookup("sphere_bundle_family", g=1, h=0).params == {"g": 1, "h": 0}
    assert isinstance(lookup("cp2"), CatalogEntry)


def test_manifest_contents():
    items = manifest(2, 2)
    labels = [i["label"] for i in items]
    assert len(labels) == len(set(labels))
    assert set(BLOCK_NAMES) <= {i["name"] for i in items}
    assert "X(2,3)" in labels and "X(2,4)" not in labels
    for item in items:
        res = verify_manifest_item(item)
        assert res["pass"] == (item["label"] not in UNREACHABLE)


def test_manifest_item_mismatch():
    item = dict(name="X", n=1, l=0, corner_count=2)
    res = verify_manifest_item(item)
    assert not res["pass"]
    assert res["discrepancies"][0]["invariant"] == "manifest_corner_count"


def test_canonical_form_of_family_is_stable():
    d = family_Y(2, 2, 1).diagram
    assert canonical_form(canonical_form(d)) == canonical_form(d)
