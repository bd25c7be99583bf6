"""Building blocks and the two connected-sum families.

Betti numbers of every entry come from connected-sum arithmetic on the
underlying 4-manifolds and are stored as data.  :func:`verify_entry`
recomputes everything else from the diagram and compares.

Family members are assembled by a small planner.  It searches over orders
of corner sums and self sums, and over which corners to use, for a
construction whose divisor ends with the closed-form total parity
``(-1)**(n - 1 + l)``.  A corner sum or a self sum across two circles
always flips the total parity; a self sum splitting one circle flips it
only when that circle has parity +1.  When no construction reaches the
closed form the plain order (all corner sums, then self sums at the first
two corners in canonical order) is used and the mismatch is left for
:func:`verify_entry` to report.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Optional

from .diagram import (
    BoundaryCircle,
    FibrationDiagram,
    admits_stable_gcs,
    canonical_form,
    corner_connected_sum,
    euler_characteristic,
    self_connected_sum,
    total_parity,
    validate,
)

BLOCK_NAMES = ("cp2", "cp2bar", "s2xs2", "s4", "s3xs1_disk", "s3xs1_annulus",
               "sphere_bundle_family")


class InadmissibleError(ValueError):
    """The family member has negative Euler characteristic."""

    def __init__(self, name: str, chi: int):
        self.name = name
        self.chi = chi
        super().__init__(f"{name} has Euler characteristic {chi} < 0 and admits no "
                         "boundary Lefschetz fibration")


class DiscrepancyError(ValueError):
    def __init__(self, discrepancies):
        self.discrepancies = list(discrepancies)
        first = self.discrepancies[0]
        self.invariant = first.invariant
        super().__init__("; ".join(str(x) for x in self.discrepancies))


@dataclass(frozen=True)
class Discrepancy:
    invariant: str
    expected: object
    actual: object

    def __str__(self):
        return f"{self.invariant}: expected {self.expected}, diagram gives {self.actual}"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    diagram: FibrationDiagram
    betti: tuple[int, int, int, int, int, int]  # b0, b1, b2, b2+, b3, b4
    expected_corners: int
    expected_parity: int
    params: dict = field(default_factory=dict, compare=False)

    @property
    def chi(self) -> int:
        b0, b1, b2, _, b3, b4 = self.betti
        return b0 - b1 + b2 - b3 + b4


@dataclass(frozen=True)
class InvariantReport:
    chi: int
    corner_count: int
    lefschetz_count: int
    total_parity: int
    admits_gcs_total: bool
    admits_gcs_per_component: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


# -- building blocks ------------------------------------------------------------


def _disk(k: int, parity: int) -> FibrationDiagram:
    circle = BoundaryCircle.make((str(i) for i in range(k)), parity)
    return FibrationDiagram(genus=0, circles=(circle,))


def _cornerless(genus: int, h: int) -> FibrationDiagram:
    return FibrationDiagram(genus=genus, circles=tuple(BoundaryCircle.make((), 1) for _ in range(h)))


def _block(name, diagram, betti, parity, **params):
    d = FibrationDiagram(genus=diagram.genus, circles=diagram.circles,
                         history=({"op": "building_block", "name": name, **params},))
    return CatalogEntry(name, d, betti, d.corner_count, parity, params)


def building_block(name: str, g: Optional[int] = None, h: Optional[int] = None) -> CatalogEntry:
    """Toric and torus-action building blocks.

    ``sphere_bundle_family`` is the base of genus ``g`` with ``h`` holes
    fibred by (#(2g+h-1) S1xS2) x S1; it needs ``2g + h > 1``.
    """
    if name == "cp2":
        return _block(name, _disk(3, 1), (1, 0, 1, 1, 0, 1), 1)
    if name == "cp2bar":
        return _block(name, _disk(3, -1), (1, 0, 1, 0, 0, 1), -1)
    if name == "s2xs2":
        return _block(name, _disk(4, 1), (1, 0, 2, 1, 0, 1), 1)
    if name == "s4":
        return _block(name, _disk(2, -1), (1, 0, 0, 0, 0, 1), -1)
    if name == "s3xs1_disk":
        return _block(name, _cornerless(0, 1), (1, 1, 0, 0, 1, 1), 1)
    if name == "s3xs1_annulus":
        return _block(name, _cornerless(0, 2), (1, 1, 0, 0, 1, 1), 1)
    if name == "sphere_bundle_family":
        if g is None or h is None:
            raise ValueError("sphere_bundle_family needs g and h")
        if g < 0 or h < 0 or 2 * g + h <= 1:
            raise ValueError(f"sphere_bundle_family needs 2g + h > 1, got g={g}, h={h}")
        r = 2 * g + h - 1
        e = _block(name, _cornerless(g, h), (1, r + 1, 2 * r, r, r + 1, 1), 1, g=g, h=h)
        return replace(e, name=f"{name}({g},{h})")
    raise ValueError(f"unknown building block {name!r}")


# -- planner --------------------------------------------------------------------
# Abstract state: sorted tuple of (corner count, parity) per boundary circle.


def _split_options(k):
    for j in range(0, (k - 2) // 2 + 1):
        yield j, ((j, 1), (k - 2 - j, -1))


def _normal(state):
    return tuple(sorted(state))


def _parity(state):
    out = 1
    for _, e in state:
        out *= e
    return out


@lru_cache(maxsize=None)
def _plan(state, blocks, l, target):
    """Moves gluing all ``blocks`` with ``l`` self sums ending at total parity ``target``."""
    if not blocks and l == 0:
        return () if _parity(state) == target else None
    circles = list(state)
    for blk in sorted(set(blocks)):
        rest = list(blocks)
        rest.remove(blk)
        for sig in sorted(set(c for c in circles if c[0] >= 1)):
            new = list(circles)
            new.remove(sig)
            new.append((sig[0] + blk[0] - 2, -sig[1] * blk[1]))
            tail = _plan(_normal(new), tuple(rest), l, target)
            if tail is not None:
                return (("sum", sig, blk),) + tail
    if not l:
        return None
    sigs = sorted(set(circles))
    for x in range(len(sigs)):
        for y in range(x, len(sigs)):
            s1, s2 = sigs[x], sigs[y]
            if s1[0] < 1 or s2[0] < 1 or (s1 == s2 and circles.count(s1) < 2):
                continue
            new = list(circles)
            new.remove(s1)
            new.remove(s2)
            new.append((s1[0] + s2[0] - 2, -s1[1] * s2[1]))
            tail = _plan(_normal(new), blocks, l - 1, target)
            if tail is not None:
                return (("merge", s1, s2),) + tail
    # parity +1 splits flip the total parity, parity -1 splits keep it
    for sig in sorted(set(circles), key=lambda c: (-c[1], c[0])):
        if sig[0] < 2:
            continue
        for j, parts in _split_options(sig[0]):
            new = list(circles)
            new.remove(sig)
            new.extend(parts)
            tail = _plan(_normal(new), blocks, l - 1, target)
            if tail is not None:
                return (("split", sig, j),) + tail
    return None


def _find_circle(d, sig, skip=None):
    for i, c in enumerate(d.circles):
        if i != skip and (len(c.corners), c.parity) == sig:
            return i
    raise AssertionError(f"planner state out of sync: no circle {sig}")


def _signature(entry):
    (c,) = entry.diagram.circles
    return (len(c.corners), c.parity)


def _execute(start: CatalogEntry, pool: list[CatalogEntry], moves) -> FibrationDiagram:
    d = start.diagram
    pool = list(pool)
    for move in moves:
        if move[0] == "sum":
            _, sig, blk = move
            other = next(e for e in pool if _signature(e) == blk)
            pool.remove(other)
            i = _find_circle(d, sig)
            d = corner_connected_sum(d, d.circles[i].corners[0],
                                     other.diagram, other.diagram.circles[0].corners[0])
        elif move[0] == "merge":
            _, s1, s2 = move
            i = _find_circle(d, s1)
            j = _find_circle(d, s2, skip=i)
            d = self_connected_sum(d, d.circles[i].corners[0], d.circles[j].corners[0])
        else:
            _, sig, between = move
            corners = d.circles[_find_circle(d, sig)].corners
            d = self_connected_sum(d, corners[0], corners[between + 1])
    return d


def _fallback(start: CatalogEntry, pool: list[CatalogEntry], l: int) -> FibrationDiagram:
    d = start.diagram
    for other in pool:
        d = corner_connected_sum(d, d.corner_ids()[0], other.diagram,
                                 other.diagram.corner_ids()[0])
    for _ in range(l):
        d = canonical_form(d)
        first, second = d.corner_ids()[:2]
        d = self_connected_sum(d, first, second)
    return d


def _assemble(blocks: list[CatalogEntry], l: int, target: int) -> tuple[FibrationDiagram, str]:
    sigs = [_signature(b) for b in blocks]
    for first in sorted(set(sigs)):
        rest = list(sigs)
        rest.remove(first)
        moves = _plan((first,), tuple(sorted(rest)), l, target)
        if moves is not None:
            start = next(b for b in blocks if _signature(b) == first)
            pool = list(blocks)
            pool.remove(start)
            return _execute(start, pool, moves), "planned"
    return _fallback(blocks[0], blocks[1:], l), "fallback"


def _check_counts(**counts):
    for key, val in counts.items():
        if not isinstance(val, int) or val < 0:
            raise ValueError(f"{key} must be a non-negative integer, got {val!r}")


def _family_entry(name, blocks, l, betti, corners, parity, params):
    d, strategy = _assemble(blocks, l, parity)
    hist = ({"op": "family", "name": name, "strategy": strategy, **params},) + tuple(d.history)
    d = FibrationDiagram(d.genus, d.circles, d.lefschetz, d.homologically_essential,
                         d.fibres_connected, d.oriented, hist)
    return CatalogEntry(name, d, betti, corners, parity, params)


def family_X(n: int, l: int) -> CatalogEntry:
    """#n(S2xS2) # l(S1xS3)."""
    _check_counts(n=n, l=l)
    name = f"X({n},{l})"
    if l > n + 1:
        raise InadmissibleError(name, 2 + 2 * n - 2 * l)
    blocks = [building_block("s2xs2") for _ in range(n)] or [building_block("s4")]
    betti = (1, l, 2 * n, n, l, 1)
    return _family_entry(name, blocks, l, betti, 2 * n + 2 - 2 * l, (-1) ** (n - 1 + l),
                         {"n": n, "l": l})


def family_Y(n: int, m: int, l: int) -> CatalogEntry:
    """#n CP2 # m CP2bar # l(S1xS3)."""
    _check_counts(n=n, m=m, l=l)
    if n + m < 1:
        raise ValueError("family Y needs n + m >= 1")
    name = f"Y({n},{m},{l})"
    if l > (n + m + 2) // 2:
        raise InadmissibleError(name, 2 + n + m - 2 * l)
    blocks = [building_block("cp2") for _ in range(n)] + [building_block("cp2bar") for _ in range(m)]
    betti = (1, l, n + m, n, l, 1)
    return _family_entry(name, blocks, l, betti, n + m + 2 - 2 * l, (-1) ** (n - 1 + l),
                         {"n": n, "m": m, "l": l})


def lookup(name: str, **params) -> CatalogEntry:
    """Dispatch ``X``/``Y``/block names with keyword parameters."""
    if name == "X":
        return family_X(params["n"], params["l"])
    if name == "Y":
        return family_Y(params["n"], params["m"], params["l"])
    return building_block(name, params.get("g"), params.get("h"))


# -- verification ---------------------------------------------------------------


def report(d: FibrationDiagram) -> InvariantReport:
    return InvariantReport(
        chi=euler_characteristic(d),
        corner_count=d.corner_count,
        lefschetz_count=d.lefschetz_count,
        total_parity=total_parity(d),
        admits_gcs_total=admits_stable_gcs(d, "total"),
        admits_gcs_per_component=admits_stable_gcs(d, "per_component"),
    )


def find_discrepancies(e: CatalogEntry) -> list[Discrepancy]:
    violations = validate(e.diagram)
    if violations:
        return [Discrepancy("validity", [], violations)]
    r = report(e.diagram)
    _, b1, _, b2plus, _, _ = e.betti
    out = []
    if r.corner_count != e.expected_corners:
        out.append(Discrepancy("corner_count", e.expected_corners, r.corner_count))
    if r.chi != e.chi:
        out.append(Discrepancy("chi", e.chi, r.chi))
    if r.total_parity != e.expected_parity:
        out.append(Discrepancy("total_parity", e.expected_parity, r.total_parity))
    almost_complex = (1 - b1 + b2plus) % 2 == 0
    if r.admits_gcs_total != almost_complex:
        out.append(Discrepancy("admits_gcs_total", almost_complex, r.admits_gcs_total))
    return out


def verify_entry(e: CatalogEntry) -> InvariantReport:
    """Invariant report from the diagram; raises :class:`DiscrepancyError` on mismatch."""
    problems = find_discrepancies(e)
    if problems:
        raise DiscrepancyError(problems)
    return report(e.diagram)


def manifest(n_max: int = 6, m_max: int = 6) -> list[dict]:
    """Every building block and admissible family member with expected invariants."""
    wanted = [dict(name=b) for b in BLOCK_NAMES if b != "sphere_bundle_family"]
    wanted += [dict(name="sphere_bundle_family", g=g, h=h) for g, h in ((0, 2), (1, 0), (1, 1), (1, 2), (2, 3))]
    wanted += [dict(name="X", n=n, l=l) for n in range(n_max + 1) for l in range(n + 2)]
    wanted += [dict(name="Y", n=n, m=m, l=l)
               for n in range(n_max + 1) for m in range(m_max + 1) if n + m
              for l in range((n + m + 2) // 2 + 1)]
    out = []
    for item in wanted:
        params = {k: v for k, v in item.items() if k != "name"}
        e = lookup(item["name"], **params)
        out.append(dict(item, label=e.name, betti=list(e.betti), chi=e.chi,
                        corner_count=e.expected_corners, total_parity=e.expected_parity))
    return out


def verify_manifest_item(item: dict) -> dict:
    """Build the entry named by a manifest item and check it, as a JSON-ready dict."""
    params = {k: item[k] for k in ("n", "m", "l", "g", "h") if k in item}
    e = lookup(item["name"], **params)
    problems = find_discrepancies(e)
    for key, attr in (("betti", "betti"), ("corner_count", "expected_corners"),
                      ("total_parity", "expected_parity")):
        if key not in item:
            continue
        expected = list(item[key]) if key == "betti" else item[key]
        actual = list(getattr(e, attr)) if key == "betti" else getattr(e, attr)
        if expected != actual:
            problems.append(Discrepancy(f"manifest_{key}", expected, actual))
    out = {"entry": e.name, "pass": not problems,
           "discrepancies": [dict(invariant=p.invariant, expected=p.expected, actual=p.actual)
                             for p in problems]}
    if not validate(e.diagram):
        out["report"] = report(e.diagram).to_json()
    return out
