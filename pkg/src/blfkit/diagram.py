"""Combinatorial base diagrams of boundary Lefschetz fibrations.

A diagram records the base surface (genus plus boundary circles), the
corners on each boundary circle, the divisor component lying over each
circle, and the Lefschetz critical values in the interior.  The surgery
operations return new diagrams; nothing is mutated in place.

Parity is tracked per divisor component as an aggregate.  Individual
corner intersection indices are not stored because only the component
products have known transformation rules under gluing.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence, Union

from .homology2 import Cycle, as_cycle, is_dual_pair, is_primitive, same_cycle

NECKLACE = "necklace"
TORUS = "torus"
KLEIN = "klein_bottle"
KINDS = (NECKLACE, TORUS, KLEIN)

# Used by canonical ordering of circles with equal corner count and parity.
_KIND_ORDER = {NECKLACE: 0, TORUS: 1, KLEIN: 2}


class DiagramError(ValueError):
    """A surgery or query could not be carried out on the given diagram."""


class ValidationError(DiagramError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("invalid diagram: " + "; ".join(self.violations))


class DualPairError(DiagramError):
    """Missing or failing evidence that two vanishing cycles form a dual pair."""


@dataclass(frozen=True)
class DivisorComponent:
    kind: str
    parity: int
    k: Optional[int] = None

    @classmethod
    def for_corners(cls, k: int, parity: int) -> "DivisorComponent":
        """The component over a circle with ``k`` corners and given parity."""
        if k > 0:
            return cls(NECKLACE, parity, k)
        return cls(TORUS, 1) if parity == 1 else cls(KLEIN, -1)


@dataclass(frozen=True)
class BoundaryCircle:
    corners: tuple[str, ...]
    component: DivisorComponent
    coorientable: bool = True

    @classmethod
    def make(cls, corners: Iterable[str], parity: int) -> "BoundaryCircle":
        corners = tuple(corners)
        comp = DivisorComponent.for_corners(len(corners), parity)
        return cls(corners, comp, comp.kind != KLEIN)

    @property
    def parity(self) -> int:
        return self.component.parity


@dataclass(frozen=True)
class LefschetzPoint:
    id: str
    cycle: Optional[Cycle] = None
    basis_tag: Optional[str] = None


@dataclass(frozen=True)
class DualPairEvidence:
    """Vanishing cycles of a Lefschetz and an elliptic fibre in one basis."""

    lefschetz_cycle: Cycle
    elliptic_cycle: Cycle
    basis_tag: str


@dataclass(frozen=True)
class FibrationDiagram:
    genus: int = 0
    circles: tuple[BoundaryCircle, ...] = ()
    lefschetz: tuple[LefschetzPoint, ...] = ()
    homologically_essential: bool = True
    fibres_connected: bool = True
    oriented: bool = True
    history: tuple = field(default=(), compare=False)

    @property
    def corner_count(self) -> int:
        return sum(len(c.corners) for c in self.circles)

    @property
    def lefschetz_count(self) -> int:
        return len(self.lefschetz)

    @property
    def base_euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.circles)

    def corner_ids(self) -> list[str]:
        return [cid for c in self.circles for cid in c.corners]


# -- validation ---------------------------------------------------------------


def validate(d: FibrationDiagram) -> list[str]:
    """List every violated structural invariant; empty means valid."""
    out = []
    if not d.oriented:
        out.append("diagram is not oriented")
    if d.genus < 0:
        out.append(f"negative genus {d.genus}")
    seen = set()
    for i, circ in enumerate(d.circles):
        comp = circ.component
        k = len(circ.corners)
        if comp.kind not in KINDS:
            out.append(f"circle {i}: unknown component kind {comp.kind!r}")
            continue
        if comp.parity not in (1, -1):
            out.append(f"circle {i}: parity {comp.parity} is not +-1")
        if comp.kind == NECKLACE:
            if comp.k != k or k == 0:
                out.append(f"circle {i}: necklace({comp.k}) on a circle with {k} corners")
        else:
            if k:
                out.append(f"circle {i}: smooth {comp.kind} component on a circle with {k} corners")
            if comp.kind == KLEIN and comp.parity != -1:
                out.append(f"circle {i}: klein_bottle component must have parity -1")
            if comp.kind == TORUS and comp.parity != 1:
                out.append(f"circle {i}: torus component must have parity +1")
            if circ.coorientable != (comp.kind == TORUS):
                out.append(f"circle {i}: coorientable flag disagrees with {comp.kind}")
        for cid in circ.corners:
            if cid in seen:
                out.append(f"duplicate corner id {cid!r}")
            seen.add(cid)
    lids = set()
    for p in d.lefschetz:
        if p.id in lids:
            out.append(f"duplicate lefschetz id {p.id!r}")
        lids.add(p.id)
        if p.cycle is not None:
            a, b = p.cycle
            if (a, b) == (0, 0) or not is_primitive(p.cycle):
                out.append(f"lefschetz {p.id!r}: cycle {tuple(p.cycle)} is not primitive")
    return out


def _check(d: FibrationDiagram) -> None:
    violations = validate(d)
    if violations:
        raise ValidationError(violations)


def _check_gluable(d: FibrationDiagram) -> None:
    _check(d)
    if not d.fibres_connected:
        raise DiagramError("surgery needs a fibration with connected fibres")


# -- invariants ---------------------------------------------------------------


def euler_characteristic(d: FibrationDiagram) -> int:
    """Euler characteristic of the total space: corners plus Lefschetz points."""
    _check(d)
    return d.corner_count + d.lefschetz_count


def total_parity(d: FibrationDiagram) -> int:
    _check(d)
    result = 1
    for circ in d.circles:
        result *= circ.parity
    return result


def admits_elliptic_symplectic(d: FibrationDiagram) -> bool:
    _check(d)
    return d.homologically_essential and d.fibres_connected


def admits_stable_gcs(d: FibrationDiagram, mode: str = "per_component") -> bool:
    """Residue-level criterion for an induced stable generalized complex structure.

    ``per_component`` asks every divisor component to have parity +1,
    ``total`` only asks the product of all parities to be +1.
    """
    mode = mode.replace("-", "_")
    if mode not in ("per_component", "total"):
        raise ValueError(f"unknown mode {mode!r}")
    if not admits_elliptic_symplectic(d):
        return False
    if mode == "total":
        return total_parity(d) == 1
    return all(c.parity == 1 for c in d.circles)


# -- helpers ------------------------------------------------------------------


def locate_corner(d: FibrationDiagram, ref) -> tuple[int, int]:
    """(circle index, position) of a corner id."""
    ref = str(ref)
    for i, circ in enumerate(d.circles):
        if ref in circ.corners:
            return i, circ.corners.index(ref)
    raise DiagramError(f"no corner with id {ref!r}")


def _locate_lefschetz(d: FibrationDiagram, ref) -> int:
    for i, p in enumerate(d.lefschetz):
        if p.id == str(ref):
            return i
    raise DiagramError(f"no lefschetz point with id {ref!r}")


def _rotate_after(corners: tuple[str, ...], pos: int) -> list[str]:
    """Corners read cyclically starting just after ``pos``, excluding it."""
    return list(corners[pos + 1:]) + list(corners[:pos])


def _fresh(prefix: str, used: Iterable[str]) -> str:
    used = set(used)
    i = 0
    while f"{prefix}{i}" in used:
        i += 1
    return f"{prefix}{i}"


def _renumber_corners(circles: Sequence[BoundaryCircle]) -> tuple[BoundaryCircle, ...]:
    out, n = [], 0
    for circ in circles:
        ids = tuple(str(n + j) for j in range(len(circ.corners)))
        n += len(ids)
        out.append(replace(circ, corners=ids))
    return tuple(out)


def _record(d: FibrationDiagram, **entry) -> tuple:
    return tuple(d.history) + (entry,)


# -- surgeries ----------------------------------------------------------------


def corner_connected_sum(d1: FibrationDiagram, corner_ref1, d2: FibrationDiagram,
                         corner_ref2) -> FibrationDiagram:
    """Oriented corner connected sum at one corner of each diagram.

    The two boundary circles through the chosen corners merge into one
    circle carrying ``k1 + k2 - 2`` corners and parity ``-e1 * e2``.
    """
    _check_gluable(d1)
    _check_gluable(d2)
    i1, p1 = locate_corner(d1, corner_ref1)
    i2, p2 = locate_corner(d2, corner_ref2)
    c1, c2 = d1.circles[i1], d2.circles[i2]
    merged = BoundaryCircle.make(
        _rotate_after(c1.corners, p1) + _rotate_after(c2.corners, p2),
        -c1.parity * c2.parity,
    )
    circles = d1.circles[:i1] + (merged,) + d1.circles[i1 + 1:] + d2.circles[:i2] + d2.circles[i2 + 1:]

    # keep d1's labels, rename colliding labels coming from d2
    lids = {p.id for p in d1.lefschetz}
    tags = {p.basis_tag for p in d1.lefschetz if p.basis_tag is not None}
    tag_map = {}
    lefschetz = list(d1.lefschetz)
    for p in d2.lefschetz:
        pid = p.id if p.id not in lids else _fresh("L", lids | {q.id for q in d2.lefschetz})
        lids.add(pid)
        tag = p.basis_tag
        if tag is not None:
            if tag not in tag_map:
                tag_map[tag] = tag if tag not in tags else _fresh(
                    "B", tags | {q.basis_tag for q in d2.lefschetz if q.basis_tag})
                tags.add(tag_map[tag])
            tag = tag_map[tag]
        lefschetz.append(LefschetzPoint(pid, p.cycle, tag))

    return FibrationDiagram(
        genus=d1.genus + d2.genus,
        circles=_renumber_corners(circles),
        lefschetz=tuple(lefschetz),
        homologically_essential=d1.homologically_essential and d2.homologically_essential,
        fibres_connected=True,
        history=_record(d1, op="corner_connected_sum", at=[str(corner_ref1), str(corner_ref2)],
                        other=list(d2.history), parity=merged.parity),
    )


def self_connected_sum(d: FibrationDiagram, corner_ref1, corner_ref2) -> FibrationDiagram:
    """Self connected sum at two distinct corners; the total space gains an S1xS3 summand.

    Corners on different circles: the circles merge (genus + 1) with parity
    ``-e1 * e2``.  Corners on one circle: the circle splits in two, the
    corners strictly between the refs (in cyclic order) going to the first
    new circle.  Only the product of the two new parities is forced (-1);
    the circle with fewer corners gets +1, the first one on a tie.
    """
    _check_gluable(d)
    if str(corner_ref1) == str(corner_ref2):
        raise DiagramError("self connected sum needs two distinct corners")
    i1, p1 = locate_corner(d, corner_ref1)
    i2, p2 = locate_corner(d, corner_ref2)
    circles = list(d.circles)
    genus = d.genus
    if i1 != i2:
        c1, c2 = circles[i1], circles[i2]
        merged = BoundaryCircle.make(
            _rotate_after(c1.corners, p1) + _rotate_after(c2.corners, p2),
            -c1.parity * c2.parity,
        )
        circles[i1] = merged
        del circles[i2]
        genus += 1
        parities = [merged.parity]
    else:
        corners = d.circles[i1].corners
        k = len(corners)
        steps = (p2 - p1) % k
        between = [corners[(p1 + s) % k] for s in range(1, steps)]
        rest = [corners[(p2 + s) % k] for s in range(1, k - steps)]
        first_positive = len(between) <= len(rest)
        a = BoundaryCircle.make(between, 1 if first_positive else -1)
        b = BoundaryCircle.make(rest, -1 if first_positive else 1)
        circles[i1:i1 + 1] = [a, b]
        parities = [a.parity, b.parity]
    return replace(
        d,
        genus=genus,
        circles=_renumber_corners(circles),
        history=_record(d, op="self_connected_sum", at=[str(corner_ref1), str(corner_ref2)],
                        split=i1 == i2, parities=parities, summand="S1xS3"),
    )


def trade_corner_to_lefschetz(d: FibrationDiagram, corner_ref,
                              record_cycles: bool = True) -> FibrationDiagram:
    """Smooth out a corner, adding one Lefschetz singularity.

    With ``record_cycles`` the new point carries the vanishing cycle (1, 1)
    in a fresh basis in which the adjacent elliptic vanishing cycle is
    (1, 0); the pair is recorded in the history entry.
    """
    _check_gluable(d)
    i, pos = locate_corner(d, corner_ref)
    circ = d.circles[i]
    corners = circ.corners[:pos] + circ.corners[pos + 1:]
    circles = list(d.circles)
    circles[i] = BoundaryCircle.make(corners, circ.parity)

    pid = _fresh("L", (p.id for p in d.lefschetz))
    entry = dict(op="trade_corner_to_lefschetz", corner=str(corner_ref), lefschetz=pid)
    if record_cycles:
        tag = _fresh("B", (p.basis_tag for p in d.lefschetz if p.basis_tag))
        point = LefschetzPoint(pid, Cycle(1, 1), tag)
        entry.update(basis_tag=tag, lefschetz_cycle=[1, 1], elliptic_cycle=[1, 0])
    else:
        point = LefschetzPoint(pid)
    return replace(
        d,
        circles=_renumber_corners(circles),
        lefschetz=d.lefschetz + (point,),
        history=_record(d, **entry),
    )


def trade_lefschetz_to_corner(d: FibrationDiagram, lefschetz_ref, circle_ref: int,
                              evidence: Union[DualPairEvidence, bool, None]) -> FibrationDiagram:
    """Trade a Lefschetz singularity for a new corner on ``circle_ref``.

    ``evidence`` is either a :class:`DualPairEvidence` or ``True`` as an
    explicit assertion by the caller.  Cycles are only compared inside one
    basis tag.
    """
    _check_gluable(d)
    j = _locate_lefschetz(d, lefschetz_ref)
    point = d.lefschetz[j]
    if not isinstance(circle_ref, int) or not 0 <= circle_ref < len(d.circles):
        raise DiagramError(f"no boundary circle {circle_ref!r}")

    if evidence is True:
        pass
    elif isinstance(evidence, DualPairEvidence):
        if point.basis_tag is not None and evidence.basis_tag != point.basis_tag:
            raise DualPairError(
                f"evidence is in basis {evidence.basis_tag!r}, point {point.id!r} in {point.basis_tag!r}")
        if point.cycle is not None and not same_cycle(point.cycle, evidence.lefschetz_cycle):
            raise DualPairError(f"evidence cycle differs from the vanishing cycle of {point.id!r}")
        try:
            ok = is_dual_pair(evidence.lefschetz_cycle, evidence.elliptic_cycle)
        except ValueError as exc:
            raise DualPairError(str(exc)) from exc
        if not ok:
            raise DualPairError("vanishing cycles do not form a dual pair")
    else:
        raise DualPairError("dual pair evidence is required")

    circ = d.circles[circle_ref]
    new_id = _fresh("n", d.corner_ids())
    circles = list(d.circles)
    circles[circle_ref] = BoundaryCircle.make(circ.corners + (new_id,), circ.parity)
    return replace(
        d,
        circles=_renumber_corners(circles),
        lefschetz=d.lefschetz[:j] + d.lefschetz[j + 1:],
        history=_record(d, op="trade_lefschetz_to_corner", lefschetz=point.id,
                        circle=circle_ref, asserted=evidence is True),
    )


# -- canonical form -------------------------------------------------------------


def _circle_key(c: BoundaryCircle):
    return (len(c.corners), c.parity, _KIND_ORDER[c.component.kind])


def _cycle_key(p: LefschetzPoint):
    if p.cycle is None:
        return (1, 0, 0)
    c = as_cycle(p.cycle).normalized()
    return (0, c.a, c.b)


def canonical_form(d: FibrationDiagram) -> FibrationDiagram:
    """Relabelled, sorted representative; history is carried along untouched."""
    _check(d)
    circles = sorted(
        (BoundaryCircle.make(c.corners, c.parity) for c in d.circles), key=_circle_key)

    # a tag is determined up to symmetry by the multiset of its cycles
    signature: dict[str, list] = {}
    for p in d.lefschetz:
        if p.basis_tag is not None:
            signature.setdefault(p.basis_tag, []).append(_cycle_key(p))
    order = sorted(signature, key=lambda t: sorted(signature[t]))
    tags = {t: f"B{i}" for i, t in enumerate(order)}
    points = d.lefschetz
    points = sorted(
        (LefschetzPoint(p.id,
                        None if p.cycle is None else as_cycle(p.cycle).normalized(),
                        None if p.basis_tag is None else tags[p.basis_tag])
         for p in points),
        key=lambda p: (_cycle_key(p), p.basis_tag is None, p.basis_tag or ""),
    )
    points = tuple(replace(p, id=f"L{i}") for i, p in enumerate(points))
    return replace(d, circles=_renumber_corners(circles), lefschetz=points)


def is_isomorphic(d1: FibrationDiagram, d2: FibrationDiagram) -> bool:
    return canonical_form(d1) == canonical_form(d2)
