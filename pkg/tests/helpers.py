"""Random diagram generators shared by the property and acceptance tests."""

import random
from math import gcd

from blfkit.catalog import building_block
from blfkit.diagram import (
    BoundaryCircle,
    DualPairEvidence,
    FibrationDiagram,
    LefschetzPoint,
    corner_connected_sum,
    self_connected_sum,
    trade_corner_to_lefschetz,
    trade_lefschetz_to_corner,
)
from blfkit.homology2 import Cycle

GLUABLE_BLOCKS = ("cp2", "cp2bar", "s2xs2", "s4")
ALL_BLOCKS = GLUABLE_BLOCKS + ("s3xs1_disk", "s3xs1_annulus")


def random_primitive(rng, bound=50):
    while True:
        a, b = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if (a, b) != (0, 0) and gcd(abs(a), abs(b)) == 1:
            return Cycle(a, b)


def random_diagram(rng, max_circles=3, max_corners=5, max_lefschetz=3, connected=None):
    """An arbitrary valid diagram, not necessarily realised by a fibration."""
    circles = []
    n = 0
    for _ in range(rng.randint(0, max_circles)):
        k = rng.randint(0, max_corners)
        ids = [f"c{n + j}" for j in range(k)]
        n += k
        circles.append(BoundaryCircle.make(ids, rng.choice((1, -1))))
    points = []
    for j in range(rng.randint(0, max_lefschetz)):
        cycle = random_primitive(rng, 5) if rng.random() < 0.7 else None
        tag = rng.choice(("B0", "B1", "x")) if cycle is not None and rng.random() < 0.7 else None
        points.append(LefschetzPoint(f"p{j}", cycle, tag))
    rng.shuffle(points)
    history = tuple({"op": "random", "step": i} for i in range(rng.randint(0, 2)))
    return FibrationDiagram(
        genus=rng.randint(0, 2),
        circles=tuple(circles),
        lefschetz=tuple(points),
        homologically_essential=rng.random() < 0.8,
        fibres_connected=True if connected is None else connected,
        history=history,
    )


def random_surgery(rng, steps=None):
    """Random surgery sequence from catalog blocks.

    Returns the diagram and the Euler characteristic of the total space
    tracked by 4-manifold arithmetic (chi(M1 # M2) = chi1 + chi2 - 2,
    chi(M # S1xS3) = chi - 2, trades keep the total space).
    """
    block = building_block(rng.choice(GLUABLE_BLOCKS))
    d, chi = block.diagram, block.chi
    for _ in range(steps if steps is not None else rng.randint(1, 8)):
        op = rng.choice(("sum", "self", "smooth", "singularize"))
        corners = d.corner_ids()
        if op == "sum" and corners:
            other = building_block(rng.choice(GLUABLE_BLOCKS))
            d = corner_connected_sum(d, rng.choice(corners), other.diagram,
                                     rng.choice(other.diagram.corner_ids()))
            chi += other.chi - 2
        elif op == "self" and len(corners) >= 2:
            a, b = rng.sample(corners, 2)
            d = self_connected_sum(d, a, b)
            chi -= 2
        elif op == "smooth" and corners:
            d = trade_corner_to_lefschetz(d, rng.choice(corners))
        elif op == "singularize" and d.lefschetz and d.circles:
            p = rng.choice(d.lefschetz)
            if p.cycle is not None:
                ev = DualPairEvidence(p.cycle, Cycle(1, 0), p.basis_tag)
            else:
                ev = True
            d = trade_lefschetz_to_corner(d, p.id, rng.randrange(len(d.circles)), ev)
    return d, chi


def rng_for(seed):
    return random.Random(seed)
