"""Constant-coefficient elliptic 2-forms in the chart around a D[2] point.

The chart frame is ``(dlog r1, dtheta1, dlog r2, dtheta2)`` with
``z_j = r_j exp(i theta_j)`` and the local fibration ``(|z1|^2, |z2|^2)``.
Coefficients are exact :class:`fractions.Fraction` values.  Floating point
only appears in the two sample-based model checks at the bottom.
"""

from __future__ import annotations

import json
from dataclasses import astuple, dataclass, fields
from fractions import Fraction

import numpy as np

FRAME_VERSION = "dlogr1-dth1-dlogr2-dth2/v1"
DEFAULT_SEED = 7
TOLERANCE = 1e-12


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class EllipticChartForm:
    """Coefficients on the six basis 2-forms, in frame-pair order.

    ``r1_th1`` multiplies dlog r1 ^ dtheta1, ``r1_r2`` dlog r1 ^ dlog r2,
    ``r1_th2`` dlog r1 ^ dtheta2, ``th1_r2`` dtheta1 ^ dlog r2,
    ``th1_th2`` dtheta1 ^ dtheta2 and ``r2_th2`` dlog r2 ^ dtheta2.
    """

    r1_th1: Fraction = Fraction(0)
    r1_r2: Fraction = Fraction(0)
    r1_th2: Fraction = Fraction(0)
    th1_r2: Fraction = Fraction(0)
    th1_th2: Fraction = Fraction(0)
    r2_th2: Fraction = Fraction(0)

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _q(getattr(self, f.name)))

    def coefficients(self) -> tuple[Fraction, ...]:
        return astuple(self)

    def __add__(self, other: "EllipticChartForm") -> "EllipticChartForm":
        return EllipticChartForm(*(a + b for a, b in zip(astuple(self), astuple(other))))

    def __mul__(self, scalar) -> "EllipticChartForm":
        s = _q(scalar)
        return EllipticChartForm(*(s * a for a in astuple(self)))

    __rmul__ = __mul__

    def matrix(self) -> list[list[Fraction]]:
        """Antisymmetric 4x4 matrix of the form in the frame."""
        m = [[Fraction(0)] * 4 for _ in range(4)]
        pairs = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
        for (i, j), c in zip(pairs, astuple(self)):
            m[i][j], m[j][i] = c, -c
        return m

    def to_json(self) -> dict:
        return {"frame": FRAME_VERSION, "coefficients": [str(c) for c in astuple(self)]}

    @classmethod
    def from_json(cls, data: dict) -> "EllipticChartForm":
        if data.get("frame") != FRAME_VERSION:
            raise ValueError(f"unsupported frame {data.get('frame')!r}")
        coeffs = data["coefficients"]
        if len(coeffs) != 6:
            raise ValueError("expected six coefficients")
        return cls(*(Fraction(c) for c in coeffs))


@dataclass(frozen=True)
class LogChartForm:
    """``lam * dlog x1 ^ dlog x2`` on the base chart."""

    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", _q(self.lam))


@dataclass(frozen=True)
class ResidueSet:
    q1: Fraction
    q2: Fraction
    r1r2: Fraction
    th1th2: Fraction
    r1th2: Fraction
    th1r2: Fraction

    def __add__(self, other):
        return ResidueSet(*(a + b for a, b in zip(astuple(self), astuple(other))))

    def __mul__(self, scalar):
        return ResidueSet(*(_q(scalar) * a for a in astuple(self)))

    __rmul__ = __mul__


def from_complex_parameter(tau_re, tau_im) -> EllipticChartForm:
    """Form induced by the pure spinor ``z1 z2 + tau dz1 ^ dz2``."""
    re, im = _q(tau_re), _q(tau_im)
    return EllipticChartForm(r1_r2=im, th1_th2=-im, r1_th2=re, th1_r2=re)


def residues(w: EllipticChartForm) -> ResidueSet:
    """Elliptic residues per strand and the pairwise residues at the point."""
    return ResidueSet(
        q1=w.r1_th1,
        q2=w.r2_th2,
        r1r2=w.r1_r2,
        th1th2=w.th1_th2,
        r1th2=w.r1_th2,
        th1r2=w.th1_r2,
    )


def has_zero_elliptic_residue(w: EllipticChartForm) -> bool:
    return w.r1_th1 == 0 and w.r2_th2 == 0


def has_imaginary_parameter(w: EllipticChartForm) -> bool:
    if not has_zero_elliptic_residue(w):
        raise ValueError("imaginary parameter is only defined for zero elliptic residue")
    return abs(w.r1_r2) == abs(w.th1_th2) and w.r1_th2 == 0 and w.th1_r2 == 0


def satisfies_gcs_residue_conditions(w: EllipticChartForm) -> bool:
    return (has_zero_elliptic_residue(w)
            and w.th1_r2 == w.r1_th2
            and w.r1_r2 == -w.th1_th2)


def pfaffian(w: EllipticChartForm) -> Fraction:
    """Pfaffian in the fixed frame order; ``w ^ w = 2 Pf`` times the frame volume."""
    return w.r1_th1 * w.r2_th2 - w.r1_r2 * w.th1_th2 + w.r1_th2 * w.th1_r2


def is_nondegenerate(w: EllipticChartForm) -> tuple[bool, Fraction]:
    pf = pfaffian(w)
    return pf != 0, pf


def gt_interpolation(t) -> EllipticChartForm:
    """Fibrewise form plus ``t`` times the pulled-back base log form.

    The fibrewise part is ``-dth1^dth2 + dlog r1^dth2 + dth1^dlog r2``; the
    pullback of ``dlog x1 ^ dlog x2`` under ``x_j = r_j^2`` is
    ``4 dlog r1 ^ dlog r2``.
    """
    t = _q(t)
    return EllipticChartForm(r1_r2=4 * t, r1_th2=1, th1_r2=1, th1_th2=-1)


def from_wedges(*terms) -> EllipticChartForm:
    """Build a form from ``(coefficient, first, second)`` wedge terms.

    Factor names are ``"r1"``, ``"th1"``, ``"r2"``, ``"th2"``; a term given
    in the opposite order is reordered with a sign change.
    """
    order = {"r1": 0, "th1": 1, "r2": 2, "th2": 3}
    slot = {(0, 1): "r1_th1", (0, 2): "r1_r2", (0, 3): "r1_th2",
            (1, 2): "th1_r2", (1, 3): "th1_th2", (2, 3): "r2_th2"}
    acc = dict.fromkeys(slot.values(), Fraction(0))
    for coeff, a, b in terms:
        i, j = order[a], order[b]
        if i == j:
            continue
        sign = 1 if i < j else -1
        acc[slot[(min(i, j), max(i, j))]] += sign * _q(coeff)
    return EllipticChartForm(**acc)


def pullback_log_form(lf: LogChartForm) -> EllipticChartForm:
    return EllipticChartForm(r1_r2=4 * lf.lam)


# -- sample-based model checks ---------------------------------------------------


@dataclass(frozen=True)
class ModelReport:
    op: str
    samples: int
    max_error: float
    passed: bool
    extra: tuple = ()

    def to_json(self) -> dict:
        out = {"op": self.op, "samples": self.samples, "max_error": self.max_error,
               "pass": self.passed}
        out.update(dict(self.extra))
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def torus_quotient(z1, z2):
    """Local fibration ``(|z1|^2, |z2|^2)``."""
    return np.abs(z1) ** 2, np.abs(z2) ** 2


def sphere_inversion(z1, z2):
    """Gluing map of the connected sum annuli, ``(z2, conj z1) / |z|^2``."""
    n = np.abs(z1) ** 2 + np.abs(z2) ** 2
    return z2 / n, np.conj(z1) / n


def base_inversion(x, y):
    """Corner gluing map ``(y, x) / (x + y)^2`` of the base."""
    s = (x + y) ** 2
    return y / s, x / s


def _annulus_samples(rng, n):
    """Points of C^2 with radius in [1/2, 2], directions uniform on S^3."""
    g = rng.standard_normal((n, 4))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    radius = rng.uniform(0.5, 2.0, size=(n, 1))
    g *= radius
    return g[:, 0] + 1j * g[:, 1], g[:, 2] + 1j * g[:, 3]


def corner_sum_model_report(sample_count: int = 1000, seed: int = DEFAULT_SEED) -> ModelReport:
    if sample_count < 1:
        raise ValueError("sample_count must be positive")
    rng = np.random.default_rng(seed)
    z1, z2 = _annulus_samples(rng, sample_count)
    lhs = torus_quotient(*sphere_inversion(z1, z2))
    rhs = base_inversion(*torus_quotient(z1, z2))
    err = float(max(np.max(np.abs(lhs[0] - rhs[0])), np.max(np.abs(lhs[1] - rhs[1]))))
    return ModelReport("verify_corner_sum_model", sample_count, err, err < TOLERANCE)


def verify_corner_sum_model(sample_count: int = 1000, seed: int = DEFAULT_SEED) -> bool:
    return corner_sum_model_report(sample_count, seed).passed


def focus_focus_map(x1, y1, x2, y2):
    return x1 * y2 - x2 * y1, x1 * x2 + y1 * y2


def lefschetz_coordinates(x1, y1, x2, y2):
    """``w1 = (conj z1 + z2) / 2``, ``w2 = (conj z1 - z2) / 2i`` so that w1^2 + w2^2 = conj(z1) z2."""
    z1b = x1 - 1j * y1
    z2 = x2 + 1j * y2
    return (z1b + z2) / 2, (z1b - z2) / 2j


def quarter_coordinates(x1, y1, x2, y2):
    """The alternative change ``(x1 + y2 + i(x1 - y2), x1 - y2 + i(x1 + y2)) / 4``."""
    a, b = x1 + y2, x1 - y2
    return (a + 1j * b) / 4, (b + 1j * a) / 4


def _lefschetz_image(w1, w2):
    q = w1 ** 2 + w2 ** 2
    return q.imag, q.real


def focus_focus_model_report(sample_count: int = 1000, seed: int = DEFAULT_SEED) -> ModelReport:
    """Compare the focus-focus map with (Im, Re) of w1^2 + w2^2.

    Also reports whether the quarter coordinate change passes the same
    check (it does not; recorded, not used).
    """
    if sample_count < 1:
        raise ValueError("sample_count must be positive")
    rng = np.random.default_rng(seed)
    x1, y1, x2, y2 = rng.uniform(-2.0, 2.0, size=(4, sample_count))
    f = focus_focus_map(x1, y1, x2, y2)

    def error(coords):
        g = _lefschetz_image(*coords(x1, y1, x2, y2))
        return float(max(np.max(np.abs(f[0] - g[0])), np.max(np.abs(f[1] - g[1]))))

    err = error(lefschetz_coordinates)
    alt = error(quarter_coordinates)
    return ModelReport("verify_focus_focus_model", sample_count, err, err < TOLERANCE,
                       (("quarter_coordinates_pass", alt < TOLERANCE),))


def verify_focus_focus_model(sample_count: int = 1000, seed: int = DEFAULT_SEED) -> bool:
    return focus_focus_model_report(sample_count, seed).passed
