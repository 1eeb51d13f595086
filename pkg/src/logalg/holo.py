"""Holomorphic functions on the unit disk, built from Nevanlinna-class atoms.

Expression trees combine polynomials, disk-zero-free rationals, Blaschke
factors and singular inner exponentials with Add/Sub/Mul/Div.  Division is
only allowed by products of bounded, zero-free-or-inner atoms, so every
tree is a ratio of bounded analytic functions.

Evaluation is carried in log-polar form (log-modulus, unit phase) so that
integrands like log(1 + |f|) stay finite even when |f| overflows a double.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, SingularityError, StructureError

__all__ = [
    "HoloFunction",
    "Polynomial",
    "SafeRational",
    "BlaschkeFactor",
    "SingularInner",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "constant",
    "CircleSample",
    "ClassNormResult",
    "SmirnovResult",
    "evaluate",
    "radial_mean",
    "boundary_norm",
    "d_N",
    "class_norm",
    "smirnov_defect",
    "phi_sample",
    "has_singular_atom",
    "from_json",
]

_CHUNK = 1 << 19           # quadrature points evaluated per numpy batch
_BOUNDARY_GUARD = 1e-13    # distance to z = 1 below which evaluation refuses


class HoloFunction:
    """Base expression node."""

    def logpolar(self, z: np.ndarray):
        """Return (logmag, phase) with value = exp(logmag) * phase.

        phase has unit modulus where the value is nonzero and is 0 where
        the value is 0 (logmag = -inf there).
        """
        raise NotImplementedError

    def __add__(self, other):
        return Add(self, _as_holo(other))

    def __sub__(self, other):
        return Sub(self, _as_holo(other))

    def __mul__(self, other):
        return Mul(self, _as_holo(other))

    def __truediv__(self, other):
        return Div(self, _as_holo(other))

    def to_json(self) -> dict:
        raise NotImplementedError


def _as_holo(x) -> "HoloFunction":
    if isinstance(x, HoloFunction):
        return x
    return constant(complex(x))


def _logpolar_of_values(v: np.ndarray):
    mag = np.abs(v)
    with np.errstate(divide="ignore"):
        logmag = np.log(mag)
    phase = np.where(mag > 0, v / np.where(mag > 0, mag, 1.0), 0.0 + 0.0j)
    return logmag, phase


@dataclass(frozen=True)
class Polynomial(HoloFunction):
    coeffs: tuple  # ascending order: coeffs[k] multiplies z^k

    @staticmethod
    def make(coeffs) -> "Polynomial":
        return Polynomial(tuple(complex(c) for c in coeffs))

    def values(self, z):
        acc = np.zeros_like(np.asarray(z, dtype=complex))
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def logpolar(self, z):
        return _logpolar_of_values(self.values(z))

    def disk_zero_free(self) -> bool:
        cs = np.trim_zeros(np.asarray(self.coeffs, dtype=complex), "b")
        if cs.size == 0:
            return False  # identically zero
        if cs.size == 1:
            return True
        roots = np.roots(cs[::-1])
        return bool(np.all(np.abs(roots) > 1.0 + 1e-12))

    def to_json(self):
        return {"op": "poly",
                "coeffs": [{"re": c.real, "im": c.imag} for c in self.coeffs]}


def constant(c) -> Polynomial:
    return Polynomial.make([c])


@dataclass(frozen=True)
class SafeRational(HoloFunction):
    """numerator / denominator with the denominator zero-free on |z| <= 1."""

    numerator: Polynomial
    denominator: Polynomial

    @staticmethod
    def make(num_coeffs, den_coeffs) -> "SafeRational":
        num = Polynomial.make(num_coeffs)
        den = Polynomial.make(den_coeffs)
        if not den.disk_zero_free():
            raise StructureError(
                "SafeRational denominator has a zero on the closed unit disk")
        return SafeRational(num, den)

    def logpolar(self, z):
        ln, pn = self.numerator.logpolar(z)
        ld, pd = self.denominator.logpolar(z)
        return ln - ld, pn / pd

    def to_json(self):
        return {"op": "rational",
                "num": self.numerator.to_json()["coeffs"],
                "den": self.denominator.to_json()["coeffs"]}


@dataclass(frozen=True)
class BlaschkeFactor(HoloFunction):
    """(z - a) / (1 - conj(a) z), |a| < 1: an inner function, unimodular on the circle."""

    a: complex

    @staticmethod
    def make(a) -> "BlaschkeFactor":
        a = complex(a)
        if not abs(a) < 1:
            raise InvalidParameterError("Blaschke parameter must satisfy |a| < 1")
        return BlaschkeFactor(a)

    def logpolar(self, z):
        v = (z - self.a) / (1.0 - np.conj(self.a) * z)
        return _logpolar_of_values(v)

    def to_json(self):
        return {"op": "blaschke", "a": {"re": self.a.real, "im": self.a.imag}}


@dataclass(frozen=True)
class SingularInner(HoloFunction):
    """exp(-s (1 + z) / (1 - z)) with s >= 0; unimodular a.e. on the circle."""

    s: float

    @staticmethod
    def make(s) -> "SingularInner":
        s = float(s)
        if s < 0:
            raise InvalidParameterError("singular inner weight must be nonnegative")
        return SingularInner(s)

    def logpolar(self, z):
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(1.0 - z) < _BOUNDARY_GUARD):
            raise SingularityError(
                "singular inner atom is not evaluable at z = 1", atom=self)
        w = -self.s * (1.0 + z) / (1.0 - z)
        return w.real, np.exp(1j * w.imag)

    def to_json(self):
        return {"op": "singular", "s": self.s}


def _is_invertible_inner_product(node: HoloFunction) -> bool:
    """True for products of Blaschke factors, singular inners and zero-free atoms."""
    if isinstance(node, (BlaschkeFactor, SingularInner)):
        return True
    if isinstance(node, Polynomial):
        return node.disk_zero_free()
    if isinstance(node, SafeRational):
        return node.numerator.disk_zero_free()
    if isinstance(node, Mul):
        return (_is_invertible_inner_product(node.left)
                and _is_invertible_inner_product(node.right))
    if isinstance(node, Div):
        return _is_invertible_inner_product(node.left)
    return False


@dataclass(frozen=True)
class Mul(HoloFunction):
    left: HoloFunction
    right: HoloFunction

    def logpolar(self, z):
        l1, p1 = self.left.logpolar(z)
        l2, p2 = self.right.logpolar(z)
        return l1 + l2, p1 * p2

    def to_json(self):
        return {"op": "mul", "lhs": self.left.to_json(), "rhs": self.right.to_json()}


@dataclass(frozen=True)
class Div(HoloFunction):
    left: HoloFunction
    right: HoloFunction

    def __post_init__(self):
        if not _is_invertible_inner_product(self.right):
            raise StructureError(
                "division is only allowed by products of Blaschke, singular inner "
                "and disk-zero-free atoms")

    def logpolar(self, z):
        l1, p1 = self.left.logpolar(z)
        l2, p2 = self.right.logpolar(z)
        if np.any(p2 == 0):
            raise SingularityError(
                "denominator vanishes at an evaluation point", atom=self.right)
        return l1 - l2, p1 / p2

    def to_json(self):
        return {"op": "div", "lhs": self.left.to_json(), "rhs": self.right.to_json()}


def _combine_sum(l1, p1, l2, p2, sign):
    lm = np.maximum(l1, l2)
    lm = np.where(np.isneginf(lm), 0.0, lm)  # both terms zero: avoid inf - inf
    v = p1 * np.exp(l1 - lm) + sign * p2 * np.exp(l2 - lm)
    lv, pv = _logpolar_of_values(v)
    return lm + lv, pv


@dataclass(frozen=True)
class Add(HoloFunction):
    left: HoloFunction
    right: HoloFunction

    def logpolar(self, z):
        l1, p1 = self.left.logpolar(z)
        l2, p2 = self.right.logpolar(z)
        return _combine_sum(l1, p1, l2, p2, 1.0)

    def to_json(self):
        return {"op": "add", "lhs": self.left.to_json(), "rhs": self.right.to_json()}


@dataclass(frozen=True)
class Sub(HoloFunction):
    left: HoloFunction
    right: HoloFunction

    def logpolar(self, z):
        l1, p1 = self.left.logpolar(z)
        l2, p2 = self.right.logpolar(z)
        return _combine_sum(l1, p1, l2, p2, -1.0)

    def to_json(self):
        return {"op": "sub", "lhs": self.left.to_json(), "rhs": self.right.to_json()}


def has_singular_atom(f: HoloFunction) -> bool:
    """True if the tree contains a singular inner exponential anywhere."""
    if isinstance(f, SingularInner):
        return True
    if isinstance(f, (Add, Sub, Mul, Div)):
        return has_singular_atom(f.left) or has_singular_atom(f.right)
    return False


def from_json(obj: dict) -> HoloFunction:
    """Rebuild an expression tree from its JSON form."""
    try:
        op = obj["op"]
        if op == "poly":
            return Polynomial.make([complex(c["re"], c.get("im", 0.0))
                                    for c in obj["coeffs"]])
        if op == "rational":
            return SafeRational.make(
                [complex(c["re"], c.get("im", 0.0)) for c in obj["num"]],
                [complex(c["re"], c.get("im", 0.0)) for c in obj["den"]])
        if op == "blaschke":
            return BlaschkeFactor.make(complex(obj["a"]["re"], obj["a"].get("im", 0.0)))
        if op == "singular":
            return SingularInner.make(obj["s"])
        if op in ("add", "sub", "mul", "div"):
            cls = {"add": Add, "sub": Sub, "mul": Mul, "div": Div}[op]
            return cls(from_json(obj["lhs"]), from_json(obj["rhs"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"bad expression JSON: {exc}") from exc
    raise StructureError(f"unknown expression op {op!r}")


# ---------------------------------------------------------------------------
# evaluation and quadrature

def evaluate(f: HoloFunction, z: complex) -> complex:
    """Value of f at a single point of the closed disk."""
    if abs(z) > 1 + 1e-12:
        raise InvalidParameterError("evaluation point must satisfy |z| <= 1")
    logmag, phase = f.logpolar(np.asarray([z], dtype=complex))
    return complex(np.exp(logmag[0]) * phase[0])


def _mean_log1p_abs(f: HoloFunction, radius: float, m: int, offset: float) -> float:
    """Equal-weight circle quadrature of log(1 + |f|), chunked for memory."""
    total = 0.0
    for start in range(0, m, _CHUNK):
        j = np.arange(start, min(start + _CHUNK, m), dtype=float)
        z = radius * np.exp(2j * np.pi * (j + offset) / m)
        logmag, _ = f.logpolar(z)
        if np.any(np.isposinf(logmag)) or np.any(np.isnan(logmag)):
            bad = int(np.argmax(~np.isfinite(logmag)))
            raise SingularityError(
                f"non-finite value at grid point index {start + bad}", atom=f)
        total += float(np.logaddexp(0.0, logmag).sum())
    return total / m


def radial_mean(f: HoloFunction, r: float, m: int) -> float:
    """Periodic trapezoid approximation of the circle mean of log(1 + |f|) at radius r."""
    if not 0 <= r < 1:
        raise InvalidParameterError("radius must lie in [0, 1)")
    if m < 16:
        raise InvalidParameterError("grid size must be at least 16")
    return _mean_log1p_abs(f, r, m, offset=0.0)


def boundary_norm(f: HoloFunction, m: int) -> float:
    """Circle mean of log(1 + |f|) on the half-step offset boundary grid."""
    if m < 16:
        raise InvalidParameterError("grid size must be at least 16")
    return _mean_log1p_abs(f, 1.0, m, offset=0.5)


def d_N(f: HoloFunction, g: HoloFunction, m: int) -> float:
    """Boundary F-norm distance: boundary_norm of the tree-level difference."""
    return boundary_norm(Sub(f, g), m)


@dataclass(frozen=True)
class ClassNormResult:
    estimate: float
    converged: bool
    radii: tuple
    means: tuple


def class_norm(f: HoloFunction, tol: float, *, k_max: int = 17,
               m_start: int = 64, m_max: int = 1 << 22) -> ClassNormResult:
    """Supremum over r < 1 of the radial means, along r_k = 1 - 2^-k.

    Each radial mean is grid-refined until doubling changes it by less
    than tol/4 (capped at m_max points).  The sweep stops, converged,
    once an r-increment falls below tol; if the radius or grid budget is
    exhausted first the running supremum is returned flagged unconverged.
    It is a valid lower bound either way, the means being nondecreasing in r.
    """
    if not tol > 0:
        raise InvalidParameterError("tol must be positive")
    radii = []
    means = []
    m = m_start
    prev = None
    for k in range(1, k_max + 1):
        r = 1.0 - 2.0 ** (-k)
        v = radial_mean(f, r, m)
        while m < m_max:
            m *= 2
            v2 = radial_mean(f, r, m)
            done = abs(v2 - v) < tol / 4
            v = v2
            if done:
                m //= 2  # reuse the settled grid as the next starting point
                break
        radii.append(r)
        means.append(v)
        if prev is not None and abs(v - prev) < tol:
            return ClassNormResult(max(means), True, tuple(radii), tuple(means))
        prev = v
    return ClassNormResult(max(means), False, tuple(radii), tuple(means))


@dataclass(frozen=True)
class SmirnovResult:
    defect: float
    is_smirnov: bool
    class_estimate: float
    class_converged: bool
    boundary: float


def smirnov_defect(f: HoloFunction, tol: float = 1e-4) -> SmirnovResult:
    """Gap between the radial supremum and the boundary F-norm.

    The gap vanishes exactly on the Smirnov subclass; it is clamped below
    at -tol since the radial supremum dominates the boundary integral.
    """
    if not tol > 0:
        raise InvalidParameterError("tol must be positive")
    m = 1024
    b = boundary_norm(f, m)
    while m < (1 << 20):
        m *= 2
        b2 = boundary_norm(f, m)
        if abs(b2 - b) < tol / 4:
            b = b2
            break
        b = b2
    cn = class_norm(f, tol)
    defect = max(cn.estimate - b, -tol)
    return SmirnovResult(defect, defect <= tol, cn.estimate, cn.converged, b)


@dataclass(frozen=True)
class CircleSample:
    """Boundary values on the half-step offset grid theta_j = 2 pi (j + 1/2) / m."""

    m: int
    values: tuple


def phi_sample(f: HoloFunction, m: int) -> CircleSample:
    if m < 1:
        raise InvalidParameterError("grid size must be positive")
    j = np.arange(m, dtype=float)
    z = np.exp(2j * np.pi * (j + 0.5) / m)
    logmag, phase = f.logpolar(z)
    vals = np.exp(logmag) * phase
    return CircleSample(m, tuple(complex(v) for v in vals))
