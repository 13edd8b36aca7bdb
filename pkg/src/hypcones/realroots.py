"""Real-rootedness certification and real root extraction for univariate polynomials.

Polynomials here arise as restrictions of multivariate polynomials to lines,
so the representation is a plain coefficient sequence in ascending powers.
Exact-rational inputs get certified verdicts from Sturm sequences (with
multiplicities recovered through a square-free decomposition); float inputs
go through companion-matrix eigenvalues with a tolerance on imaginary parts
and an explicit inconclusive gray band.  What "all roots real" should mean
under floating-point perturbation is a convention of this library: relative
imaginary parts up to ``tol`` count as real, parts beyond ``GRAY_BAND_FACTOR
* tol`` as complex, and anything in between is inconclusive.

All functions are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import NotCertifiedError, ZeroPolynomialError

DEFAULT_IMAG_TOL = 1e-8
DEFAULT_COEFF_TOL = 1e-8
DEFAULT_CLUSTER_TOL = 1e-6
GRAY_BAND_FACTOR = 100.0

# refinement target for isolated exact roots, relative interval width
_REFINE_REL = Fraction(1, 10**15)
_DEFLATE_LIMIT = 10**9  # skip rational-root deflation beyond this coefficient size


class Verdict(str, Enum):
    REAL_ROOTED = "real_rooted"
    NOT_REAL_ROOTED = "not_real_rooted"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class UnivariatePoly:
    """Coefficients a_0..a_d of a_0 + a_1 t + ... + a_d t^d."""

    coeffs: tuple
    mode: str = "rational"

    @property
    def declared_degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def evaluate(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def as_float(self) -> "UnivariatePoly":
        return UnivariatePoly(tuple(float(c) for c in self.coeffs), mode="float")


@dataclass(frozen=True)
class RootList:
    """Ascending real roots with matching positive multiplicities."""

    roots: tuple
    multiplicities: tuple

    @property
    def total_multiplicity(self) -> int:
        return sum(self.multiplicities)

    def as_float(self) -> np.ndarray:
        """Roots expanded with multiplicity, as a float array."""
        out = []
        for r, m in zip(self.roots, self.multiplicities):
            out.extend([float(r)] * m)
        return np.array(out)


# ---------------------------------------------------------------------------
# exact coefficient-list helpers (ascending order, Fraction or int entries)

def _strip(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _deriv(c: list) -> list:
    return [k * c[k] for k in range(1, len(c))]


def _sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _strip(
        [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    )


def _eval_frac(c: list, t: Fraction) -> Fraction:
    acc = Fraction(0)
    for v in reversed(c):
        acc = acc * t + v
    return acc


def _divmod_frac(a: list, b: list) -> tuple[list, list]:
    """Polynomial long division over the rationals; b must be nonzero."""
    a = [Fraction(v) for v in a]
    db = len(b) - 1
    lb = Fraction(b[-1])
    if len(a) - 1 < db:
        return [], _strip(a)
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        f = a[k] / lb
        if f:
            q[k - db] = f
            for j in range(db + 1):
                a[k - db + j] -= f * b[j]
        a[k] = Fraction(0)
    return _strip(q), _strip(a[:db])


def _primitive_int(c: list) -> list[int]:
    """Scale a rational coefficient list to integers with content 1 (sign kept)."""
    if not c:
        return []
    fr = [Fraction(v) for v in c]
    den = 1
    for v in fr:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    return [v // g for v in ints] if g > 1 else ints


def _gcd_poly(a: list[int], b: list[int]) -> list[int]:
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        _, r = _divmod_frac(a, b)
        a, b = b, _primitive_int(r)
    out = _primitive_int(a)
    if out and out[-1] < 0:
        out = [-v for v in out]
    return out


def _exact_div(a: list[int], b: list[int]) -> list[int]:
    q, r = _divmod_frac(a, b)
    assert not r, "division was expected to be exact"
    return _primitive_int(q)


def _sturm_chain(c: list[int]) -> list[list[int]]:
    chain = [list(c), _strip(_deriv(list(c)))]
    while chain[-1] and len(chain[-1]) > 1:
        _, r = _divmod_frac(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_primitive_int([-v for v in r]))
    if not chain[-1]:
        chain.pop()
    return chain


def _variations(values) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if (x > 0) != (y > 0))


def _variations_at_inf(chain, positive: bool) -> int:
    vals = []
    for f in chain:
        lead = f[-1]
        deg = len(f) - 1
        vals.append(lead if (positive or deg % 2 == 0) else -lead)
    return _variations(vals)


def _count_distinct_real_roots(chain) -> int:
    return _variations_at_inf(chain, positive=False) - _variations_at_inf(chain, positive=True)


def _count_in_interval(chain, a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b]."""
    va = _variations(_eval_frac(f, a) for f in chain)
    vb = _variations(_eval_frac(f, b) for f in chain)
    return va - vb


def _squarefree_decomposition(c: list[int]) -> list[tuple[list[int], int]]:
    """Yun decomposition: list of (square-free factor, multiplicity) pairs.

    The running w, y, z polynomials are kept as exact rational lists; only
    the emitted factors are normalized.  Rescaling the intermediates would
    break the identity z = y - w' the recurrence relies on.
    """
    f = [Fraction(v) for v in _strip(list(c))]
    if len(f) <= 1:
        return []
    fp = _strip(_deriv(f))
    g = _gcd_poly(_primitive_int(f), _primitive_int(fp))
    if len(g) <= 1:
        return [(_primitive_int(f), 1)]
    w = _divmod_frac(f, g)[0]
    y = _divmod_frac(fp, g)[0]
    z = _sub(y, _deriv(w))
    out = []
    i = 1
    while len(w) > 1:
        gi = _gcd_poly(_primitive_int(w), _primitive_int(z)) if z else _primitive_int(w)
        if len(gi) > 1:
            out.append((gi, i))
        w = _divmod_frac(w, gi)[0]
        y = _divmod_frac(z, gi)[0] if z else []
        z = _sub(y, _deriv(w))
        i += 1
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _rational_roots(c: list[int]) -> tuple[list[Fraction], list[int]]:
    """Deflate all rational roots of a square-free integer polynomial.

    Returns (roots found, remaining coefficients).  Deflation is skipped for
    coefficient sizes where divisor enumeration would be expensive.
    """
    c = _strip(list(c))
    roots: list[Fraction] = []
    while len(c) > 1 and c[0] == 0:
        roots.append(Fraction(0))
        c = c[1:]
    if len(c) <= 1:
        return roots, c
    if abs(c[0]) > _DEFLATE_LIMIT or abs(c[-1]) > _DEFLATE_LIMIT:
        return roots, c
    nums = _divisors(c[0])
    dens = _divisors(c[-1])
    candidates = sorted(
        {Fraction(s * p, q) for p in nums for q in dens for s in (1, -1)}
    )
    for cand in candidates:
        while len(c) > 1 and _eval_frac(c, cand) == 0:
            roots.append(cand)
            c = _primitive_int(_divmod_frac(c, _primitive_int([-cand, 1]))[0])
    return roots, c


def _refine_root(c: list[int], a: Fraction, b: Fraction, sign_a: int) -> Fraction:
    """Shrink an isolating interval around a single simple root; exact hit wins."""
    while (b - a) > _REFINE_REL * (1 + abs(b)):
        mid = (a + b) / 2
        fm = _eval_frac(c, mid)
        if fm == 0:
            return mid
        if (fm > 0) == (sign_a > 0):
            a = mid
        else:
            b = mid
    return (a + b) / 2


def _isolate_real_roots(c: list[int]) -> list[Fraction]:
    """All real roots of a square-free integer polynomial certified real rooted."""
    rational, c = _rational_roots(c)
    roots = list(rational)
    deg = len(c) - 1
    if deg >= 1:
        chain = _sturm_chain(c)
        bound = Fraction(1) + max(abs(Fraction(v, c[-1])) for v in c[:-1])
        stack = [(-bound, bound, _count_in_interval(chain, -bound, bound))]
        while stack:
            a, b, cnt = stack.pop()
            if cnt == 0:
                continue
            if cnt == 1:
                fa = _eval_frac(c, a)
                fb = _eval_frac(c, b)
                if fb == 0:
                    roots.append(b)
                    continue
                roots.append(_refine_root(c, a, b, 1 if fa > 0 else -1))
                continue
            mid = (a + b) / 2
            if _eval_frac(c, mid) == 0:
                roots.append(mid)
                delta = (b - a) / 4
                while _count_in_interval(chain, mid - delta, mid + delta) != 1:
                    delta /= 2
                stack.append((a, mid - delta, _count_in_interval(chain, a, mid - delta)))
                stack.append((mid + delta, b, _count_in_interval(chain, mid + delta, b)))
            else:
                left = _count_in_interval(chain, a, mid)
                stack.append((a, mid, left))
                stack.append((mid, b, cnt - left))
    return sorted(roots)


def _newton_polish(desc: np.ndarray, roots: np.ndarray, steps: int = 2) -> np.ndarray:
    """Safeguarded Newton refinement of real roots (descending coefficients).

    Companion-matrix roots of degree 6+ polynomials with close roots carry
    1e-8 scale errors; one or two accepted-only Newton steps push simple
    roots back to machine precision without hurting clustered ones.
    """
    deriv = np.polyder(desc)
    r = roots.copy()
    fr = np.abs(np.polyval(desc, r))
    for _ in range(steps):
        fp = np.polyval(deriv, r)
        safe = np.abs(fp) > 1e-300
        cand = np.where(safe, r - np.where(safe, np.polyval(desc, r), 0.0) / np.where(safe, fp, 1.0), r)
        fc = np.abs(np.polyval(desc, cand))
        take = fc <= fr
        r = np.where(take, cand, r)
        fr = np.where(take, fc, fr)
    return r


# ---------------------------------------------------------------------------
# public operations

def _nonzero_coeffs(u: UnivariatePoly):
    if u.is_zero:
        raise ZeroPolynomialError("operation needs a nonzero polynomial")


def all_roots_real(u: UnivariatePoly, tol: float = DEFAULT_IMAG_TOL) -> Verdict:
    """Certify whether every root of u is real.

    Rational mode counts distinct real roots of the square-free part with a
    Sturm sequence, which is a proof either way.  Float mode inspects
    companion-matrix eigenvalue imaginary parts against ``tol`` and reports
    INCONCLUSIVE inside the gray band.
    """
    _nonzero_coeffs(u)
    if u.mode == "rational":
        c = _primitive_int(list(u.coeffs))
        c = _strip(c)
        if len(c) <= 1:
            return Verdict.REAL_ROOTED
        g = _gcd_poly(c, _strip(_deriv(list(c))))
        sqfree = _exact_div(c, g) if len(g) > 1 else c
        chain = _sturm_chain(sqfree)
        return (
            Verdict.REAL_ROOTED
            if _count_distinct_real_roots(chain) == len(sqfree) - 1
            else Verdict.NOT_REAL_ROOTED
        )
    coeffs = np.asarray(u.coeffs, dtype=float)
    top = np.nonzero(coeffs != 0.0)[0]
    if top.size == 0:
        raise ZeroPolynomialError("operation needs a nonzero polynomial")
    coeffs = coeffs[: top[-1] + 1]
    if coeffs.size <= 1:
        return Verdict.REAL_ROOTED
    lam = np.roots(coeffs[::-1])
    rel_im = np.max(np.abs(lam.imag) / (1.0 + np.abs(lam)))
    if rel_im <= tol:
        return Verdict.REAL_ROOTED
    if rel_im <= GRAY_BAND_FACTOR * tol:
        return Verdict.INCONCLUSIVE
    return Verdict.NOT_REAL_ROOTED


def real_roots(
    u: UnivariatePoly,
    tol: float = DEFAULT_IMAG_TOL,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> RootList:
    """Ascending real roots with multiplicities; requires a real-rooted certificate.

    Rational mode isolates the roots of each square-free factor by Sturm
    bisection and refines the isolating intervals; rational roots are
    returned exactly, irrational ones as tightly refined rational
    approximations.  Float mode clusters companion-matrix roots that agree
    within ``cluster_tol`` relative.
    """
    verdict = all_roots_real(u, tol)
    if verdict is not Verdict.REAL_ROOTED:
        raise NotCertifiedError(f"real_roots needs a real_rooted certificate, got {verdict.value}")
    if u.mode == "rational":
        c = _primitive_int(list(u.coeffs))
        c = _strip(c)
        pairs: list[tuple[Fraction, int]] = []
        for factor, mult in _squarefree_decomposition(c):
            pairs.extend((r, mult) for r in _isolate_real_roots(factor))
        pairs.sort(key=lambda rm: rm[0])
        return RootList(tuple(r for r, _ in pairs), tuple(m for _, m in pairs))
    coeffs = np.asarray(u.coeffs, dtype=float)
    coeffs = coeffs[: np.nonzero(coeffs != 0.0)[0][-1] + 1]
    if coeffs.size <= 1:
        return RootList((), ())
    desc = coeffs[::-1]
    vals = np.sort(_newton_polish(desc, np.roots(desc).real))
    clusters: list[list[float]] = [[vals[0]]]
    for v in vals[1:]:
        if abs(v - clusters[-1][-1]) <= cluster_tol * (1.0 + abs(v)):
            clusters[-1].append(v)
        else:
            clusters.append([v])
    roots = []
    for cl in clusters:
        r = float(np.mean(cl))
        if len(cl) > 1:
            # a multiplicity-m root is a simple root of the (m-1)-th
            # derivative, where Newton converges quadratically again
            dpoly = desc
            for _ in range(len(cl) - 1):
                dpoly = np.polyder(dpoly)
            r = float(_newton_polish(dpoly, np.array([r]), steps=3)[0])
        roots.append(r)
    return RootList(tuple(roots), tuple(len(cl) for cl in clusters))


def zero_multiplicity(u: UnivariatePoly, tol: float = DEFAULT_COEFF_TOL) -> int:
    """Order of vanishing at t = 0: the index of the first nonzero coefficient."""
    _nonzero_coeffs(u)
    if u.mode == "rational":
        return next(k for k, c in enumerate(u.coeffs) if c != 0)
    coeffs = np.abs(np.asarray(u.coeffs, dtype=float))
    scale = coeffs.max()
    return int(np.nonzero(coeffs > tol * scale)[0][0])


def trailing_vanishing_holds(u: UnivariatePoly, tol: float = DEFAULT_COEFF_TOL) -> bool:
    """Check that zero coefficients only occur below every nonzero one.

    For a real-rooted polynomial with nonnegative coefficients and positive
    leading coefficient this pattern always holds (its roots are nonpositive,
    so a vanishing elementary symmetric function forces all longer products
    of roots to vanish too); the function exists as an executable check and
    raises when its preconditions are violated.
    """
    _nonzero_coeffs(u)
    if u.mode == "rational":
        coeffs = list(u.coeffs)
        is_zero = [c == 0 for c in coeffs]
        nonneg = all(c >= 0 for c in coeffs)
    else:
        arr = np.asarray(u.coeffs, dtype=float)
        scale = np.abs(arr).max()
        is_zero = list(np.abs(arr) <= tol * scale)
        nonneg = bool(np.all(arr >= -tol * scale))
    if not nonneg:
        raise ValueError("coefficients must be nonnegative")
    while is_zero and is_zero[-1]:  # declared degree above the true one
        is_zero.pop()
    if not is_zero:
        raise ZeroPolynomialError("operation needs a nonzero polynomial")
    verdict = all_roots_real(u)
    if verdict is not Verdict.REAL_ROOTED:
        raise NotCertifiedError(f"polynomial must be certified real rooted, got {verdict.value}")
    first_nonzero = is_zero.index(False)
    return not any(is_zero[first_nonzero:])
