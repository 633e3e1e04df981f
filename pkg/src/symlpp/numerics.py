"""Exact linear algebra, circle symbols, and their Fourier coefficients.

Symbols are multiplicative descriptions of scalar functions on the unit circle,
built from three factor kinds: (1 + c z^s), (1 - c z^s)^-1 with |c| < 1, and
exp(c (z + 1/z) / 2).  Purely polynomial symbols keep exact rational Fourier
data; the inverse and exponential factors go through truncated series and the
results are tagged approximate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import exp, factorial

from .core import Rational


# ---------------------------------------------------------------------------
# Laurent polynomials (one variable, exact coefficients)
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Finitely supported map exponent -> Fraction; zero coefficients are dropped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, Fraction] | None = None):
        self.coeffs: dict[int, Fraction] = {}
        if coeffs:
            for k, c in coeffs.items():
                c = Fraction(c)
                if c:
                    self.coeffs[int(k)] = c

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: Fraction(1)})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs.get(k, Fraction(0))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return LaurentPoly(out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, Fraction] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, Fraction(0)) + c1 * c2
        return LaurentPoly(out)

    def scaled(self, c) -> "LaurentPoly":
        c = Fraction(c)
        return LaurentPoly({k: v * c for k, v in self.coeffs.items()})

    def min_exponent(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def max_exponent(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def __repr__(self):
        terms = [f"{c}*z^{k}" for k, c in sorted(self.coeffs.items())]
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# Symbols
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyPlus:
    """Factor (1 + c * z^sign)."""

    c: Fraction
    exponent_sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        if self.exponent_sign not in (1, -1):
            raise ValueError("exponent sign must be +1 or -1")


@dataclass(frozen=True)
class GeomInv:
    """Factor (1 - c * z^sign)^(-1) with |c| < 1 so the series converges."""

    c: Fraction
    exponent_sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        if self.exponent_sign not in (1, -1):
            raise ValueError("exponent sign must be +1 or -1")
        if not abs(self.c) < 1:
            raise ValueError(f"geometric factor needs |c| < 1, got {self.c}")


@dataclass(frozen=True)
class ExpCos:
    """Factor exp(c * (z + 1/z) / 2), whose k-th Fourier coefficient is I_k(c)."""

    c: float


Factor = PolyPlus | GeomInv | ExpCos


@dataclass(frozen=True)
class SymbolSpec:
    factors: tuple[Factor, ...]

    def __post_init__(self):
        kept = []
        for f in self.factors:
            if isinstance(f, (PolyPlus, GeomInv)) and f.c == 0:
                continue
            if isinstance(f, ExpCos) and f.c == 0.0:
                continue
            kept.append(f)
        object.__setattr__(self, "factors", tuple(kept))

    def is_polynomial(self) -> bool:
        return all(isinstance(f, PolyPlus) for f in self.factors)

    def poly(self) -> LaurentPoly:
        if not self.is_polynomial():
            raise ValueError("symbol has non-polynomial factors")
        out = LaurentPoly.one()
        for f in self.factors:
            out = out * LaurentPoly({0: Fraction(1), f.exponent_sign: f.c})
        return out

    def evaluate(self, z):
        """Value at a point (or numpy array of points) on the unit circle."""
        out = 1
        for f in self.factors:
            if isinstance(f, ExpCos):
                out = out * _exp_of(f.c * (z + 1 / z) / 2)
                continue
            zz = z if f.exponent_sign == 1 else 1 / z
            if isinstance(f, PolyPlus):
                out = out * (1 + float(f.c) * zz)
            else:
                out = out / (1 - float(f.c) * zz)
        return out

    def times(self, *extra: Factor) -> "SymbolSpec":
        return SymbolSpec(self.factors + tuple(extra))

    def series_order(self, tol: float) -> int:
        """Total truncation order of the non-polynomial factors at tolerance tol."""
        return sum(_truncation_order(f, tol, self._norm_product())
                   for f in self.factors if not isinstance(f, PolyPlus))

    def poly_degree(self) -> int:
        return sum(1 for f in self.factors if isinstance(f, PolyPlus))

    def _norm_product(self) -> float:
        out = 1.0
        for f in self.factors:
            if isinstance(f, PolyPlus):
                out *= 1 + abs(float(f.c))
            elif isinstance(f, GeomInv):
                out *= 1 / (1 - abs(float(f.c)))
            else:
                out *= exp(abs(f.c))
        return out


def _exp_of(x):
    try:
        return exp(x)
    except TypeError:
        import numpy as np

        return np.exp(x)


def symbol_from_poly_factors(pairs) -> SymbolSpec:
    """SymbolSpec from (coefficient, sign) pairs, every factor (1 + c z^sign)."""
    return SymbolSpec(tuple(PolyPlus(c, s) for c, s in pairs))


# ---------------------------------------------------------------------------
# Fourier coefficients
# ---------------------------------------------------------------------------


def bessel_i(k: int, c: float, tol: float = 1e-15) -> float:
    """Modified Bessel I_k(c) by its ascending power series."""
    k = abs(int(k))
    term = (c / 2) ** k / factorial(k)
    total = term
    m = 1
    while abs(term) > tol * max(1.0, abs(total)) or m < 4:
        term *= (c / 2) ** 2 / (m * (m + k))
        total += term
        m += 1
        if m > 10_000:
            raise ArithmeticError("Bessel series failed to converge")
    return total


def _truncation_order(f: Factor, tol: float, norm_product: float) -> int:
    if isinstance(f, PolyPlus):
        return 1
    if isinstance(f, GeomInv):
        c = abs(float(f.c))
        if c == 0.0:
            return 0
        n = 0
        bound = norm_product / (1 - c)
        while bound * c ** (n + 1) >= tol:
            n += 1
            if n > 100_000:
                raise ArithmeticError("geometric truncation failed to converge")
        return n
    c = abs(f.c)
    n = 0
    bound = 2 * exp(c * c / 4) * norm_product
    while bound * (c / 2) ** (n + 1) / factorial(min(n + 1, 170)) >= tol:
        n += 1
        if n > 500:
            break
    return n


def fourier_coefficients(s: SymbolSpec, k_min: int, k_max: int,
                         tol: float = 1e-12) -> tuple[dict[int, Rational | float], bool]:
    """Coefficients of z^k, k_min <= k <= k_max, and whether they are exact.

    Polynomial symbols convolve exactly.  Geometric inverses expand as
    truncated geometric series with the tail below tol; the exponential factor
    expands in modified Bessel coefficients.  Any truncation marks the whole
    result approximate.
    """
    if k_min > k_max:
        raise ValueError("empty coefficient range")
    norm_product = s._norm_product()
    exact = True
    acc: dict[int, Fraction | float] = {0: Fraction(1)}

    def convolve(table: dict[int, Fraction | float]):
        nonlocal acc
        out: dict = {}
        for k1, c1 in acc.items():
            for k2, c2 in table.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        acc = out

    for f in s.factors:
        if isinstance(f, PolyPlus):
            convolve({0: Fraction(1), f.exponent_sign: f.c})
        elif isinstance(f, GeomInv):
            exact = False
            n = _truncation_order(f, tol, norm_product)
            convolve({r * f.exponent_sign: f.c**r for r in range(n + 1)})
        else:
            exact = False
            n = _truncation_order(f, tol, norm_product)
            convolve({k: bessel_i(k, f.c) for k in range(-n, n + 1)})

    window = {k: acc.get(k, Fraction(0) if exact else 0.0) for k in range(k_min, k_max + 1)}
    if not exact:
        window = {k: float(v) for k, v in window.items()}
    return window, exact


# ---------------------------------------------------------------------------
# Exact determinant and Pfaffian
# ---------------------------------------------------------------------------


def det_exact(matrix) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination; all divisions exact."""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _check_skew(matrix) -> list[list]:
    m = [list(row) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("Pfaffian needs a square matrix")
    for j in range(n):
        if m[j][j] != 0:
            raise ValueError("skew matrix needs a zero diagonal")
        for k in range(j + 1, n):
            if m[j][k] != -m[k][j]:
                raise ValueError(f"not skew-symmetric at ({j},{k})")
    return m


def _pf_expand(m, indices, memo):
    if not indices:
        return 1
    key = indices
    cached = memo.get(key)
    if cached is not None:
        return cached
    first = indices[0]
    rest = indices[1:]
    total = 0
    for pos, j in enumerate(rest):
        sub = rest[:pos] + rest[pos + 1:]
        term = m[first][j] * _pf_expand(m, sub, memo)
        total = total + term if pos % 2 == 0 else total - term
    memo[key] = total
    return total


def _pf_eliminate(m):
    n = len(m)
    sign = 1
    result = 1
    while n:
        row0 = m[0]
        pivot = None
        best = 0
        for j in range(1, n):
            x = row0[j]
            if x != 0:
                if isinstance(x, float):
                    if abs(x) > best:
                        best, pivot = abs(x), j
                else:
                    pivot = j
                    break
        if pivot is None:
            return 0
        if pivot != 1:
            for row in m:
                row[1], row[pivot] = row[pivot], row[1]
            m[1], m[pivot] = m[pivot], m[1]
            sign = -sign
        a = m[0][1]
        result = result * a
        reduced = [[m[i][j] - (m[0][i] * m[1][j] - m[0][j] * m[1][i]) / a
                    for j in range(2, n)] for i in range(2, n)]
        m = reduced
        n -= 2
    return sign * result


def pfaffian(matrix):
    """Pfaffian of an even-dimensional skew-symmetric matrix; Pf(A)^2 = det(A)."""
    m = _check_skew(matrix)
    n = len(m)
    if n % 2 == 1:
        raise ValueError("Pfaffian needs even dimension")
    if n == 0:
        return Fraction(1)
    if n <= 6:
        return _pf_expand(m, tuple(range(n)), {})
    return _pf_eliminate(m)


def _pf_restricted(m, subset: tuple[int, ...]):
    return _pf_expand(m, subset, {})


# ---------------------------------------------------------------------------
# Pfaffian identities
# ---------------------------------------------------------------------------


def pfaffian_sign_identity_check(x, f_values) -> bool:
    """Check the closed pairing evaluation of Pf[(f_j/f_k)^sgn(x_j-x_k) sgn(x_j-x_k)].

    x is an even-length list of distinct integers, f_values the matching
    positive rationals f(x_j).  The right-hand side pairs positions sorted by
    decreasing x value and carries the sign of that sorting permutation.
    """
    x = [int(v) for v in x]
    f = [Fraction(v) for v in f_values]
    if len(x) != len(f):
        raise ValueError("x and f_values must align")
    if len(x) % 2 == 1:
        raise ValueError("need an even number of points")
    if len(set(x)) != len(x):
        raise ValueError("duplicate x entries")
    if any(v <= 0 for v in f):
        raise ValueError("f values must be positive")
    n = len(x)
    mat = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        for k in range(n):
            if j == k:
                continue
            sgn = 1 if x[j] > x[k] else -1
            ratio = f[j] / f[k] if sgn == 1 else f[k] / f[j]
            mat[j][k] = sgn * ratio
    lhs = pfaffian(mat)

    order = sorted(range(n), key=lambda j: -x[j])
    inversions = sum(1 for a in range(n) for b in range(a + 1, n)
                     if order[a] > order[b])
    rhs = Fraction(1) if inversions % 2 == 0 else Fraction(-1)
    for j in range(0, n, 2):
        rhs *= f[order[j]] / f[order[j + 1]]
    return lhs == rhs


def pfaffian_minor_sum_check(a, b) -> bool:
    """Check Pf(A+B) as a signed sum of complementary-minor Pfaffians.

    Enumerates every even-size index subset S, with weights
    (-1)^(sum of the 1-based indices in S minus |S|/2).
    """
    ma = _check_skew(a)
    mb = _check_skew(b)
    n = len(ma)
    if n != len(mb):
        raise ValueError("matrices must have equal dimension")
    if n % 2 == 1 or n > 8:
        raise ValueError("need even dimension at most 8")
    total = 0
    full = list(range(n))
    for mask in range(1 << n):
        subset = tuple(i for i in full if mask >> i & 1)
        if len(subset) % 2:
            continue
        complement = tuple(i for i in full if not mask >> i & 1)
        weight = sum(i + 1 for i in subset) - len(subset) // 2
        term = _pf_restricted(ma, subset) * _pf_restricted(mb, complement)
        total = total + term if weight % 2 == 0 else total - term
    lhs = pfaffian([[ma[i][j] + mb[i][j] for j in range(n)] for i in range(n)])
    return lhs == total
