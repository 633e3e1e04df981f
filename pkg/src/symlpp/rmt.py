"""Eigenvalue averages over the classical compact groups and the model formulas.

Two engines compute the same averages.  For polynomial integrands the Weyl
densities and the class function are expanded as exact Laurent polynomials in
the angle variables and the average is a rational constant-term extraction.
Everything else goes through product trapezoidal quadrature on a uniform grid
whose node count exceeds the integrand's trigonometric degree, so polynomial
parts are still integrated exactly and series parts contribute below the
requested tolerance.

Conventions: an average over a size-0 group is 1, and 0**0 = 1 wherever a
weight parameter is 0 with a vanishing exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .core import ModelSpec, Partition, alternating_sum
from .numerics import (
    GeomInv,
    PolyPlus,
    SymbolSpec,
    _truncation_order,
    det_exact,
    fourier_coefficients,
)
from .symfunc import _schur_rec, exact_distribution, odd_part_count

GROUP_FAMILIES = ("U", "Sp", "O+", "O-", "O")


@dataclass(frozen=True)
class GroupSpec:
    """Family plus the size convention used in the formulas: Sp(2l) has l pairs,
    O+(l)/O-(l) split by the parity of l, and 'O' means the half-half mixture."""

    family: str
    l: int

    def __post_init__(self):
        if self.family not in GROUP_FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.l < 0:
            raise ValueError("size parameter must be nonnegative")


@dataclass(frozen=True)
class ClassFunctionSpec:
    """Multiplicative class function: a per-eigenvalue symbol, an optional
    det(1 + alpha U) factor, and an optional Schur factor over all eigenvalues
    (forced real eigenvalues included), possibly with extra appended variables."""

    symbol: SymbolSpec = SymbolSpec(())
    det_alpha: Fraction | None = None
    schur_rho: Partition | None = None
    schur_extra_vars: tuple[Fraction, ...] = ()

    def effective_symbol(self) -> SymbolSpec:
        if self.det_alpha is None:
            return self.symbol
        return self.symbol.times(PolyPlus(Fraction(self.det_alpha), 1))

    def is_polynomial(self) -> bool:
        return self.effective_symbol().is_polynomial()


UNIT = ClassFunctionSpec()


# ---------------------------------------------------------------------------
# Eigenvalue structure of each family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Structure:
    pairs: int                    # number of free angles
    paired: bool                  # each free angle carries z and its conjugate
    forced: tuple[int, ...]       # real eigenvalues fixed by the component
    single: str | None            # per-angle density factor
    pair_kind: str                # "A" -> |z_j - z_k|^2 only, "BC" -> both factors
    divisor: int


def _structure(family: str, l: int) -> _Structure:
    if family == "U":
        return _Structure(l, False, (), None, "A", factorial(l))
    if family == "Sp":
        return _Structure(l, True, (), "sin2", "BC", 2**l * factorial(l))
    if family == "O+":
        if l % 2 == 0:
            m = l // 2
            divisor = 2 ** (m - 1) * factorial(m) if m else 1
            return _Structure(m, True, (), None, "BC", divisor)
        m = (l - 1) // 2
        return _Structure(m, True, (1,), "one_minus", "BC", 2**m * factorial(m))
    if family == "O-":
        if l % 2 == 0:
            m = l // 2
            if m == 0:
                return _Structure(0, True, (), None, "BC", 1)
            return _Structure(m - 1, True, (1, -1), "sin2", "BC",
                              2 ** (m - 1) * factorial(m - 1))
        m = (l - 1) // 2
        return _Structure(m, True, (-1,), "one_plus", "BC", 2**m * factorial(m))
    raise ValueError(f"no eigenvalue structure for {family!r}")


_SINGLE_DEGREE = {"sin2": 2, "one_minus": 1, "one_plus": 1, None: 0}


# ---------------------------------------------------------------------------
# Exact engine: multivariate Laurent polynomials and constant terms
# ---------------------------------------------------------------------------


class _ZPoly:
    """Laurent polynomial in the angle variables with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[e] = c

    @staticmethod
    def constant(nvars: int, value) -> "_ZPoly":
        return _ZPoly(nvars, {(0,) * nvars: Fraction(value)})

    @staticmethod
    def monomial(nvars: int, var: int, power: int, coeff=1) -> "_ZPoly":
        e = [0] * nvars
        e[var] = power
        return _ZPoly(nvars, {tuple(e): Fraction(coeff)})

    def __add__(self, other):
        if not isinstance(other, _ZPoly):
            other = _ZPoly.constant(self.nvars, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return _ZPoly(self.nvars, out)

    __radd__ = __add__

    def __mul__(self, other):
        if not isinstance(other, _ZPoly):
            c = Fraction(other)
            return _ZPoly(self.nvars, {e: v * c for e, v in self.terms.items()})
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                out[e] = s
        return _ZPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = _ZPoly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))


def _density_zpoly(st: _Structure) -> _ZPoly:
    p = st.pairs
    out = _ZPoly.constant(p, 1)
    two = Fraction(2)
    for j in range(p):
        if st.single == "sin2":
            out = out * (_ZPoly.constant(p, two)
                         + _ZPoly.monomial(p, j, 2, -1) + _ZPoly.monomial(p, j, -2, -1))
        elif st.single == "one_minus":
            out = out * (_ZPoly.constant(p, two)
                         + _ZPoly.monomial(p, j, 1, -1) + _ZPoly.monomial(p, j, -1, -1))
        elif st.single == "one_plus":
            out = out * (_ZPoly.constant(p, two)
                         + _ZPoly.monomial(p, j, 1, 1) + _ZPoly.monomial(p, j, -1, 1))
    for j in range(p):
        for k in range(j + 1, p):
            diff = _ZPoly(p, {
                _exps(p, {j: 0}): two,
                _exps(p, {j: 1, k: -1}): Fraction(-1),
                _exps(p, {j: -1, k: 1}): Fraction(-1),
            })
            out = out * diff
            if st.pair_kind == "BC":
                summ = _ZPoly(p, {
                    _exps(p, {j: 0}): two,
                    _exps(p, {j: 1, k: 1}): Fraction(-1),
                    _exps(p, {j: -1, k: -1}): Fraction(-1),
                })
                out = out * summ
    return out


def _exps(p: int, assignments: dict[int, int]) -> tuple[int, ...]:
    e = [0] * p
    for var, power in assignments.items():
        e[var] = power
    return tuple(e)


def _exact_average(st: _Structure, cf: ClassFunctionSpec) -> Fraction:
    symbol = cf.effective_symbol()
    if not symbol.is_polynomial():
        raise ValueError("exact engine needs a polynomial class function")
    p = st.pairs
    f = _density_zpoly(st)
    for j in range(p):
        for fac in symbol.factors:
            f = f * (_ZPoly.constant(p, 1)
                     + _ZPoly.monomial(p, j, fac.exponent_sign, fac.c))
            if st.paired:
                f = f * (_ZPoly.constant(p, 1)
                         + _ZPoly.monomial(p, j, -fac.exponent_sign, fac.c))
    scalar = Fraction(1)
    for eps in st.forced:
        for fac in symbol.factors:
            scalar *= 1 + fac.c * eps
    if cf.schur_rho is not None:
        eigs: list = []
        for j in range(p):
            eigs.append(_ZPoly.monomial(p, j, 1))
            if st.paired:
                eigs.append(_ZPoly.monomial(p, j, -1))
        eigs.extend(Fraction(eps) for eps in st.forced)
        eigs.extend(Fraction(x) for x in cf.schur_extra_vars)
        value = _schur_rec(cf.schur_rho.parts, len(eigs), tuple(eigs), {})
        f = f * value if isinstance(value, _ZPoly) else f * Fraction(value)
    return f.constant_term() * scalar / st.divisor


# ---------------------------------------------------------------------------
# Quadrature engine
# ---------------------------------------------------------------------------


def _angle_degree(st: _Structure, cf: ClassFunctionSpec, tol: float) -> int:
    symbol = cf.effective_symbol()
    norm = symbol._norm_product()
    sym_deg = sum(_truncation_order(fac, tol, norm) for fac in symbol.factors)
    degree = _SINGLE_DEGREE[st.single] + (st.pairs - 1) * (2 if st.pair_kind == "BC" else 1)
    degree += sym_deg * (2 if st.paired else 1)
    if cf.schur_rho is not None:
        degree += cf.schur_rho.weight
    return max(degree, 1)


def _forced_only_average(st: _Structure, cf: ClassFunctionSpec) -> Fraction:
    """No free angles: the average is a finite product over forced eigenvalues."""
    symbol = cf.effective_symbol()
    value = Fraction(1)
    for eps in st.forced:
        for fac in symbol.factors:
            if isinstance(fac, PolyPlus):
                value *= 1 + fac.c * eps
            elif isinstance(fac, GeomInv):
                value /= 1 - fac.c * eps
            else:
                raise ValueError("exponential factor is not rational at a point")
    if cf.schur_rho is not None:
        eigs = tuple(Fraction(eps) for eps in st.forced) + tuple(
            Fraction(x) for x in cf.schur_extra_vars)
        value *= _schur_rec(cf.schur_rho.parts, len(eigs), eigs, {})
    return value / st.divisor


def _quad_average(st: _Structure, cf: ClassFunctionSpec, tol: float) -> float:
    symbol = cf.effective_symbol()
    p = st.pairs
    if p == 0:
        try:
            return _forced_only_average(st, cf)
        except ValueError:
            pass
        value = 1.0
        for eps in st.forced:
            value *= float(np.real(symbol.evaluate(complex(eps))))
        if cf.schur_rho is not None:
            eigs = tuple(float(eps) for eps in st.forced) + tuple(
                float(x) for x in cf.schur_extra_vars)
            value *= float(_schur_rec(cf.schur_rho.parts, len(eigs), eigs, {}))
        return value / st.divisor
    scalar = 1.0
    for eps in st.forced:
        scalar *= float(np.real(symbol.evaluate(complex(eps))))

    nodes = 2 * _angle_degree(st, cf, tol) + 2
    theta = 2 * np.pi * np.arange(nodes) / nodes
    grids = np.meshgrid(*([theta] * p), indexing="ij")
    zs = [np.exp(1j * g.ravel()) for g in grids]

    weight = np.ones_like(zs[0])
    for j in range(p):
        z = zs[j]
        if st.single == "sin2":
            weight = weight * (2 - z**2 - z**-2)
        elif st.single == "one_minus":
            weight = weight * (2 - z - 1 / z)
        elif st.single == "one_plus":
            weight = weight * (2 + z + 1 / z)
    for j in range(p):
        for k in range(j + 1, p):
            weight = weight * (2 - zs[j] / zs[k] - zs[k] / zs[j])
            if st.pair_kind == "BC":
                weight = weight * (2 - zs[j] * zs[k] - 1 / (zs[j] * zs[k]))

    values = np.ones_like(zs[0])
    for j in range(p):
        values = values * symbol.evaluate(zs[j])
        if st.paired:
            values = values * symbol.evaluate(np.conj(zs[j]))
    if cf.schur_rho is not None:
        eigs: list = []
        for j in range(p):
            eigs.append(zs[j])
            if st.paired:
                eigs.append(np.conj(zs[j]))
        eigs.extend(complex(eps) for eps in st.forced)
        eigs.extend(complex(x) for x in cf.schur_extra_vars)
        values = values * _schur_rec(cf.schur_rho.parts, len(eigs), tuple(eigs), {})

    mean = (weight * values).mean()
    return float(np.real(mean)) * scalar / st.divisor


def group_average(group: GroupSpec, cf: ClassFunctionSpec = UNIT,
                  tol: float = 1e-12, method: str = "auto"):
    """Average of the class function over the group's eigenvalue measure.

    Returns a Fraction from the exact constant-term engine when the integrand
    is polynomial (or always under method='exact'), otherwise a float from
    trapezoidal quadrature.  family 'O' averages the two components.
    """
    if group.family == "O":
        plus = group_average(GroupSpec("O+", group.l), cf, tol, method)
        minus = group_average(GroupSpec("O-", group.l), cf, tol, method)
        if isinstance(plus, Fraction) and isinstance(minus, Fraction):
            return (plus + minus) / 2
        return (float(plus) + float(minus)) / 2.0
    st = _structure(group.family, group.l)
    if method == "exact" or (method == "auto" and cf.is_polynomial()):
        return _exact_average(st, cf)
    if method not in ("auto", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    return _quad_average(st, cf, tol)


def sp_average(cf: ClassFunctionSpec, l: int, tol: float = 1e-12):
    return group_average(GroupSpec("Sp", l), cf, tol)


def o_average(cf: ClassFunctionSpec, l: int, component: str = "mean",
              tol: float = 1e-12):
    family = {"plus": "O+", "minus": "O-", "mean": "O"}[component]
    return group_average(GroupSpec(family, l), cf, tol)


def u_average(s: SymbolSpec, l: int, tol: float = 1e-12):
    """U(l) average of a multiplicative symbol as a Toeplitz determinant.

    The (j,k) entry is the (j-k)-th Fourier coefficient of the symbol; exact
    rational whenever the symbol is polynomial, float otherwise.
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    if l == 0:
        return Fraction(1) if s.is_polynomial() else 1.0
    coeffs, exact = fourier_coefficients(s, -(l - 1), l - 1, tol)
    rows = [[coeffs[j - k] for k in range(l)] for j in range(l)]
    if exact:
        return det_exact(rows)
    return float(np.linalg.det(np.array(rows, dtype=float)))


# ---------------------------------------------------------------------------
# Schur-average identities
# ---------------------------------------------------------------------------


def _as_diff(lhs, rhs) -> float:
    return abs(float(lhs) - float(rhs))


def sp_schur_identity(rho: Partition, beta: Fraction, l: int,
                      odd_case: bool, tol: float = 1e-12) -> dict:
    """Evaluate both sides of the symplectic Schur-average identity.

    Even case: average of s_rho on the 2l eigenvalues against the
    |1 - beta e^{-i theta}|^{-2} weight.  Odd case: beta joins the eigenvalue
    list as an extra Schur variable and the weight is plain.  Both sides equal
    beta ** (alternating sum of rho), with 0**0 = 1.
    """
    beta = Fraction(beta)
    if not 0 <= beta < 1:
        raise ValueError("beta must lie in [0, 1)")
    limit = 2 * l + 1 if odd_case else 2 * l
    if rho.length > limit:
        raise ValueError(f"rho has more than {limit} parts")
    if odd_case:
        cf = ClassFunctionSpec(schur_rho=rho, schur_extra_vars=(beta,))
    else:
        cf = ClassFunctionSpec(symbol=SymbolSpec((GeomInv(beta, -1),)), schur_rho=rho)
    lhs = sp_average(cf, l, tol)
    rhs = beta ** alternating_sum(rho)
    exact = isinstance(lhs, Fraction)
    return {
        "lhs": lhs,
        "rhs": rhs,
        "abs_diff": Fraction(0) if exact and lhs == rhs else _as_diff(lhs, rhs),
        "exact": exact,
    }


def o_schur_identity(rho: Partition, alpha: Fraction, l: int,
                     tol: float = 1e-12) -> dict:
    """Averages of det(1 + alpha U) s_rho(U) over both orthogonal components.

    With n_odd odd parts in rho (padded to length l), the predictions are
    alpha**n_odd + alpha**(l - n_odd) on the plus component, the difference on
    the minus component, and alpha**n_odd for the half-half mixture.
    """
    alpha = Fraction(alpha)
    if rho.length > l:
        raise ValueError("rho has more parts than eigenvalues")
    cf = ClassFunctionSpec(det_alpha=alpha, schur_rho=rho)
    plus = o_average(cf, l, "plus", tol)
    minus = o_average(cf, l, "minus", tol)
    mean = o_average(cf, l, "mean", tol)
    n_odd = odd_part_count(rho)
    expected = {
        "plus": alpha**n_odd + alpha ** (l - n_odd),
        "minus": alpha**n_odd - alpha ** (l - n_odd),
        "mean": alpha**n_odd,
    }
    actual = {"plus": plus, "minus": minus, "mean": mean}
    report = {"expected": expected, "actual": actual}
    for key in expected:
        a, e = actual[key], expected[key]
        if isinstance(a, Fraction):
            report[f"abs_diff_{key}"] = Fraction(0) if a == e else _as_diff(a, e)
        else:
            report[f"abs_diff_{key}"] = _as_diff(a, e)
    return report


def o_component_reflection_gap(rho: Partition, alpha: Fraction, l_odd: int,
                               tol: float = 1e-12):
    """Difference in the change-of-variables relation between the two odd
    components: <det(1+aU)s_rho>_{O-(l)} - (-1)^|rho| <det(1-aU)s_rho>_{O+(l)}."""
    if l_odd % 2 == 0:
        raise ValueError("relation is for odd sizes")
    alpha = Fraction(alpha)
    left = o_average(ClassFunctionSpec(det_alpha=alpha, schur_rho=rho), l_odd, "minus", tol)
    right = o_average(ClassFunctionSpec(det_alpha=-alpha, schur_rho=rho), l_odd, "plus", tol)
    sign = -1 if rho.weight % 2 else 1
    if isinstance(left, Fraction) and isinstance(right, Fraction):
        return left - sign * right
    return float(left) - sign * float(right)


# ---------------------------------------------------------------------------
# Model distributions through matrix averages
# ---------------------------------------------------------------------------


def johansson_symbol(a, b) -> SymbolSpec:
    factors = tuple(PolyPlus(x, -1) for x in a) + tuple(PolyPlus(x, 1) for x in b)
    return SymbolSpec(factors)


def _upper_pair_product(q) -> Fraction:
    out = Fraction(1)
    for i in range(len(q)):
        for j in range(i + 1, len(q)):
            out *= 1 - q[i] * q[j]
    return out


def antidiagonal_odd_prefactors(q) -> dict[str, Fraction]:
    """Both candidate prefactors for the odd-bound anti-diagonal formula.

    'standard' uses prod_{i<j} (1 - q_i q_j) like every parallel formula;
    'printed' uses prod_{i<j} (1 - q_i q_{n+1-j}) as displayed in the source
    of the formula.  The verification harness reports which one matches the
    exact law; they coincide for n = 1.
    """
    q = tuple(q)
    n = len(q)
    base = Fraction(1)
    for x in q:
        base *= 1 - x * x
    printed = base
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            printed *= 1 - q[i - 1] * q[n - j]
    return {"standard": base * _upper_pair_product(q), "printed": printed}


def rmt_method(spec: ModelSpec) -> str:
    return {
        "johansson": "toeplitz-U",
        "bernoulli": "toeplitz-U-series",
        "antidiagonal": "sp-average",
        "diagonal": "o-average-mean",
        "doublysymmetric": "toeplitz-U",
        "pointreflection": "exact-factorization (no separate matrix-average formula)",
    }[spec.variant]


def model_rmt_distribution(spec: ModelSpec, l: int, tol: float = 1e-12):
    """Pr(L <= l) through the model's matrix-average formula.

    Exact (Fraction) for the polynomial routes: the square-lattice and doubly
    symmetric Toeplitz determinants, the odd anti-diagonal bound, the even
    anti-diagonal bound at beta = 0, and the diagonal model.  Float for the
    Bernoulli series symbol and the even anti-diagonal bound at beta > 0.
    The point-reflection law factors into square-lattice laws instead of
    having its own average; this dispatches to the exact engine.
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    v = spec.variant
    if v == "johansson":
        pref = Fraction(1)
        for x in spec.a:
            for y in spec.b:
                pref *= 1 - x * y
        return pref * u_average(johansson_symbol(spec.a, spec.b), l, tol)
    if v == "bernoulli":
        # Polynomial factors carry the column parameters and the geometric
        # inverses the row parameters; the transposed assignment reproduces the
        # length-bounded sum instead of the width-bounded law.
        pref = Fraction(1)
        for x in spec.a:
            for y in spec.b:
                pref /= 1 + x * y
        symbol = SymbolSpec(tuple(PolyPlus(y, 1) for y in spec.b)
                            + tuple(GeomInv(x, -1) for x in spec.a))
        value = u_average(symbol, l, tol)
        return float(pref) * value if not isinstance(value, Fraction) else pref * value
    if v == "antidiagonal":
        q, beta, h = spec.q, spec.beta, l // 2
        if l % 2 == 0:
            pref = Fraction(1)
            for x in q:
                pref *= (1 - x * x) / (1 + beta * x)
            pref *= _upper_pair_product(q)
            symbol = SymbolSpec((GeomInv(beta, -1),)
                                + tuple(PolyPlus(x, 1) for x in q))
            value = sp_average(ClassFunctionSpec(symbol=symbol), h, tol)
        else:
            pref = antidiagonal_odd_prefactors(q)["standard"]
            symbol = SymbolSpec(tuple(PolyPlus(x, 1) for x in q))
            value = sp_average(ClassFunctionSpec(symbol=symbol), h, tol)
        return pref * value if isinstance(value, Fraction) else float(pref) * value
    if v == "diagonal":
        pref = Fraction(1)
        for x in spec.q:
            pref *= 1 - spec.alpha * x
        pref *= _upper_pair_product(spec.q)
        cf = ClassFunctionSpec(symbol=SymbolSpec(tuple(PolyPlus(x, 1) for x in spec.q)),
                               det_alpha=spec.alpha)
        value = o_average(cf, l, "mean", tol)
        return pref * value if isinstance(value, Fraction) else float(pref) * value
    if v == "doublysymmetric":
        pref = Fraction(1)
        for x in spec.q:
            pref *= 1 - spec.alpha * x
        for x in spec.q:
            for y in spec.q:
                pref *= 1 - x * y
        factors = (PolyPlus(spec.alpha, 1),)
        for x in spec.q:
            factors += (PolyPlus(x, 1), PolyPlus(x, -1))
        return pref * u_average(SymbolSpec(factors), l // 2, tol)
    if v == "pointreflection":
        return exact_distribution(spec, l)
    raise ValueError(f"unsupported model variant {v!r}")
