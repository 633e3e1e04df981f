"""Schur polynomials, bounded pairing sums, 2-quotients, and exact cumulative laws.

Everything here is exact: parameters come in as Fractions and probabilities go
out as Fractions.  The same branching evaluator also accepts complex or numpy
values, which the matrix-average engine reuses on quadrature grids.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .core import (
    ModelSpec,
    Partition,
    alternating_sum,
    conjugate,
    partitions_in_box,
)
from .numerics import det_exact
from .rsk import Tableau, evacuate

# ---------------------------------------------------------------------------
# Schur evaluation
# ---------------------------------------------------------------------------


def _strips_below(parts: tuple[int, ...]):
    """Partitions nu interlacing mu (mu/nu a horizontal strip), as raw tuples."""
    if not parts:
        yield ()
        return
    bounds = []
    for i, p in enumerate(parts):
        lo = parts[i + 1] if i + 1 < len(parts) else 0
        bounds.append(range(lo, p + 1))
    for choice in product(*bounds):
        yield tuple(c for c in choice if c > 0)


def _schur_rec(parts: tuple[int, ...], k: int, xs, memo):
    if not parts:
        return 1
    if len(parts) > k:
        return 0
    key = (parts, k)
    cached = memo.get(key)
    if cached is not None:
        return cached
    x = xs[k - 1]
    w = sum(parts)
    total = 0
    for nu in _strips_below(parts):
        strip = w - sum(nu)
        term = _schur_rec(nu, k - 1, xs, memo)
        total = total + term * x**strip if strip else total + term
    memo[key] = total
    return total


def schur(mu: Partition, xs, memo=None):
    """Schur polynomial s_mu at the variable list xs (zero when len(mu) > len(xs)).

    The branching recursion over horizontal strips never divides, so repeated
    variables are fine and any value type with +, * and integer powers works.
    """
    xs = tuple(xs)
    if memo is None:
        memo = {}
    return _schur_rec(tuple(mu.parts), len(xs), xs, memo)


def schur_bialternant(mu: Partition, xs) -> Fraction:
    """Cross-check evaluator: ratio of alternants, valid for distinct rational xs."""
    xs = tuple(Fraction(x) for x in xs)
    n = len(xs)
    if len(set(xs)) != n:
        raise ValueError("bialternant needs distinct variables")
    if mu.length > n:
        return Fraction(0)
    lam = mu.padded(n)
    num = [[x ** (n - k + lam[k - 1]) for k in range(1, n + 1)] for x in xs]
    den = [[x ** (n - k) for k in range(1, n + 1)] for x in xs]
    return det_exact(num) / det_exact(den)


# ---------------------------------------------------------------------------
# Bounded sums
# ---------------------------------------------------------------------------


def bounded_cauchy_sum(a, b, l: int) -> Fraction:
    """Sum of s_mu(a) s_mu(b) over partitions with mu_1 <= l."""
    if l < 0:
        raise ValueError("bound must be nonnegative")
    a, b = tuple(a), tuple(b)
    memo_a: dict = {}
    memo_b: dict = {}
    total = Fraction(0)
    for mu in partitions_in_box(l, min(len(a), len(b))):
        total += _schur_rec(mu.parts, len(a), a, memo_a) * _schur_rec(mu.parts, len(b), b, memo_b)
    return total


def bounded_dual_cauchy_sum(a, b, l: int) -> Fraction:
    """Sum of s_{mu'}(a) s_mu(b) over mu_1 <= l; mu_1 <= len(a) holds automatically."""
    if l < 0:
        raise ValueError("bound must be nonnegative")
    a, b = tuple(a), tuple(b)
    memo_a: dict = {}
    memo_b: dict = {}
    total = Fraction(0)
    for mu in partitions_in_box(min(l, len(a)), len(b)):
        total += (_schur_rec(conjugate(mu).parts, len(a), a, memo_a)
                  * _schur_rec(mu.parts, len(b), b, memo_b))
    return total


def odd_part_count(mu: Partition) -> int:
    return sum(p % 2 for p in mu.parts)


def beta_weighted_sum(q, beta: Fraction, l: int) -> Fraction:
    """Bounded Schur sum with each mu weighted by beta ** (#odd parts of mu).

    The exponent equals the alternating sum of mu', the count of odd parts.
    """
    q = tuple(q)
    beta = Fraction(beta)
    memo: dict = {}
    total = Fraction(0)
    for mu in partitions_in_box(l, len(q)):
        total += beta ** odd_part_count(mu) * _schur_rec(mu.parts, len(q), q, memo)
    return total


def alpha_weighted_sum(q, alpha: Fraction, l: int) -> Fraction:
    """Bounded Schur sum weighted by alpha ** (#columns of odd length of mu).

    #odd columns of mu = #odd parts of mu' = alternating sum of mu.
    """
    q = tuple(q)
    alpha = Fraction(alpha)
    memo: dict = {}
    total = Fraction(0)
    for mu in partitions_in_box(l, len(q)):
        total += alpha ** alternating_sum(mu) * _schur_rec(mu.parts, len(q), q, memo)
    return total


# ---------------------------------------------------------------------------
# Dominoes and 2-quotients
# ---------------------------------------------------------------------------


def _color_counts(mu: Partition) -> tuple[int, int]:
    even = odd = 0
    for i, p in enumerate(mu.parts, start=1):
        # cells (i, j), j = 1..p; i+j even iff j has the parity of i
        same_parity = p // 2 if i % 2 == 0 else (p + 1) // 2
        even += same_parity
        odd += p - same_parity
    return even, odd


def domino_tilable(mu: Partition) -> bool:
    """True iff the diagram has equally many cells of each checkerboard colour."""
    even, odd = _color_counts(mu)
    return even == odd


def two_quotient(mu: Partition) -> tuple[Partition, Partition]:
    """2-quotient via beta-numbers, padding mu with zeros to an even length m.

    Beta-numbers mu_k + (m - k) split by parity; the even half maps through
    b -> b/2 and the odd half through b -> (b-1)/2, and each half has its
    staircase stripped.  |quotient_0| + |quotient_1| = |mu| / 2.  With this
    convention mu_1 <= 2l forces both first parts <= l, and mu_1 <= 2l + 1
    forces quotient_0 first part <= l + 1 and quotient_1 first part <= l.
    """
    even, odd = _color_counts(mu)
    if even != odd:
        raise ValueError(
            f"no domino tiling: colour counts {even} vs {odd} for {mu}")
    m = mu.length + (mu.length % 2)
    padded = mu.padded(m)
    betas = [padded[k] + (m - 1 - k) for k in range(m)]

    def strip(values: list[int]) -> Partition:
        values = sorted(values, reverse=True)
        r = len(values)
        return Partition(tuple(v - (r - 1 - idx) for idx, v in enumerate(values)))

    quotient_even = strip([b // 2 for b in betas if b % 2 == 0])
    quotient_odd = strip([(b - 1) // 2 for b in betas if b % 2 == 1])
    return quotient_even, quotient_odd


def selfdual_schur(mu: Partition, q) -> Fraction:
    """Generating function of self-dual path families with displacement mu.

    Zero unless mu admits a domino tiling; otherwise the product of the Schur
    polynomials of the two 2-quotient components.  For an even partition
    mu = 2*lambda this equals s_{lambda+} * s_{lambda-} with lambda+ the
    odd-indexed and lambda- the even-indexed parts of lambda.
    """
    q = tuple(q)
    if not domino_tilable(mu):
        return Fraction(0)
    q0, q1 = two_quotient(mu)
    memo: dict = {}
    return _schur_rec(q0.parts, len(q), q, memo) * _schur_rec(q1.parts, len(q), q, memo)


def even_partition_halves(lam: Partition) -> tuple[Partition, Partition]:
    """(odd-indexed parts, even-indexed parts) of lam, the halves paired with 2*lam."""
    return Partition(lam.parts[0::2]), Partition(lam.parts[1::2])


def iter_ssyt(mu: Partition, bound: int):
    """All semistandard fillings of shape mu with entries in 1..bound."""
    shape = mu.parts
    if not shape:
        yield Tableau((), bound)
        return
    grid = [[0] * p for p in shape]
    cells = [(r, c) for r, p in enumerate(shape) for c in range(p)]

    def rec(idx: int):
        if idx == len(cells):
            yield Tableau(tuple(tuple(row) for row in grid), bound)
            return
        r, c = cells[idx]
        lo = 1
        if c > 0:
            lo = max(lo, grid[r][c - 1])
        if r > 0:
            lo = max(lo, grid[r - 1][c] + 1)
        for v in range(lo, bound + 1):
            grid[r][c] = v
            yield from rec(idx + 1)
        grid[r][c] = 0

    yield from rec(0)


def selfdual_schur_oracle(mu: Partition, n: int, q) -> Fraction:
    """Brute force: sum over evacuation-fixed fillings of shape mu, content 2n.

    Under the identification of variable i with variable 2n+1-i a fixed filling
    contributes the monomial prod_i q_i ** (#letters i), i = 1..n, because its
    letter counts are complement-symmetric.
    """
    if mu.weight > 10 or n > 3:
        raise ValueError("oracle guard: |mu| <= 10 and n <= 3")
    q = tuple(q)
    if len(q) != n:
        raise ValueError("need one variable per reflected pair")
    total = Fraction(0)
    for t in iter_ssyt(mu, 2 * n):
        if evacuate(t) != t:
            continue
        counts = t.content()
        term = Fraction(1)
        for i in range(1, n + 1):
            if counts[i] != counts[2 * n + 1 - i]:
                raise AssertionError("fixed filling with asymmetric content")
            term *= q[i - 1] ** counts[i]
        total += term
    return total


# ---------------------------------------------------------------------------
# Exact cumulative laws
# ---------------------------------------------------------------------------


def _pair_product(a, b) -> Fraction:
    out = Fraction(1)
    for x in a:
        for y in b:
            out *= 1 - x * y
    return out


def johansson_prefactor(a, b) -> Fraction:
    return _pair_product(a, b)


def exact_distribution(spec: ModelSpec, l: int) -> Fraction:
    """Pr(L <= l) for the class statistic of the given model, exactly.

    johansson         prod(1 - a_i b_j) * bounded Cauchy sum at l
    bernoulli         prod(1 + a_i b_j)^-1 * bounded dual Cauchy sum at l
    antidiagonal      normalisation * beta-weighted sum at l
    diagonal          normalisation * alpha-weighted sum at l
    doublysymmetric   the statistic is even, so Pr(<=2l) = Pr(<=2l+1); the sum
                      pairs s_lam(q) with s_lam(q, alpha) over lam_1 <= floor(l/2)
    pointreflection   products of two square-case laws at the halved bound
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    v = spec.variant
    if v == "johansson":
        return johansson_prefactor(spec.a, spec.b) * bounded_cauchy_sum(spec.a, spec.b, l)
    if v == "bernoulli":
        pref = Fraction(1)
        for x in spec.a:
            for y in spec.b:
                pref /= 1 + x * y
        return pref * bounded_dual_cauchy_sum(spec.a, spec.b, l)
    q = spec.q
    n = len(q)
    if v == "antidiagonal":
        pref = Fraction(1)
        for x in q:
            pref *= (1 - x * x) / (1 + spec.beta * x)
        for i in range(n):
            for j in range(i + 1, n):
                pref *= 1 - q[i] * q[j]
        return pref * beta_weighted_sum(q, spec.beta, l)
    if v == "diagonal":
        pref = Fraction(1)
        for x in q:
            pref *= 1 - spec.alpha * x
        for i in range(n):
            for j in range(i + 1, n):
                pref *= 1 - q[i] * q[j]
        return pref * alpha_weighted_sum(q, spec.alpha, l)
    if v == "doublysymmetric":
        h = l // 2
        pref = _pair_product(q, q)
        for x in q:
            pref *= 1 - spec.alpha * x
        extended = q + (spec.alpha,)
        memo_q: dict = {}
        memo_e: dict = {}
        total = Fraction(0)
        for lam in partitions_in_box(h, n):
            total += (_schur_rec(lam.parts, n, q, memo_q)
                      * _schur_rec(lam.parts, n + 1, extended, memo_e))
        return pref * total
    if v == "pointreflection":
        square = ModelSpec("johansson", a=q, b=q)
        h = l // 2
        if l % 2 == 0:
            value = exact_distribution(square, h)
            return value * value
        return exact_distribution(square, h + 1) * exact_distribution(square, h)
    raise ValueError(f"unsupported model variant {v!r}")


def pointreflection_selfdual_sum(q, l: int) -> Fraction:
    """Pr(L <= l) for the point-reflection model straight from self-dual path sums.

    Independent of the factored route in exact_distribution: enumerates
    displacements mu with mu_1 <= l directly and squares their generating
    functions.
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    q = tuple(q)
    pref = _pair_product(q, q) ** 2
    total = Fraction(0)
    for mu in partitions_in_box(l, 2 * len(q)):
        if not domino_tilable(mu):
            continue
        value = selfdual_schur(mu, q)
        total += value * value
    return pref * total
