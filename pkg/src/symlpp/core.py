"""Foundation types: exact rationals, partitions, bottom-indexed matrices, model specs.

Exact probabilities and model parameters are `fractions.Fraction` throughout;
floats only ever enter through Monte Carlo estimates, quadrature, or truncated
series, and containers tag them as approximate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Union

Rational = Fraction

Scalar = Union[Fraction, float]

MODEL_VARIANTS = (
    "johansson",
    "bernoulli",
    "antidiagonal",
    "diagonal",
    "doublysymmetric",
    "pointreflection",
)


def parse_rational(value) -> Fraction:
    """Parse a rational from an int, a Fraction, or a decimal-free "p/q" string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"rational strings must be decimal-free 'p/q', got {value!r}")
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_rational(value: Fraction) -> str:
    """Render a Fraction as a decimal-free string, "p/q" or "p"."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts; trailing zeros are never stored."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must weakly decrease, got {parts}")
        if parts and parts[-1] < 1:
            raise ValueError(f"parts must be positive, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, k: int) -> int:
        """k-th part, 1-based, zero beyond the stored length."""
        return self.parts[k - 1] if 1 <= k <= len(self.parts) else 0

    def padded(self, length: int) -> tuple[int, ...]:
        """Parts padded with zeros to the requested length (local use only)."""
        if length < len(self.parts):
            raise ValueError(f"cannot pad {self.parts} down to length {length}")
        return self.parts + (0,) * (length - len(self.parts))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")" if self.parts else "()"


def conjugate(mu: Partition) -> Partition:
    """Transpose of the diagram: column j of mu has height #{k : mu_k >= j}."""
    if not mu.parts:
        return Partition()
    cols = [0] * mu.parts[0]
    for p in mu.parts:
        for j in range(p):
            cols[j] += 1
    return Partition(tuple(cols))


def alternating_sum(mu: Partition) -> int:
    """Sum of parts with alternating signs, mu_1 - mu_2 + mu_3 - ..."""
    return sum(p if j % 2 == 0 else -p for j, p in enumerate(mu.parts))


def partitions_in_box(max_part: int, max_length: int) -> Iterator[Partition]:
    """Yield every partition with first part <= max_part and length <= max_length.

    The count is C(max_part + max_length, max_length).
    """
    if max_part < 0 or max_length < 0:
        raise ValueError("box dimensions must be nonnegative")

    def rec(bound: int, rows_left: int) -> Iterator[tuple[int, ...]]:
        yield ()
        if rows_left == 0:
            return
        for first in range(1, bound + 1):
            for rest in rec(first, rows_left - 1):
                yield (first,) + rest

    for parts in rec(max_part, max_length):
        yield Partition(parts)


def count_partitions_in_box(max_part: int, max_length: int) -> int:
    return comb(max_part + max_length, max_length)


# ---------------------------------------------------------------------------
# Matrices with rows labelled from the bottom
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Nonnegative integer matrix; row i counts from the BOTTOM, column j from the left.

    `rows[0]` is the bottom row.  All printing puts the top row first with
    explicit row labels so the orientation can never be silently transposed.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged rows")
            for x in r:
                if x < 0:
                    raise ValueError("entries must be nonnegative")
        object.__setattr__(self, "rows", rows)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    def entry(self, i: int, j: int) -> int:
        """Entry x_{i,j}: i-th row from the bottom, j-th column, both 1-based."""
        if not (1 <= i <= self.n_rows and 1 <= j <= self.n_cols):
            raise IndexError(f"({i},{j}) outside {self.n_rows}x{self.n_cols}")
        return self.rows[i - 1][j - 1]

    def total(self) -> int:
        return sum(sum(r) for r in self.rows)

    def trace(self) -> int:
        if self.n_rows != self.n_cols:
            raise ValueError("trace needs a square matrix")
        return sum(self.entry(i, i) for i in range(1, self.n_rows + 1))

    def transpose(self) -> "IntMatrix":
        """x_{i,j} -> x_{j,i}; reflection in the diagonal i = j."""
        return IntMatrix(tuple(tuple(self.entry(j, i) for j in range(1, self.n_rows + 1))
                               for i in range(1, self.n_cols + 1)))

    def anti_transpose(self) -> "IntMatrix":
        """x_{i,j} -> x_{n+1-j,n+1-i}; reflection in the anti-diagonal (square only)."""
        n = self.n_rows
        if n != self.n_cols:
            raise ValueError("anti-transpose needs a square matrix")
        return IntMatrix(tuple(tuple(self.entry(n + 1 - j, n + 1 - i)
                                     for j in range(1, n + 1))
                               for i in range(1, n + 1)))

    def rotate180(self) -> "IntMatrix":
        """x_{i,j} -> x_{n_rows+1-i,n_cols+1-j}; point reflection through the centre."""
        return IntMatrix(tuple(tuple(reversed(r)) for r in reversed(self.rows)))

    def rows_top_to_bottom(self) -> list[list[int]]:
        return [list(r) for r in reversed(self.rows)]

    def __str__(self):
        lines = []
        for i in range(self.n_rows, 0, -1):
            lines.append(f"i={i}: " + " ".join(f"{x:3d}" for x in self.rows[i - 1]))
        return "\n".join(lines)


def matrix_from_rows_top_to_bottom(rows) -> IntMatrix:
    return IntMatrix(tuple(tuple(r) for r in reversed(list(rows))))


# ---------------------------------------------------------------------------
# Model specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModelSpec:
    """One of the six site-weight ensembles together with its exact parameters.

    variant            parameters            matrix shape      symmetry of samples
    johansson          a (n), b (n)          n x n             none
    bernoulli          a (m rows), b (n)     m x n, 0/1        none
    antidiagonal       q (n), beta           n x n             x_{i,j} = x_{n+1-j,n+1-i}
    diagonal           q (n), alpha          n x n             x_{i,j} = x_{j,i}
    doublysymmetric    q (n), alpha          2n x 2n           both, even anti-diagonal
    pointreflection    q (n)                 2n x 2n           x_{i,j} = x_{2n+1-i,2n+1-j}
    """

    variant: str
    a: tuple[Fraction, ...] = ()
    b: tuple[Fraction, ...] = ()
    q: tuple[Fraction, ...] = ()
    alpha: Fraction | None = None
    beta: Fraction | None = None

    def __post_init__(self):
        if self.variant not in MODEL_VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; expected one of {MODEL_VARIANTS}")
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        object.__setattr__(self, "b", tuple(Fraction(x) for x in self.b))
        object.__setattr__(self, "q", tuple(Fraction(x) for x in self.q))
        for name, value in (("alpha", self.alpha), ("beta", self.beta)):
            if value is not None:
                object.__setattr__(self, name, Fraction(value))
        self._validate()

    def _validate(self):
        v = self.variant
        uses_ab = v in ("johansson", "bernoulli")
        uses_q = not uses_ab
        if uses_ab:
            if not self.a or not self.b:
                raise ValueError(f"{v} needs nonempty parameter lists 'a' and 'b'")
            if self.q or self.alpha is not None or self.beta is not None:
                raise ValueError(f"{v} permits only 'a' and 'b'")
            if v == "johansson" and len(self.a) != len(self.b):
                raise ValueError("johansson is square: len(a) must equal len(b)")
        if uses_q:
            if not self.q:
                raise ValueError(f"{v} needs a nonempty parameter list 'q'")
            if self.a or self.b:
                raise ValueError(f"{v} permits only 'q' plus its weight parameter")
            needs_alpha = v in ("diagonal", "doublysymmetric")
            needs_beta = v == "antidiagonal"
            if needs_alpha and self.alpha is None:
                raise ValueError(f"{v} needs 'alpha'")
            if needs_beta and self.beta is None:
                raise ValueError(f"{v} needs 'beta'")
            if (self.alpha is not None) != needs_alpha:
                raise ValueError(f"'alpha' not permitted for {v}")
            if (self.beta is not None) != needs_beta:
                raise ValueError(f"'beta' not permitted for {v}")
        for name, values in (("a", self.a), ("b", self.b), ("q", self.q)):
            for k, x in enumerate(values):
                if not 0 <= x < 1:
                    raise ValueError(f"{name}[{k}] = {x} outside [0, 1)")
        for name, x in (("alpha", self.alpha), ("beta", self.beta)):
            if x is not None and not 0 <= x < 1:
                raise ValueError(f"{name} = {x} outside [0, 1)")

    @property
    def n(self) -> int:
        """Number of parameters on each side (the model's size parameter)."""
        return len(self.a) if self.variant in ("johansson", "bernoulli") else len(self.q)

    @property
    def matrix_shape(self) -> tuple[int, int]:
        """(n_rows, n_cols) of a sampled matrix."""
        v = self.variant
        if v == "bernoulli":
            return (len(self.a), len(self.b))
        if v in ("johansson", "antidiagonal", "diagonal"):
            return (self.n, self.n)
        return (2 * self.n, 2 * self.n)

    def to_json_dict(self) -> dict:
        out: dict = {"variant": self.variant}
        if self.a:
            out["a"] = [format_rational(x) for x in self.a]
        if self.b:
            out["b"] = [format_rational(x) for x in self.b]
        if self.q:
            out["q"] = [format_rational(x) for x in self.q]
        if self.alpha is not None:
            out["alpha"] = format_rational(self.alpha)
        if self.beta is not None:
            out["beta"] = format_rational(self.beta)
        return out

    @staticmethod
    def from_json_dict(data: dict) -> "ModelSpec":
        if "variant" not in data:
            raise ValueError("model JSON is missing required field 'variant'")
        allowed = {"variant", "a", "b", "q", "alpha", "beta"}
        extra = set(data) - allowed
        if extra:
            raise ValueError(f"model JSON has unknown fields {sorted(extra)}")
        kwargs: dict = {"variant": data["variant"]}
        for key in ("a", "b", "q"):
            if key in data:
                kwargs[key] = tuple(parse_rational(x) for x in data[key])
        for key in ("alpha", "beta"):
            if key in data:
                kwargs[key] = parse_rational(data[key])
        return ModelSpec(**kwargs)


# ---------------------------------------------------------------------------
# Distribution tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DistributionTable:
    """Cumulative law l -> Pr(L <= l), exact or tagged approximate.

    `exact` is True only when every probability is a Fraction produced by an
    exact engine; Monte Carlo and truncated-series values are floats with
    exact=False, and Monte Carlo tables carry a per-entry standard error.
    """

    probs: dict[int, Scalar]
    exact: bool
    stderr: dict[int, float] | None = None

    def __post_init__(self):
        prev = None
        for l in sorted(self.probs):
            p = self.probs[l]
            if self.exact and not isinstance(p, Fraction):
                raise ValueError("exact tables must hold Fractions")
            if not 0 <= p <= 1:
                raise ValueError(f"probability {p} at l={l} outside [0, 1]")
            if prev is not None and p < prev - (0 if self.exact else 1e-15):
                raise ValueError("cumulative probabilities must be nondecreasing in l")
            prev = p

    def levels(self) -> list[int]:
        return sorted(self.probs)

    def to_rows(self) -> list[dict]:
        rows = []
        for l in self.levels():
            p = self.probs[l]
            row: dict = {"l": l}
            if isinstance(p, Fraction):
                row["p"] = format_rational(p)
                row["approx"] = False
            else:
                row["p"] = float(p)
                row["approx"] = True
            if self.stderr is not None:
                row["stderr"] = float(self.stderr[l])
            rows.append(row)
        return rows
