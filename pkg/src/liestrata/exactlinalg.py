"""Exact dense linear algebra over the rationals and prime fields GF(p).

Matrices over GF(p) are held as ``int64`` numpy arrays of residues in
``0..p-1`` and reduced with vectorised Gauss-Jordan elimination.  Matrices
over Q are held as object arrays of :class:`fractions.Fraction`; rank and
echelon forms are computed fraction-free (Bareiss) on integer rows so that
coefficient growth stays polynomial.

Pivoting is deterministic everywhere: the pivot for a column is the first
row (top-down) with a nonzero entry.  Nullspace bases are the standard
free-variable bases, so they are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FieldSpec",
    "ExactMatrix",
    "AffineSolution",
    "InconsistentSystem",
    "NotNilpotent",
    "rank",
    "nullspace",
    "solve_affine",
    "nilpotent_jordan_partition",
    "echelon",
]

MAX_PRIME = 101


class InconsistentSystem(ValueError):
    """Raised when ``A x = b`` has no solution."""


class NotNilpotent(ValueError):
    """Raised when a matrix expected to be nilpotent is not."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: Q when ``characteristic == 0``, else GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not (_is_prime(p) and p <= MAX_PRIME):
            raise ValueError(f"characteristic must be 0 or a prime <= {MAX_PRIME}, got {p}")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def element(self, x) -> int | Fraction:
        """Canonical representative of ``x`` in this field."""
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"{x} has no image in GF({p})")
        return x.numerator * pow(x.denominator, -1, p) % p

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"


def _as_field(field) -> FieldSpec:
    if isinstance(field, FieldSpec):
        return field
    return FieldSpec(int(field))


class ExactMatrix:
    """Immutable dense matrix over Q or GF(p).

    ``data`` may be anything ``numpy.array`` accepts with a 2-d shape; the
    entries are reduced into the field on construction.
    """

    __slots__ = ("field", "_a")

    def __init__(self, data, field: FieldSpec | int = 0, *, _trusted: bool = False):
        self.field = _as_field(field)
        if _trusted:
            a = data
        else:
            a = _coerce(data, self.field)
        a.flags.writeable = False
        self._a = a

    # -- construction -------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec | int = 0) -> "ExactMatrix":
        f = _as_field(field)
        if f.is_rational:
            a = np.empty((rows, cols), dtype=object)
            a[...] = Fraction(0)
        else:
            a = np.zeros((rows, cols), dtype=np.int64)
        return cls(a, f, _trusted=True)

    @classmethod
    def identity(cls, n: int, field: FieldSpec | int = 0) -> "ExactMatrix":
        f = _as_field(field)
        a = np.eye(n, dtype=np.int64)
        return cls(a, f)

    # -- basic protocol ---------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the underlying array."""
        return self._a

    def __getitem__(self, idx):
        return self._a[idx]

    def tolist(self) -> list[list]:
        return self._a.tolist()

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field})"

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self._a == other._a))
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return not np.any(self._a != 0)

    # -- arithmetic -------------------------------------------------------
    def _wrap(self, a: np.ndarray) -> "ExactMatrix":
        p = self.field.characteristic
        if p:
            a = a % p
        return ExactMatrix(a, self.field, _trusted=True)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.field.is_rational:
            return self._wrap(self._a.dot(other._a))
        return self._wrap(_matmul_mod(self._a, other._a, self.field.characteristic))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self._wrap(self._a + other._a)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self._wrap(self._a - other._a)

    def __neg__(self) -> "ExactMatrix":
        return self._wrap(-self._a)

    def scale(self, c) -> "ExactMatrix":
        c = self.field.element(c)
        return self._wrap(self._a * c)

    def __pow__(self, k: int) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("matrix power needs a square matrix")
        if k < 0:
            raise ValueError("negative power")
        result = ExactMatrix.identity(self.rows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self._a.T.copy(), self.field, _trusted=True)

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        a = self._a[np.ix_(list(rows), list(cols))].copy()
        if a.ndim != 2:
            a = a.reshape(len(rows), len(cols))
        return ExactMatrix(a, self.field, _trusted=True)

    def apply(self, v: Sequence) -> list:
        """Matrix-vector product, returned as a list of field elements."""
        col = ExactMatrix(np.array(list(v), dtype=object).reshape(-1, 1), self.field)
        return [x for x in (self @ col)._a[:, 0].tolist()]


def _coerce(data, field: FieldSpec) -> np.ndarray:
    p = field.characteristic
    if isinstance(data, ExactMatrix):
        data = data.array
    raw = np.array(data, dtype=object)
    if raw.ndim == 1 and raw.size == 0:
        raw = raw.reshape(0, 0)
    if raw.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {raw.shape}")
    if p == 0:
        out = np.empty(raw.shape, dtype=object)
        for idx, x in np.ndenumerate(raw):
            out[idx] = Fraction(x)
        return out
    if raw.size and all(isinstance(x, (int, np.integer)) for x in raw.flat):
        return np.array(raw, dtype=np.int64) % p
    out = np.zeros(raw.shape, dtype=np.int64)
    for idx, x in np.ndenumerate(raw):
        out[idx] = field.element(x)
    return out


def _matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # float64 BLAS is exact while every partial sum stays below 2**53;
    # inner * (p-1)**2 is far below that for p <= 101 and n <= a few thousand.
    inner = a.shape[1]
    if inner * (p - 1) ** 2 < 2**52:
        prod = a.astype(np.float64) @ b.astype(np.float64)
        return np.rint(prod).astype(np.int64) % p
    return (a @ b) % p


# ---------------------------------------------------------------------------
# elimination kernels


def _rref_mod_p(a: np.ndarray, p: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p), in place on a copy.

    Pivots are only sought in the first ``ncols`` columns (all by default),
    which is how augmented systems are handled.
    """
    a = a.copy() % p
    nrows, total = a.shape
    ncols = total if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            a[others] = (a[others] - np.outer(col[others], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _integer_rows(a: np.ndarray) -> list[list[int]]:
    """Clear denominators row by row (row scaling preserves the row space)."""
    out = []
    for row in a:
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        out.append([int(x.numerator * (den // x.denominator)) for x in row])
    return out


def _bareiss(rows: list[list[int]], ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Returns the nonzero echelon rows (integers) and the pivot columns.  Each
    entry after step k is a (k+1)-minor of the input, so the divisions by the
    previous pivot are exact.
    """
    nrows = len(rows)
    total = len(rows[0]) if rows else 0
    ncols = total if ncols is None else ncols
    m = np.empty((nrows, total), dtype=object)
    for i, row in enumerate(rows):
        m[i, :] = row
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if m[i, c] != 0), None)
        if k is None:
            continue
        if k != r:
            m[[r, k]] = m[[k, r]]
        piv = m[r, c]
        if r + 1 < nrows:
            below = m[r + 1 :, c].copy()
            m[r + 1 :, c:] = (piv * m[r + 1 :, c:] - np.outer(below, m[r, c:])) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def echelon(M: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Row echelon form and pivot columns.

    Over GF(p) the result is fully reduced (RREF, pivots 1).  Over Q it is the
    fraction-free Bareiss echelon form with integer entries.
    """
    p = M.field.characteristic
    if M.rows == 0 or M.cols == 0:
        return ExactMatrix.zeros(0, M.cols, M.field), []
    if p:
        e, piv = _rref_mod_p(M.array, p)
        return ExactMatrix(e, M.field, _trusted=True), piv
    e, piv = _bareiss(_integer_rows(M.array))
    return ExactMatrix(e, M.field), piv


def rank(M: ExactMatrix) -> int:
    """Row rank of ``M`` over its field."""
    return len(echelon(M)[1])


def _kernel_from_echelon(e: np.ndarray, pivots: list[int], ncols: int, field: FieldSpec) -> list[list]:
    """Standard free-variable basis of the kernel of an echelon matrix."""
    p = field.characteristic
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        if p:
            # RREF: x_pivot = -entry in the free column.
            v = [0] * ncols
            v[f] = 1
            for r, c in enumerate(pivots):
                v[c] = int(-e[r, f] % p)
            basis.append(v)
        else:
            v = [Fraction(0)] * ncols
            v[f] = Fraction(1)
            for r in range(len(pivots) - 1, -1, -1):
                c = pivots[r]
                s = sum((e[r, j] * v[j] for j in range(c + 1, ncols) if v[j]), Fraction(0))
                v[c] = -s / e[r, c]
            basis.append(v)
    return basis


def nullspace(M: ExactMatrix) -> list[list]:
    """Basis of the right kernel ``{x : M x = 0}``.

    One vector per non-pivot column ``f``, with ``x_f = 1`` and every other
    free coordinate zero.
    """
    if M.rows == 0:
        p = M.field.characteristic
        one = 1 if p else Fraction(1)
        zero = 0 if p else Fraction(0)
        return [[one if i == j else zero for i in range(M.cols)] for j in range(M.cols)]
    e, piv = echelon(M)
    return _kernel_from_echelon(e.array, piv, M.cols, M.field)


@dataclass(frozen=True)
class AffineSolution:
    """``{particular + sum t_k kernel[k]}``: every solution of ``A x = b``."""

    particular: tuple
    kernel: tuple[tuple, ...]

    @property
    def dimension(self) -> int:
        return len(self.kernel)

    @property
    def unique(self) -> bool:
        return not self.kernel


def solve_affine(A: ExactMatrix, b: Sequence) -> AffineSolution:
    """Solve ``A x = b`` exactly.

    Raises :class:`InconsistentSystem` when ``b`` is not in the image of ``A``.
    """
    b = list(b)
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    field = A.field
    p = field.characteristic
    n = A.cols
    if A.rows == 0:
        zero = 0 if p else Fraction(0)
        return AffineSolution(tuple([zero] * n), tuple(tuple(v) for v in nullspace(A)))
    bcol = np.array([field.element(x) for x in b], dtype=object).reshape(-1, 1)
    aug = np.concatenate([np.array(A.array, dtype=object), bcol], axis=1)
    if p:
        e, piv = _rref_mod_p(np.array(aug, dtype=np.int64), p)
        if piv and piv[-1] == n:
            raise InconsistentSystem("right-hand side is not in the column space")
        x = [0] * n
        for r, c in enumerate(piv):
            x[c] = int(e[r, n])
        kernel = _kernel_from_echelon(e[:, :n], piv, n, field)
        return AffineSolution(tuple(x), tuple(tuple(v) for v in kernel))
    rows = _integer_rows(aug)
    e, piv = _bareiss(rows)
    if piv and piv[-1] == n:
        raise InconsistentSystem("right-hand side is not in the column space")
    x = [Fraction(0)] * n
    for r in range(len(piv) - 1, -1, -1):
        c = piv[r]
        s = e[r, n] - sum((e[r, j] * x[j] for j in range(c + 1, n) if x[j]), Fraction(0))
        x[c] = Fraction(s) / e[r, c]
    kernel = _kernel_from_echelon(e[:, :n], piv, n, field)
    return AffineSolution(tuple(x), tuple(tuple(v) for v in kernel))


def nilpotent_jordan_partition(M: ExactMatrix) -> tuple[int, ...]:
    """Jordan block sizes of a nilpotent matrix, largest first.

    The number of blocks of size at least ``k`` is
    ``rank(M^(k-1)) - rank(M^k)``.  Raises :class:`NotNilpotent` if no power
    up to the dimension vanishes.
    """
    n = M.rows
    if M.cols != n:
        raise ValueError("Jordan partition needs a square matrix")
    ranks = [n]
    if M.field.is_rational:
        # rank(c M)^k = rank M^k, so work with an integer multiple of M and
        # plain integer products instead of Fraction arithmetic
        den = 1
        for x in M.array.flat:
            den = lcm(den, x.denominator)
        step = np.array([[int(x * den) for x in row] for row in M.array], dtype=object)

        def rank_of(a):
            return len(_bareiss(a.tolist())[1]) if a.any() else 0

        def mul(a):
            return a.dot(step)
    else:
        step = M.array

        def rank_of(a):
            return rank(ExactMatrix(a, M.field, _trusted=True))

        def mul(a):
            return _matmul_mod(a, step, M.field.characteristic)

    power = step
    while True:
        r = rank_of(power)
        if r == ranks[-1] and r:
            raise NotNilpotent("rank of powers stabilised above zero")
        ranks.append(r)
        if r == 0:
            break
        if len(ranks) > n + 1:
            raise NotNilpotent("matrix is not nilpotent")
        power = mul(power)
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    parts: list[int] = []
    for k in range(len(at_least), 0, -1):
        exactly = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        parts.extend([k] * exactly)
    return tuple(parts)


def vectors_to_matrix(vectors: Iterable[Sequence], ncols: int, field: FieldSpec | int) -> ExactMatrix:
    """Stack vectors as the rows of a matrix (``ncols`` fixes the empty case)."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return ExactMatrix.zeros(0, ncols, field)
    return ExactMatrix(vectors, field)
