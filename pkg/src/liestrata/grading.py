"""Cocharacter gradings, graded centralizers and related rank counts."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .chevalley import ChevalleyAlgebra, LieElement
from .exactlinalg import ExactMatrix, rank
from .rootsys import RootSystem, SimpleType, build_root_system, pairing, parse_root_label

__all__ = [
    "Grading",
    "NotHomogeneous",
    "grade",
    "graded_centralizer_dims",
    "bracket_image_dim",
    "pairing_perfect",
    "duality_identity_check",
    "solve_grading_constraints",
    "IntegerFamily",
    "random_homogeneous",
    "dense_orbit_element",
]


class NotHomogeneous(ValueError):
    pass


@dataclass(frozen=True)
class Grading:
    cocharacter: tuple[int, ...]
    buckets: Mapping[int, tuple[int, ...]]
    degree_of: tuple[int, ...]

    def bucket(self, d: int) -> tuple[int, ...]:
        return self.buckets.get(d, ())

    def dim(self, d: int) -> int:
        return len(self.bucket(d))

    @property
    def degrees(self) -> list[int]:
        return sorted(self.buckets)

    def dims(self) -> dict[int, int]:
        return {d: len(self.buckets[d]) for d in self.degrees}

    def degree(self, x: LieElement) -> int:
        """Degree of a homogeneous element; raises :class:`NotHomogeneous`."""
        degs = {self.degree_of[k] for k in x.support}
        if len(degs) > 1:
            raise NotHomogeneous(f"element mixes degrees {sorted(degs)}")
        return degs.pop() if degs else 0

    def dim_below(self, d: int) -> int:
        return sum(len(v) for k, v in self.buckets.items() if k < d)

    def dim_at_least(self, d: int) -> int:
        return sum(len(v) for k, v in self.buckets.items() if k >= d)


def grade(A: ChevalleyAlgebra, tau: Sequence[int]) -> Grading:
    tau = tuple(int(r) for r in tau)
    if len(tau) != A.rank:
        raise ValueError(f"cocharacter of length {len(tau)} for rank {A.rank}")
    degree_of = []
    buckets: dict[int, list[int]] = {}
    for k in range(A.dim):
        d = pairing(tau, A.weight(k))
        degree_of.append(d)
        buckets.setdefault(d, []).append(k)
    return Grading(tau, {d: tuple(v) for d, v in sorted(buckets.items())}, tuple(degree_of))


def _check_degree(G: Grading, e: LieElement, degree: int) -> None:
    if e.is_zero():
        return
    d = G.degree(e)
    if d != degree:
        raise NotHomogeneous(f"element has degree {d}, expected {degree}")


def _block(A: ChevalleyAlgebra, M: ExactMatrix, G: Grading, j: int, step: int) -> ExactMatrix:
    return M.submatrix(G.bucket(j + step), G.bucket(j))


def graded_centralizer_dims(
    A: ChevalleyAlgebra, e: LieElement, G: Grading, degree: int = 2, ad: ExactMatrix | None = None
) -> dict[int, int]:
    """``dim ker(ad e: g(j) -> g(j+degree))`` for every degree ``j``."""
    _check_degree(G, e, degree)
    M = A.ad_matrix(e) if ad is None else ad
    out = {}
    for j in G.degrees:
        n = G.dim(j)
        if not G.dim(j + degree):
            out[j] = n
            continue
        out[j] = n - rank(_block(A, M, G, j, degree))
    return out


def bracket_image_dim(
    A: ChevalleyAlgebra, e: LieElement, G: Grading, j: int, degree: int = 2, ad: ExactMatrix | None = None
) -> int:
    """``dim [e, g(j)]`` inside ``g(j+degree)``."""
    _check_degree(G, e, degree)
    if not G.dim(j) or not G.dim(j + degree):
        return 0
    M = A.ad_matrix(e) if ad is None else ad
    return rank(_block(A, M, G, j, degree))


def pairing_perfect(A: ChevalleyAlgebra, G: Grading, i: int) -> bool:
    """Whether the invariant form pairs ``g(i)`` and ``g(-i)`` perfectly."""
    if i == 0:
        raise ValueError("degree 0 pairs with itself through the radical; not supported")
    left, right = G.bucket(i), G.bucket(-i)
    if len(left) != len(right):
        return False
    if not left:
        return True
    block = A.killing_gram().submatrix(left, right)
    return rank(block) == len(left)


def duality_identity_check(A: ChevalleyAlgebra, e: LieElement, G: Grading) -> bool:
    """``codim [e, g(0)] in g(2)`` equals ``dim g_e(-2)``.

    Needs a perfect pairing in degree 2; the equality is then forced whenever
    the form is also nondegenerate on ``g(0)``.
    """
    if not pairing_perfect(A, G, 2):
        raise ValueError("form does not pair g(2) and g(-2) perfectly")
    M = A.ad_matrix(e)
    codim = G.dim(2) - bracket_image_dim(A, e, G, 0, ad=M)
    kernel = graded_centralizer_dims(A, e, G, ad=M).get(-2, 0)
    return codim == kernel


# ---------------------------------------------------------------------------
# integral constraint solving


@dataclass(frozen=True)
class IntegerFamily:
    """The integer points ``particular + sum t_k * kernel[k]`` with ``t_k`` in Z.

    ``kernel`` is in Hermite normal form (rows, positive pivots) and the
    particular solution is reduced against it, so equal families compare equal.
    """

    particular: tuple[int, ...]
    kernel: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, particular: Sequence[int], kernel: Iterable[Sequence[int]]) -> "IntegerFamily":
        """Canonical form of ``particular + span_Z(kernel)``."""
        basis = _row_hermite([list(r) for r in kernel])
        x = list(particular)
        for row in basis:
            c = next(i for i, v in enumerate(row) if v)
            q = x[c] // row[c]
            x = [a - q * v for a, v in zip(x, row)]
        return cls(tuple(x), tuple(tuple(r) for r in basis))

    @property
    def unique(self) -> bool:
        return not self.kernel

    def point(self, *params: int) -> tuple[int, ...]:
        x = list(self.particular)
        for t, v in zip(params, self.kernel):
            for i, c in enumerate(v):
                x[i] += t * c
        return tuple(x)

    def contains(self, x: Sequence[int]) -> bool:
        d = [a - b for a, b in zip(x, self.particular)]
        for row in self.kernel:
            c = next(i for i, v in enumerate(row) if v)
            if d[c] % row[c]:
                return False
            q = d[c] // row[c]
            d = [a - q * b for a, b in zip(d, row)]
        return not any(d)

    def describe(self, names: str = "rstuvw") -> str:
        """``(r,-2-2r,r,4)``-style rendering."""
        coords = []
        for i, c0 in enumerate(self.particular):
            terms = [(self.kernel[k][i], names[k]) for k in range(len(self.kernel)) if self.kernel[k][i]]
            s = str(c0) if c0 or not terms else ""
            for c, name in terms:
                mag = "" if abs(c) == 1 else str(abs(c))
                sign = "-" if c < 0 else ("+" if s else "")
                s += f"{sign}{mag}{name}"
            coords.append(s)
        return "(" + ",".join(coords) + ")"


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _column_hermite(A: list[list[int]], n: int) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Column operations ``A U = H`` with ``H`` lower echelon and ``U`` unimodular.

    Returns ``H``, ``U`` and, per row, the pivot column or -1.
    """
    H = [row[:] for row in A]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    m = len(H)

    def colop(c1: int, c2: int, a: int, b: int, c: int, d: int) -> None:
        # (col c1, col c2) <- (a*c1 + b*c2, c*c1 + d*c2)
        for M in (H, U):
            for row in M:
                x, y = row[c1], row[c2]
                row[c1], row[c2] = a * x + b * y, c * x + d * y

    pivots = []
    c = 0
    for r in range(m):
        if c == n:
            pivots.append(-1)
            continue
        for k in range(c + 1, n):
            if H[r][k] == 0:
                continue
            a, b = H[r][c], H[r][k]
            g, s, t = _xgcd(a, b)
            # [a b] [[s, -b/g], [t, a/g]] = [g 0]; determinant 1
            colop(c, k, s, t, -b // g, a // g)
        if H[r][c] == 0:
            pivots.append(-1)
            continue
        if H[r][c] < 0:
            for M in (H, U):
                for row in M:
                    row[c] = -row[c]
        pivots.append(c)
        c += 1
    return H, U, pivots


def _row_hermite(rows: list[list[int]]) -> list[list[int]]:
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return []
    n = len(rows[0])
    out: list[list[int]] = []
    col = 0
    while rows and col < n:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        while len([r for r in rows if r[col]]) > 1:
            nz = sorted((r for r in rows if r[col]), key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for i in range(n):
                    r[i] -= q * piv[i]
        piv = next(r for r in rows if r[col])
        rows = [r for r in rows if r is not piv and any(r)]
        if piv[col] < 0:
            piv = [-x for x in piv]
        for prev in out:
            q = prev[col] // piv[col]
            for i in range(n):
                prev[i] -= q * piv[i]
        out.append(piv)
        col += 1
    return out


def solve_integer_system(A: list[list[int]], b: list[int], n: int) -> IntegerFamily:
    """All integer ``x`` with ``A x = b``; ``ValueError('inconsistent')`` if none."""
    H, U, pivots = _column_hermite(A, n) if A else ([], [[int(i == j) for j in range(n)] for i in range(n)], [])
    y = [0] * n
    for r, row in enumerate(H):
        c = pivots[r]
        if c < 0:
            if sum(row[j] * y[j] for j in range(n)) != b[r]:
                raise ValueError("inconsistent")
            continue
        rest = b[r] - sum(row[j] * y[j] for j in range(c))
        if rest % row[c]:
            raise ValueError("inconsistent")
        y[c] = rest // row[c]
    k = len([c for c in pivots if c >= 0])
    x = [sum(U[i][j] * y[j] for j in range(n)) for i in range(n)]
    kernel = [[U[i][j] for i in range(n)] for j in range(k, n)]
    return IntegerFamily.from_generators(x, kernel)


def solve_grading_constraints(
    system: RootSystem | ChevalleyAlgebra | str,
    supports: Iterable[Sequence[int] | str],
    target: int = 2,
    fixed: Mapping[int, int] | None = None,
    conditions: Mapping[Sequence[int] | str, int] | None = None,
) -> IntegerFamily:
    """Integral cocharacters giving every root in ``supports`` weight ``target``.

    ``fixed`` maps 1-based coordinates to prescribed values; ``conditions``
    prescribes the weight of further roots individually.
    """
    if isinstance(system, ChevalleyAlgebra):
        system = system.rootsystem
    elif isinstance(system, str):
        system = build_root_system(SimpleType.parse(system))
    n = system.rank
    rows: list[list[int]] = []
    rhs: list[int] = []
    pairs = [(a, target) for a in supports] + list((conditions or {}).items())
    for a, w in pairs:
        if isinstance(a, str):
            a = parse_root_label(system, a)
        if tuple(a) not in system:
            raise ValueError(f"{a} is not a root")
        rows.append(list(a))
        rhs.append(int(w))
    for i, v in (fixed or {}).items():
        rows.append([int(j == i - 1) for j in range(n)])
        rhs.append(int(v))
    return solve_integer_system(rows, rhs, n)


# ---------------------------------------------------------------------------
# random homogeneous elements


def random_homogeneous(A: ChevalleyAlgebra, G: Grading, degree: int, rng: random.Random) -> LieElement:
    """Uniform random element of ``g(degree)`` over GF(p)."""
    p = A.field.characteristic
    if not p:
        raise ValueError("random sampling needs a finite field")
    return A.element({k: rng.randrange(p) for k in G.bucket(degree)})


def dense_orbit_element(
    A: ChevalleyAlgebra, G: Grading, seed: int, samples: int = 32, degree: int = 2
) -> tuple[LieElement, dict[int, int]]:
    """A seeded stand-in for an element of the open orbit in ``g(degree)``.

    Graded centralizer dimensions are upper semicontinuous, so on the open
    orbit every one of them is minimal.  Draws ``samples`` elements, takes the
    degreewise minimum and returns the first draw attaining it everywhere.
    """
    rng = random.Random(seed)
    draws = []
    for _ in range(samples):
        x = random_homogeneous(A, G, degree, rng)
        draws.append((x, graded_centralizer_dims(A, x, G, degree)))
    floor = {j: min(d[j] for _, d in draws) for j in G.degrees}
    for x, d in draws:
        if d == floor:
            return x, d
    raise LookupError("no sampled element is generic in every degree; increase samples")
