"""Chevalley bases of simple Lie algebras over Q and GF(p).

Structure constants follow the extraspecial-pair construction: positive
roots are ordered by height and then reverse-lexicographically, the
extraspecial pair of each non-simple positive root gets the positive sign,
and every other ``N_{a,b}`` is forced by the standard identities between
structure constants.  The basis is ordered as ``e_a`` for positive ``a``,
then ``e_{-a}`` in the same order, then ``h_1, ..., h_l``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .exactlinalg import (
    ExactMatrix,
    FieldSpec,
    InconsistentSystem,
    nullspace,
    rank,
    solve_affine,
)
from .rootsys import RootSystem, Root, build_root_system, neg, parse_root_label, root_label

__all__ = [
    "LieElement",
    "ChevalleyAlgebra",
    "structure_constants",
    "build_algebra",
    "bracket",
    "ad_matrix",
    "centralizer",
    "p_power",
    "killing_gram",
    "AmbiguousPower",
    "NotNilpotentElement",
]


class AmbiguousPower(ValueError):
    """The [p]-th power is only determined up to a nonzero central element."""


class NotNilpotentElement(ValueError):
    pass


# ---------------------------------------------------------------------------
# structure constants over Z


def _string_below(system: RootSystem, a: Root, b: Root) -> int:
    """Largest ``k`` with ``b - k a`` a root."""
    k = 0
    while tuple(y - (k + 1) * x for x, y in zip(a, b)) in system:
        k += 1
    return k


def _is_positive(a: Root) -> bool:
    return any(x > 0 for x in a)


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def structure_constants(system: RootSystem) -> dict[tuple[Root, Root], int]:
    """``N_{a,b}`` for every ordered pair of roots with ``a + b`` a root."""
    pos = system.positive_roots
    order = {a: i for i, a in enumerate(pos)}
    table: dict[tuple[Root, Root], int] = {}

    def N(x: Root, y: Root) -> Fraction:
        z = _add(x, y)
        if not any(z) or z not in system:
            return Fraction(0)
        px, py = _is_positive(x), _is_positive(y)
        if px and py:
            return Fraction(table[(x, y)])
        if not px and not py:
            return -N(neg(x), neg(y))
        if not px:
            return -N(y, x)
        # x positive, y negative; x + y + (-z) = 0 relates the three constants
        if _is_positive(z):
            return Fraction(system.norm(z), system.norm(x)) * N(y, neg(z))
        return Fraction(system.norm(z), system.norm(y)) * N(neg(z), x)

    for xi in pos[system.rank :]:
        special = [
            (a, _sub(xi, a))
            for a in pos
            if _sub(xi, a) in system and _is_positive(_sub(xi, a)) and order[a] < order[_sub(xi, a)]
        ]
        a1, b1 = special[0]
        n1 = _string_below(system, a1, b1) + 1
        table[(a1, b1)] = n1
        table[(b1, a1)] = -n1
        for a, b in special[1:]:
            t2 = N(b, neg(a1)) * N(a, neg(b1))
            if t2:
                t2 /= system.norm(_sub(b, a1))
            t3 = N(neg(a1), a) * N(b, neg(b1))
            if t3:
                t3 /= system.norm(_sub(a, a1))
            val = Fraction(system.norm(xi)) / n1 * (t2 + t3)
            if val.denominator != 1:
                raise ArithmeticError(f"non-integral structure constant for {a}, {b}")
            table[(a, b)] = int(val)
            table[(b, a)] = -int(val)

    full: dict[tuple[Root, Root], int] = {}
    for x in system.roots:
        for y in system.roots:
            z = _add(x, y)
            if any(z) and z in system:
                v = N(x, y)
                if v.denominator != 1:
                    raise ArithmeticError(f"non-integral structure constant for {x}, {y}")
                full[(x, y)] = int(v)
    return full


# ---------------------------------------------------------------------------
# the algebra


@dataclass(frozen=True)
class LieElement:
    """Sparse element: basis index -> nonzero field coefficient."""

    coeffs: tuple[tuple[int, object], ...]

    @classmethod
    def from_mapping(cls, m: Mapping[int, object]) -> "LieElement":
        return cls(tuple(sorted((i, c) for i, c in m.items() if c)))

    def as_dict(self) -> dict[int, object]:
        return dict(self.coeffs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)


class ChevalleyAlgebra:
    """Chevalley basis of the simply connected form, reduced into ``field``."""

    def __init__(self, system: RootSystem, field: FieldSpec | int = 0):
        self.rootsystem = system
        self.field = field if isinstance(field, FieldSpec) else FieldSpec(int(field))
        self.npos = len(system.positive_roots)
        self.rank = system.rank
        self.dim = 2 * self.npos + self.rank
        self._build_tensor()

    # -- basis bookkeeping -------------------------------------------------
    def root_index(self, a: Sequence[int]) -> int:
        return self.rootsystem.index(a)

    def h_index(self, i: int) -> int:
        """Basis index of ``h_i`` (1-based ``i``)."""
        if not 1 <= i <= self.rank:
            raise IndexError(i)
        return 2 * self.npos + i - 1

    def basis_root(self, k: int) -> Root | None:
        """Root of basis vector ``k``; ``None`` for Cartan elements."""
        return self.rootsystem.roots[k] if k < 2 * self.npos else None

    def basis_label(self, k: int) -> str:
        a = self.basis_root(k)
        if a is None:
            return f"h{k - 2 * self.npos + 1}"
        return "e_" + root_label(self.rootsystem, a)

    def weight(self, k: int) -> Root:
        """Torus weight of basis vector ``k`` (zero for ``h_i``)."""
        a = self.basis_root(k)
        return a if a is not None else (0,) * self.rank

    # -- structure tensor over Z ------------------------------------------
    def _build_tensor(self):
        R = self.rootsystem
        n = self.dim
        N = structure_constants(R)
        cartan = R.cartan_matrix
        I, J, K, V = [], [], [], []

        def put(i, j, k, v):
            if v:
                I.append(i)
                J.append(j)
                K.append(k)
                V.append(v)

        roots = R.roots
        for (x, y), v in N.items():
            put(R.index(x), R.index(y), R.index(_add(x, y)), v)
        for a in R.positive_roots:
            ia, ina = R.index(a), R.index(neg(a))
            coroot = [Fraction(c * R.gram[j][j], R.norm(a)) for j, c in enumerate(a)]
            for j, c in enumerate(coroot):
                if c.denominator != 1:
                    raise ArithmeticError("coroot not integral")
                put(ia, ina, self.h_index(j + 1), int(c))
                put(ina, ia, self.h_index(j + 1), -int(c))
        for i in range(self.rank):
            hi = self.h_index(i + 1)
            for k, a in enumerate(roots):
                w = sum(a[j] * cartan[i][j] for j in range(self.rank))
                put(hi, k, k, w)
                put(k, hi, k, -w)
        self._I = np.array(I, dtype=np.int64)
        self._J = np.array(J, dtype=np.int64)
        self._K = np.array(K, dtype=np.int64)
        self._V = np.array(V, dtype=np.int64)
        table: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for i, j, k, v in zip(I, J, K, V):
            table.setdefault((i, j), []).append((k, v))
        self._table = table
        self._by_left: dict[int, np.ndarray] = {}
        order = np.argsort(self._I, kind="stable")
        starts = np.searchsorted(self._I[order], np.arange(n + 1))
        for i in range(n):
            self._by_left[i] = order[starts[i] : starts[i + 1]]

    @property
    def integer_structure(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """COO arrays ``(i, j, k, v)``: ``[b_i, b_j]`` has ``v`` at ``b_k`` over Z."""
        return self._I, self._J, self._K, self._V

    def bracket_basis(self, i: int, j: int) -> list[tuple[int, int]]:
        """``[b_i, b_j]`` over Z as ``(index, coefficient)`` pairs."""
        return list(self._table.get((i, j), ()))

    # -- elements -----------------------------------------------------------
    def element(self, coeffs: Mapping[int, object] | Iterable[tuple[int, object]]) -> LieElement:
        if not isinstance(coeffs, Mapping):
            acc: dict[int, object] = {}
            for k, c in coeffs:
                acc[k] = acc.get(k, 0) + c
            coeffs = acc
        f = self.field
        return LieElement.from_mapping({int(k): f.element(c) for k, c in coeffs.items()})

    def from_vector(self, v: Sequence) -> LieElement:
        return self.element({k: c for k, c in enumerate(v) if c})

    def to_vector(self, x: LieElement) -> list:
        zero = 0 if self.field.characteristic else Fraction(0)
        v = [zero] * self.dim
        for k, c in x.coeffs:
            v[k] = c
        return v

    def root_vector(self, a: Sequence[int] | str, coeff=1) -> LieElement:
        if isinstance(a, str):
            a = parse_root_label(self.rootsystem, a)
        return self.element({self.root_index(a): coeff})

    def h(self, i: int, coeff=1) -> LieElement:
        return self.element({self.h_index(i): coeff})

    def from_roots(self, roots: Iterable[Sequence[int] | str]) -> LieElement:
        """Sum of root vectors (each with coefficient 1)."""
        acc: dict[int, int] = {}
        for a in roots:
            if isinstance(a, str):
                a = parse_root_label(self.rootsystem, a)
            k = self.root_index(a)
            acc[k] = acc.get(k, 0) + 1
        return self.element(acc)

    def add(self, x: LieElement, y: LieElement) -> LieElement:
        acc = x.as_dict()
        for k, c in y.coeffs:
            acc[k] = acc.get(k, 0) + c
        return self.element(acc)

    def scale(self, c, x: LieElement) -> LieElement:
        return self.element({k: c * v for k, v in x.coeffs})

    def zero(self) -> LieElement:
        return LieElement(())

    def format(self, x: LieElement) -> str:
        if x.is_zero():
            return "0"
        parts = []
        for k, c in x.coeffs:
            lab = self.basis_label(k)
            parts.append(lab if c == 1 else f"{c}*{lab}")
        return " + ".join(parts)

    # -- operations -----------------------------------------------------------
    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        acc: dict[int, object] = {}
        for i, a in x.coeffs:
            for j, b in y.coeffs:
                for k, v in self._table.get((i, j), ()):
                    acc[k] = acc.get(k, 0) + a * b * v
        return self.element(acc)

    def ad_matrix(self, x: LieElement) -> ExactMatrix:
        """Matrix of ``ad x``: column ``j`` holds ``[x, b_j]``."""
        n = self.dim
        p = self.field.characteristic
        if p:
            M = np.zeros((n, n), dtype=np.int64)
            for i, c in x.coeffs:
                sel = self._by_left[i]
                np.add.at(M, (self._K[sel], self._J[sel]), int(c) * self._V[sel])
            return ExactMatrix(M % p, self.field, _trusted=True)
        M = np.empty((n, n), dtype=object)
        M[...] = Fraction(0)
        for i, c in x.coeffs:
            for s in self._by_left[i]:
                M[self._K[s], self._J[s]] += c * int(self._V[s])
        return ExactMatrix(M, self.field, _trusted=True)

    def ad_matrix_integer(self, x: Mapping[int, int] | LieElement) -> np.ndarray:
        """``ad x`` over Z for an element with integer coefficients."""
        items = x.coeffs if isinstance(x, LieElement) else x.items()
        M = np.zeros((self.dim, self.dim), dtype=object)
        for i, c in items:
            for s in self._by_left[i]:
                M[self._K[s], self._J[s]] += int(c) * int(self._V[s])
        return M

    def ad_sparse(self, i: int) -> sp.csr_matrix:
        """``ad b_i`` over Z as a sparse matrix."""
        sel = self._by_left[i]
        return sp.csr_matrix(
            (self._V[sel], (self._K[sel], self._J[sel])), shape=(self.dim, self.dim), dtype=np.int64
        )

    def centralizer(self, x: LieElement) -> tuple[int, list[LieElement]]:
        basis = nullspace(self.ad_matrix(x))
        return len(basis), [self.from_vector(v) for v in basis]

    def is_nilpotent(self, x: LieElement) -> bool:
        M = self.ad_matrix(x)
        P = M
        prev = self.dim + 1
        for _ in range(self.dim):
            if P.is_zero():
                return True
            r = rank(P)
            if r == prev:
                return False
            prev = r
            P = P @ M
        return P.is_zero()

    @cached_property
    def generating_set(self) -> tuple[int, ...]:
        """Basis indices of a small generating set over ``field``.

        Starts from ``e_{+-a_i}``; root vectors that cannot be reached by
        brackets with structure constants invertible in the field are added.
        """
        R = self.rootsystem
        p = self.field.characteristic
        gens = [R.index(a) for a in R.simple_roots] + [R.index(neg(a)) for a in R.simple_roots]
        reached = {R.roots[k] for k in gens}
        N = structure_constants(R)
        changed = True
        while changed:
            changed = False
            for a in list(reached):
                for b in list(reached):
                    c = _add(a, b)
                    if c in reached or not any(c) or c not in R:
                        continue
                    v = N[(a, b)]
                    if p == 0 or v % p:
                        reached.add(c)
                        changed = True
        for k, a in enumerate(R.roots):
            if a not in reached:
                gens.append(k)
        # h_i = [e_i, e_-i] is always reached
        return tuple(gens)

    def power_map(self, x: LieElement, degree_indices: Sequence[int] | None = None) -> LieElement:
        """Solve ``ad y = (ad x)^p`` for ``y``; see :func:`p_power`."""
        p = self.field.characteristic
        if not p:
            raise ValueError("the [p]-map needs a field of positive characteristic")
        n = self.dim
        target = self.ad_matrix(x) ** p
        unknowns = list(range(n)) if degree_indices is None else list(degree_indices)
        gens = self.generating_set
        # equations: [y, g] = target(g) for every generator g
        rows = np.zeros((len(gens) * n, len(unknowns)), dtype=np.int64)
        rhs = np.zeros(len(gens) * n, dtype=np.int64)
        tgt = target.array
        for gi, g in enumerate(gens):
            rhs[gi * n : (gi + 1) * n] = tgt[:, g]
            for ui, u in enumerate(unknowns):
                for k, v in self._table.get((u, g), ()):
                    rows[gi * n + k, ui] += v
        keep = np.flatnonzero(np.any(rows % p, axis=1) | (rhs % p != 0))
        A = ExactMatrix(rows[keep] % p, self.field, _trusted=True)
        try:
            sol = solve_affine(A, [int(v) for v in rhs[keep]])
        except InconsistentSystem:
            raise ArithmeticError("no element y with ad y = (ad x)^p in the requested space") from None
        if sol.kernel:
            raise AmbiguousPower(
                f"[p]-th power determined only up to a {len(sol.kernel)}-dimensional central subspace"
            )
        y = self.element({unknowns[i]: c for i, c in enumerate(sol.particular) if c})
        if not (self.ad_matrix(y) == target):
            raise ArithmeticError("ad y differs from (ad x)^p")
        return y

    # -- invariant form --------------------------------------------------------
    @cached_property
    def killing_integer(self) -> tuple[np.ndarray, int]:
        """Killing form Gram matrix over Z divided by its content, and the content."""
        n = self.dim
        I, J, K, V = self._I, self._J, self._K, self._V
        # ad b_i has entry V at (K, J); tr(ad b_i ad b_j) = sum_{k,m} ad_i[k,m] ad_j[m,k]
        F = sp.csr_matrix((V, (I, K * n + J)), shape=(n, n * n), dtype=np.int64)
        G = sp.csr_matrix((V, (I, J * n + K)), shape=(n, n * n), dtype=np.int64)
        gram = (F @ G.T).toarray().astype(object)
        content = 0
        for v in gram.flat:
            content = _gcd(content, int(v))
        if content == 0:
            raise ArithmeticError("Killing form vanishes identically")
        return gram // content, content

    def killing_gram(self) -> ExactMatrix:
        gram, _ = self.killing_integer
        return ExactMatrix(gram, self.field)

    # -- descriptive -------------------------------------------------------------
    def __repr__(self):
        return f"ChevalleyAlgebra({self.rootsystem.type} over {self.field}, dim {self.dim})"


def _gcd(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


@lru_cache(maxsize=None)
def _cached_algebra(type_name: str, characteristic: int) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(build_root_system(type_name), FieldSpec(characteristic))


def build_algebra(system: RootSystem | str, field: FieldSpec | int = 0) -> ChevalleyAlgebra:
    """Chevalley algebra of ``system`` over ``field`` (cached per type and field)."""
    name = system if isinstance(system, str) else str(system.type)
    p = field.characteristic if isinstance(field, FieldSpec) else int(field)
    return _cached_algebra(name, p)


# module-level spellings of the algebra methods
def bracket(A: ChevalleyAlgebra, x: LieElement, y: LieElement) -> LieElement:
    return A.bracket(x, y)


def ad_matrix(A: ChevalleyAlgebra, x: LieElement) -> ExactMatrix:
    return A.ad_matrix(x)


def centralizer(A: ChevalleyAlgebra, x: LieElement) -> tuple[int, list[LieElement]]:
    return A.centralizer(x)


def killing_gram(A: ChevalleyAlgebra) -> ExactMatrix:
    return A.killing_gram()


def p_power(A: ChevalleyAlgebra, x: LieElement, degree_hint: int | None = None, grading=None) -> LieElement:
    """The restricted power ``x^[p]``.

    Without a hint the solution must be unique, i.e. the centre must be
    trivial; otherwise :class:`AmbiguousPower` is raised.  With a grading and
    ``degree_hint`` the search is confined to that graded component.
    """
    if x.is_zero():
        return x
    if not A.is_nilpotent(x):
        raise NotNilpotentElement("ad x is not nilpotent")
    indices = None
    if degree_hint is not None:
        if grading is None:
            raise ValueError("degree_hint needs a grading")
        indices = grading.bucket(degree_hint)
        if not indices:
            raise ArithmeticError(f"graded component of degree {degree_hint} is zero")
    return A.power_map(x, indices)


# ---------------------------------------------------------------------------
# identity scans over Z (or modulo ``modulus``)


def _structure_csr(A: ChevalleyAlgebra, modulus: int | None):
    n = A.dim
    I, J, K, V = A.integer_structure
    if modulus:
        V = V % modulus
    # rows (i, j), columns k
    C = sp.csr_matrix((V, (I * n + J, K)), shape=(n * n, n), dtype=np.int64)
    # row m, columns (k, out): [b_m, b_k] at b_out
    T = sp.csr_matrix((V, (I, J * n + K)), shape=(n, n * n), dtype=np.int64)
    return C, T


def jacobi_violations(A: ChevalleyAlgebra, modulus: int | None = None, lefts: Iterable[int] | None = None) -> int:
    """Number of basis triples ``(i, j, k)`` violating the Jacobi identity.

    Uses ``[[b_i,b_j],b_k] - [[b_i,b_k],b_j] - [b_i,[b_j,b_k]] = 0``, scanned
    for every ``i`` in ``lefts`` (all by default) and all ``j, k``.
    """
    n = A.dim
    C, T = _structure_csr(A, modulus)
    bad = 0
    for i in range(n) if lefts is None else lefts:
        Si = C[i * n : (i + 1) * n, :]  # (j, m)
        X = (Si @ T).tocoo()  # X[j, k*n+out] = [[b_i,b_j],b_k]_out
        Y = (C @ Si).tocoo()  # Y[j*n+k, out] = [b_i,[b_j,b_k]]_out
        xj, xk, xo = X.row, X.col // n, X.col % n
        yj, yk, yo = Y.row // n, Y.row % n, Y.col
        rows = np.concatenate([xj * n + xk, xk * n + xj, yj * n + yk])
        cols = np.concatenate([xo, xo, yo])
        vals = np.concatenate([X.data, -X.data, -Y.data])
        S = sp.csr_matrix((vals, (rows, cols)), shape=(n * n, n), dtype=np.int64)
        if modulus:
            S.data %= modulus
        S.eliminate_zeros()
        bad += len(set(S.nonzero()[0].tolist()))
    return bad


def invariance_violations(A: ChevalleyAlgebra) -> int:
    """Basis triples with ``k([x,y],z) != k(x,[y,z])`` for the normalised form."""
    n = A.dim
    gram, _ = A.killing_integer
    G = sp.csr_matrix(np.array(gram, dtype=np.int64))
    C, _ = _structure_csr(A, None)
    lhs = (C @ G).tocoo()  # rows (i,j), col k
    rhs = (C @ G.T).tocoo()  # rows (j,k), col i
    li, lj, lk = lhs.row // n, lhs.row % n, lhs.col
    rj, rk, ri = rhs.row // n, rhs.row % n, rhs.col
    rows = np.concatenate([li * n + lj, ri * n + rj])
    cols = np.concatenate([lk, rk])
    vals = np.concatenate([lhs.data, -rhs.data])
    D = sp.csr_matrix((vals, (rows, cols)), shape=(n * n, n), dtype=np.int64)
    D.eliminate_zeros()
    return D.nnz
