"""Root systems of simple type, Weyl group action on cocharacters.

Roots are integer coefficient vectors over the simple roots in Bourbaki
numbering.  A cocharacter is represented by the tuple ``(r_1, ..., r_l)`` of
its weights on the simple root vectors, so the grading degree of ``e_alpha``
is ``sum(c_i * r_i)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

Root = tuple[int, ...]
Cocharacter = tuple[int, ...]

__all__ = [
    "SimpleType",
    "RootSystem",
    "build_root_system",
    "is_root",
    "sum_and_difference_in_sigma",
    "pairing",
    "dominant_conjugate",
    "apply_reflection_word",
    "parse_root_label",
    "parse_tuple",
    "format_tuple",
    "root_label",
    "height",
    "neg",
    "is_dominant",
    "invariant_degrees",
    "weyl_group_order",
    "count_positive_roots_from_degrees",
    "reflect_root_by_word",
    "coroot_coefficients",
    "Root",
    "Cocharacter",
]

_FAMILIES = "ABCDEFG"


@dataclass(frozen=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }.get(f, False)
        if not ok:
            raise ValueError(f"invalid simple type {f}{n}")

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse simple type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def simply_laced(self) -> bool:
        return self.family in "ADE"

    def __str__(self):
        return f"{self.family}{self.rank}"


def _simple_root_gram(t: SimpleType) -> list[list[int]]:
    """Gram matrix of the simple roots, scaled so every entry is an integer.

    Bourbaki numbering: in B_n the last root is short, in C_n the last root is
    long, in F4 roots 1, 2 are long, in G2 root 1 is short.
    """
    n = t.rank
    g = [[0] * n for _ in range(n)]
    edges: list[tuple[int, int]] = []
    if t.family in "ABC":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif t.family == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif t.family == "E":
        edges = [(0, 2), (2, 3), (1, 3)] + [(i, i + 1) for i in range(3, n - 1)]
    if t.family in "ADE":
        for i in range(n):
            g[i][i] = 2
        for i, j in edges:
            g[i][j] = g[j][i] = -1
    elif t.family == "B":
        for i in range(n):
            g[i][i] = 4 if i < n - 1 else 2
        for i, j in edges:
            g[i][j] = g[j][i] = -2
    elif t.family == "C":
        for i in range(n):
            g[i][i] = 2 if i < n - 1 else 4
        for i, j in edges:
            g[i][j] = g[j][i] = -2 if j == n - 1 else -1
    elif t.family == "F":
        g = [[4, -2, 0, 0], [-2, 4, -2, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    elif t.family == "G":
        g = [[2, -3], [-3, 6]]
    return g


@dataclass(frozen=True)
class RootSystem:
    type: SimpleType
    gram: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    _index: dict = field(repr=False, compare=False, hash=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        """``A[i][j] = <alpha_j, alpha_i^vee> = 2 (a_i, a_j) / (a_i, a_i)``."""
        g = self.gram
        n = self.rank
        return tuple(tuple(2 * g[i][j] // g[i][i] for j in range(n)) for i in range(n))

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        """All roots: the positive ones followed by their negatives."""
        return self.positive_roots + tuple(neg(a) for a in self.positive_roots)

    @cached_property
    def highest_root(self) -> Root:
        return max(self.positive_roots, key=height)

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return self.positive_roots[: self.rank]

    def inner(self, a: Sequence[int], b: Sequence[int]) -> int:
        g = self.gram
        n = self.rank
        return sum(a[i] * g[i][j] * b[j] for i in range(n) if a[i] for j in range(n) if b[j])

    def norm(self, a: Sequence[int]) -> int:
        return self.inner(a, a)

    @cached_property
    def long_norm(self) -> int:
        return max(self.norm(a) for a in self.simple_roots)

    def is_long(self, a: Root) -> bool:
        return self.norm(a) == self.long_norm

    def length_class(self, a: Root) -> str:
        return "long" if self.is_long(a) else "short"

    def coroot_pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        """``<a, b^vee> = 2 (a, b) / (b, b)``."""
        num = 2 * self.inner(a, b)
        den = self.norm(b)
        if num % den:
            raise ArithmeticError("non-integral coroot pairing")
        return num // den

    def reflect(self, a: Root, b: Sequence[int]) -> Root:
        """The reflection ``s_a`` applied to ``b``."""
        k = self.coroot_pairing(b, a)
        return tuple(bi - k * ai for ai, bi in zip(a, b))

    def index(self, a: Sequence[int]) -> int:
        """Position of root ``a`` in :attr:`roots`; ``KeyError`` if absent."""
        return self._index[tuple(a)]

    def __contains__(self, a) -> bool:
        return tuple(a) in self._index

    def listing(self) -> str:
        """Canonical text listing, one positive root per line."""
        lines = [f"# root system {self.type}: {len(self.positive_roots)} positive roots"]
        for a in self.positive_roots:
            lines.append(" ".join(str(c) for c in a))
        return "\n".join(lines) + "\n"


def height(a: Sequence[int]) -> int:
    return sum(a)


def neg(a: Sequence[int]) -> Root:
    return tuple(-x for x in a)


@lru_cache(maxsize=None)
def build_root_system(t: SimpleType | str) -> RootSystem:
    """Close the simple roots under the simple reflections."""
    if isinstance(t, str):
        t = SimpleType.parse(t)
    n = t.rank
    gram = _simple_root_gram(t)
    cartan = [[2 * gram[i][j] // gram[i][i] for j in range(n)] for i in range(n)]
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for b in frontier:
            for i in range(n):
                # <b, alpha_i^vee> = sum_j b_j A[i][j]
                k = sum(b[j] * cartan[i][j] for j in range(n))
                if k == 0:
                    continue
                c = list(b)
                c[i] -= k
                c = tuple(c)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    positive = sorted(
        (a for a in seen if all(x >= 0 for x in a)),
        key=lambda a: (height(a), tuple(-x for x in a)),
    )
    positive = tuple(positive)
    allroots = positive + tuple(neg(a) for a in positive)
    index = {a: i for i, a in enumerate(allroots)}
    return RootSystem(t, tuple(tuple(r) for r in gram), positive, index)


def is_root(system: RootSystem, v: Sequence[int]) -> bool:
    if len(v) != system.rank:
        raise ValueError(f"vector of length {len(v)} in rank {system.rank}")
    return tuple(v) in system


def sum_and_difference_in_sigma(system: RootSystem, a: Sequence[int], b: Sequence[int]) -> tuple[bool, bool]:
    """Whether ``a + b`` and ``a - b`` are roots."""
    for x in (a, b):
        if tuple(x) not in system:
            raise ValueError(f"{tuple(x)} is not a root of {system.type}")
    s = tuple(x + y for x, y in zip(a, b))
    d = tuple(x - y for x, y in zip(a, b))
    return s in system, d in system


def pairing(tau: Sequence[int], a: Sequence[int]) -> int:
    """Weight of ``e_a`` under the cocharacter ``tau``."""
    if len(tau) != len(a):
        raise ValueError("cocharacter and root have different lengths")
    return sum(r * c for r, c in zip(tau, a))


def _reflect_cocharacter(system: RootSystem, tau: list[int], i: int) -> None:
    ri = tau[i]
    row = system.cartan_matrix[i]
    for j in range(len(tau)):
        tau[j] -= ri * row[j]


def dominant_conjugate(system: RootSystem, tau: Sequence[int]) -> tuple[Cocharacter, tuple[int, ...]]:
    """Dominant W-conjugate of ``tau`` and a reflection word reaching it.

    While some ``r_i < 0`` apply ``s_i`` (smallest such ``i``).  The word is
    returned as 1-based simple-reflection indices in application order.
    """
    if len(tau) != system.rank:
        raise ValueError(f"cocharacter of length {len(tau)} in rank {system.rank}")
    t = list(tau)
    word: list[int] = []
    while True:
        i = next((k for k, r in enumerate(t) if r < 0), None)
        if i is None:
            return tuple(t), tuple(word)
        _reflect_cocharacter(system, t, i)
        word.append(i + 1)


def apply_reflection_word(system: RootSystem, tau: Sequence[int], word: Iterable[int]) -> Cocharacter:
    t = list(tau)
    for i in word:
        _reflect_cocharacter(system, t, i - 1)
    return tuple(t)


def reflect_root_by_word(system: RootSystem, a: Root, word: Iterable[int]) -> Root:
    """Image of a root under the Weyl element ``s_{w_k} ... s_{w_1}``."""
    for i in word:
        a = system.reflect(system.simple_roots[i - 1], a)
    return a


def is_dominant(tau: Sequence[int]) -> bool:
    return all(r >= 0 for r in tau)


# ---------------------------------------------------------------------------
# root labels

_TERM = re.compile(r"(\d)(?:\^(\d))?")


def parse_root_label(system: RootSystem, label: str) -> Root:
    """Parse a compact root label into a coefficient vector.

    Index notation lists simple-root indices with optional multiplicities:
    ``"234^25"`` is ``a2 + a3 + 2 a4 + a5``.  In types F and G a string of
    exactly ``rank`` digits is read as a coefficient vector (``"0121"``).
    A leading ``-`` negates; ``"(0,1,2,1)"`` gives coefficients explicitly.
    """
    text = label.strip()
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:].strip()
    elif text.startswith("+"):
        text = text[1:].strip()
    n = system.rank
    if text.startswith("("):
        coeffs = parse_tuple(text)
        if len(coeffs) != n:
            raise ValueError(f"root {label!r} has {len(coeffs)} coordinates, expected {n}")
    elif system.type.family in "FG" and re.fullmatch(r"\d+", text) and len(text) == n:
        coeffs = tuple(int(ch) for ch in text)
    else:
        if not text or _TERM.sub("", text):
            raise ValueError(f"malformed root label {label!r}")
        c = [0] * n
        for m in _TERM.finditer(text):
            i = int(m.group(1))
            if not 1 <= i <= n:
                raise ValueError(f"root label {label!r} refers to alpha_{i} in rank {n}")
            c[i - 1] += int(m.group(2) or 1)
        coeffs = tuple(c)
    root = tuple(sign * x for x in coeffs)
    if root not in system:
        raise ValueError(f"{label!r} = {root} is not a root of {system.type}")
    return root


def root_label(system: RootSystem, a: Root) -> str:
    """Inverse of :func:`parse_root_label` (index notation for ADE, digits for FG)."""
    sign = "-" if any(x < 0 for x in a) else ""
    c = [abs(x) for x in a]
    if system.type.family in "FG":
        return sign + "".join(str(x) for x in c)
    parts = []
    for i, x in enumerate(c, start=1):
        if x == 1:
            parts.append(str(i))
        elif x > 1:
            parts.append(f"{i}^{x}")
    return sign + "".join(parts)


def parse_tuple(text: str) -> tuple[int, ...]:
    """``"2,-7,2"``, ``"(2, -7, 2)"`` or ``"2 -7 2"`` to a tuple of ints."""
    body = text.strip().strip("()[]")
    if not body:
        return ()
    parts = re.split(r"[,\s]+", body.strip())
    try:
        return tuple(int(x) for x in parts if x)
    except ValueError:
        raise ValueError(f"cannot parse integer tuple {text!r}") from None


def format_tuple(t: Sequence) -> str:
    return ",".join(str(x) for x in t)


def invariant_degrees(t: SimpleType) -> list[int]:
    """Degrees of the basic W-invariants."""
    n = t.rank
    if t.family == "A":
        return list(range(2, n + 2))
    if t.family in "BC":
        return [2 * k for k in range(1, n + 1)]
    if t.family == "D":
        return [2 * k for k in range(1, n)] + [n]
    return {
        "E6": [2, 5, 6, 8, 9, 12],
        "E7": [2, 6, 8, 10, 12, 14, 18],
        "E8": [2, 8, 12, 14, 18, 20, 24, 30],
        "F4": [2, 6, 8, 12],
        "G2": [2, 6],
    }[str(t)]


def weyl_group_order(t: SimpleType) -> int:
    out = 1
    for d in invariant_degrees(t):
        out *= d
    return out


def count_positive_roots_from_degrees(t: SimpleType) -> int:
    """``|Sigma^+| = sum(d_i - 1)``, independent of the reflection closure."""
    return sum(d - 1 for d in invariant_degrees(t))


def coroot_coefficients(system: RootSystem, a: Root) -> tuple[Fraction, ...]:
    """Coordinates of ``a^vee`` in the simple coroots."""
    na = system.norm(a)
    return tuple(Fraction(c * system.gram[j][j], na) for j, c in enumerate(a))
