"""Test-only oracle: graded kernel dimensions of ad e over GF(2^16).

Over GF(2) a handful of random draws can undershoot the generic rank of
``ad e`` on a graded block.  Drawing the coefficients of ``e`` from the much
larger field GF(2^16) hits the generic rank with overwhelming probability,
so these numbers are the reference for the sampled GF(2) values.  Only the
structure constants mod 2 come from the library.
"""

from __future__ import annotations

import random

from liestrata.chevalley import build_algebra
from liestrata.grading import grade

POLY = 0x1100B  # x^16 + x^12 + x^3 + x + 1, primitive
ORDER = 1 << 16

_EXP = [0] * (2 * ORDER)
_LOG = [0] * ORDER
_x = 1
for _i in range(ORDER - 1):
    _EXP[_i] = _x
    _LOG[_x] = _i
    _x <<= 1
    if _x & ORDER:
        _x ^= POLY
for _i in range(ORDER - 1, 2 * ORDER):
    _EXP[_i] = _EXP[_i - (ORDER - 1)]


def mul(a: int, b: int) -> int:
    return 0 if a == 0 or b == 0 else _EXP[_LOG[a] + _LOG[b]]


def inv(a: int) -> int:
    return _EXP[(ORDER - 1 - _LOG[a]) % (ORDER - 1)]


def rank(M: list[list[int]]) -> int:
    M = [row[:] for row in M]
    r = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        s = inv(M[r][c])
        M[r] = [mul(s, v) for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a ^ mul(f, b) for a, b in zip(M[i], M[r])]
        r += 1
    return r


def generic_kernel_dims(type_name: str, tau, degrees, seed: int = 7) -> dict[int, int]:
    """``dim ker(ad e: g(j) -> g(j+2))`` for a random ``e`` in ``g(2)`` over GF(2^16)."""
    A = build_algebra(type_name, 2)
    G = grade(A, tau)
    rng = random.Random(seed)
    coef = {k: rng.randrange(1, ORDER) for k in G.bucket(2)}
    out = {}
    for j in degrees:
        src, dst = G.bucket(j), G.bucket(j + 2)
        row = {t: i for i, t in enumerate(dst)}
        M = [[0] * len(src) for _ in dst]
        for k, c in coef.items():
            for col, s in enumerate(src):
                for t, v in A.bracket_basis(k, s):
                    if v % 2:
                        M[row[t]][col] ^= c
        out[j] = len(src) - rank(M)
    return out
