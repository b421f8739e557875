"""Weighted Dynkin diagram tables and nilpotent orbit records.

The diagrams shipped in ``data/wdd.yaml`` were produced by
:func:`derive_wdd_table`, which runs the Bala-Carter construction over GF(101):
every Levi subsystem ``J`` of the simple roots contributes its distinguished
even gradings (those with ``dim l(0) = dim l(2)`` that extend to an sl2-triple),
and the neutral element of each is moved into the dominant chamber.
The test suite re-derives the smaller tables and compares them with the file.
"""

from __future__ import annotations

import hashlib
import itertools
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import yaml

from .chevalley import ChevalleyAlgebra, LieElement, build_algebra
from .exactlinalg import InconsistentSystem, ExactMatrix, solve_affine
from .grading import grade
from .rootsys import (
    RootSystem,
    SimpleType,
    build_root_system,
    dominant_conjugate,
    is_dominant,
    pairing,
    parse_root_label,
    parse_tuple,
)

__all__ = [
    "DATA_ENV",
    "CatalogError",
    "WeightedDynkinDiagram",
    "OrbitRecord",
    "Catalog",
    "data_dir",
    "load_catalog",
    "default_catalog",
    "lookup_wdd",
    "wdd_char0_consistency",
    "is_weighted_dynkin_diagram",
    "derive_wdd_table",
    "characteristic_allows",
    "verify_manifest",
]

DATA_ENV = "LIESTRATA_DATA"
CHECK_PRIME = 101

# Classical counts of nilpotent orbits in characteristic zero.
ORBIT_COUNTS = {"E6": 21, "E7": 45, "E8": 70, "F4": 16, "G2": 5}


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedDynkinDiagram:
    type: str
    weights: tuple[int, ...]
    label: str
    centralizer_dim: int | None = None

    def __post_init__(self):
        if any(w not in (0, 1, 2) for w in self.weights):
            raise CatalogError(f"{self.type} diagram {self.weights}: entries must lie in {{0,1,2}}")


@dataclass(frozen=True)
class OrbitRecord:
    label: str
    type: str
    characteristic: str
    representative: tuple[str, ...]
    cocharacter: tuple[int, ...] | None = None
    expected_dim_group_centralizer: int | None = None
    expected_dim_lie_centralizer: int | None = None
    source: str = ""
    line: int | None = None
    aliases: tuple[str, ...] = ()

    def roots(self) -> list[tuple[int, ...]]:
        R = build_root_system(self.type)
        return [parse_root_label(R, s) for s in self.representative]

    def element(self, A: ChevalleyAlgebra) -> LieElement:
        return A.from_roots(self.representative)


@dataclass
class Catalog:
    diagrams: dict[str, list[WeightedDynkinDiagram]] = field(default_factory=dict)
    orbits: dict[tuple[str, str], OrbitRecord] = field(default_factory=dict)
    nonsemisimple: dict[str, list[dict[str, str]]] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)

    def orbit(self, type_name: str, label: str) -> OrbitRecord:
        rec = self.orbits.get((type_name, label))
        if rec is None:
            rec = next((o for (t, _), o in self.orbits.items() if t == type_name and label in o.aliases), None)
        if rec is None:
            raise KeyError(f"no orbit {label!r} in type {type_name}")
        return rec

    def diagram_for(self, type_name: str, label: str) -> WeightedDynkinDiagram:
        for d in self.diagrams.get(type_name, ()):
            if d.label == label:
                return d
        raise KeyError(f"no diagram labelled {label!r} in type {type_name}")


# ---------------------------------------------------------------------------
# characteristic constraints


def characteristic_allows(expr: str, p: int) -> bool:
    """Evaluate ``any``, ``p=2``, ``p≠2`` (also ``p!=2``) for characteristic ``p``."""
    e = expr.replace(" ", "")
    if e == "any":
        return True
    for op in ("≠", "!="):
        if e.startswith("p" + op):
            return p != int(e[len(op) + 1:])
    if e.startswith("p="):
        return p == int(e[2:])
    raise CatalogError(f"bad characteristic constraint {expr!r}")


# ---------------------------------------------------------------------------
# YAML with line numbers


class _LineLoader(yaml.SafeLoader):
    pass


def _construct_mapping(loader, node, deep=False):
    mapping = yaml.SafeLoader.construct_mapping(loader, node, deep=True)
    mapping["__line__"] = node.start_mark.line + 1
    return mapping


_LineLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping)


def load_yaml(path: str | os.PathLike) -> Any:
    """Parse a data file; syntax errors become :class:`CatalogError` with a line number."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return yaml.load(text, Loader=_LineLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" line {mark.line + 1}" if mark is not None else ""
        raise CatalogError(f"{path}:{where.strip() or '?'}: {getattr(exc, 'problem', exc)}") from None


def data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    return Path(env) if env else Path(__file__).resolve().parent / "data"


def verify_manifest(directory: str | os.PathLike | None = None) -> dict[str, bool]:
    """Compare ``MANIFEST`` sha256 sums against the files; name -> ok."""
    d = Path(directory) if directory else data_dir()
    out = {}
    for line in (d / "MANIFEST").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        digest, name = line.split()
        f = d / name
        out[name] = f.exists() and hashlib.sha256(f.read_bytes()).hexdigest() == digest
    return out


# ---------------------------------------------------------------------------
# loading


def _where(path, rec) -> str:
    return f"{path}: line {rec.get('__line__', '?')}"


def _parse_diagrams(path, doc) -> tuple[dict, dict]:
    diagrams: dict[str, list[WeightedDynkinDiagram]] = {}
    counts: dict[str, int] = {}
    for name, block in (doc.get("diagrams") or {}).items():
        if name == "__line__":
            continue
        t = SimpleType.parse(name)
        rows = []
        seen_w, seen_l = set(), set()
        for rec in block.get("orbits", []):
            try:
                w = parse_tuple(str(rec["weights"]))
                if len(w) != t.rank:
                    raise CatalogError(f"weights {w} do not match rank {t.rank}")
                if not is_dominant(w):
                    raise CatalogError(f"weights {w} are not dominant")
                d = WeightedDynkinDiagram(name, w, str(rec["label"]), rec.get("centralizer"))
            except (KeyError, ValueError) as exc:
                raise CatalogError(f"{_where(path, rec)}: {exc}") from None
            if w in seen_w or d.label in seen_l:
                raise CatalogError(f"{_where(path, rec)}: duplicate diagram {d.label} {w}")
            seen_w.add(w)
            seen_l.add(d.label)
            rows.append(d)
        count = block.get("count")
        if count is not None and count != len(rows):
            raise CatalogError(f"{path}: {name} header says {count} orbits, file lists {len(rows)}")
        diagrams[name] = rows
        counts[name] = len(rows)
    return diagrams, counts


def _parse_orbits(path, doc) -> dict[tuple[str, str], OrbitRecord]:
    out: dict[tuple[str, str], OrbitRecord] = {}
    for rec in doc.get("orbits") or []:
        where = _where(path, rec)
        try:
            name = str(rec["type"])
            R = build_root_system(name)
            rep = tuple(str(s) for s in rec.get("representative", []))
            for s in rep:
                try:
                    parse_root_label(R, s)
                except ValueError:
                    raise CatalogError(f"root string {s!r} is not a root of {name}") from None
            tau = rec.get("cocharacter")
            tau = parse_tuple(str(tau)) if tau is not None else None
            if tau is not None and len(tau) != R.rank:
                raise CatalogError(f"cocharacter {tau} does not match rank {R.rank}")
            char = str(rec.get("characteristic", "any"))
            characteristic_allows(char, 2)
            o = OrbitRecord(
                label=str(rec["label"]),
                type=name,
                characteristic=char,
                representative=rep,
                cocharacter=tau,
                expected_dim_group_centralizer=rec.get("group_centralizer"),
                expected_dim_lie_centralizer=rec.get("lie_centralizer"),
                source=str(rec.get("source", "")),
                line=rec.get("__line__"),
                aliases=tuple(str(a) for a in rec.get("aliases", [])),
            )
        except CatalogError as exc:
            raise CatalogError(f"{where}: {exc}") from None
        except (KeyError, ValueError) as exc:
            raise CatalogError(f"{where}: {exc}") from None
        g, l = o.expected_dim_group_centralizer, o.expected_dim_lie_centralizer
        if g is not None and l is not None and l < g:
            raise CatalogError(f"{where}: Lie centralizer {l} smaller than group centralizer {g}")
        if tau is not None and rep and rec.get("graded", True):
            for a in o.roots():
                if pairing(tau, a) != 2:
                    raise CatalogError(f"{where}: representative is not of degree 2 for {tau}")
        key = (name, o.label)
        if key in out:
            raise CatalogError(f"{where}: duplicate orbit label {o.label!r} in {name}")
        out[key] = o
    return out


def load_catalog(path: str | os.PathLike | None = None) -> Catalog:
    """Load a catalog file, or the shipped diagram and orbit files.

    A single file may carry ``diagrams``, ``orbits`` and ``nonsemisimple``
    sections; the default catalog is ``wdd.yaml`` plus ``orbits.yaml``.
    """
    paths = [Path(path)] if path else [data_dir() / "wdd.yaml", data_dir() / "orbits.yaml"]
    cat = Catalog()
    for p in paths:
        doc = load_yaml(p) or {}
        if not isinstance(doc, dict):
            raise CatalogError(f"{p}: top level must be a mapping")
        d, c = _parse_diagrams(p, doc)
        cat.diagrams.update(d)
        cat.counts.update(c)
        for key, rec in _parse_orbits(p, doc).items():
            if key in cat.orbits:
                raise CatalogError(f"{p}: duplicate orbit label {key[1]!r} in {key[0]}")
            cat.orbits[key] = rec
        for name, entries in (doc.get("nonsemisimple") or {}).items():
            if name != "__line__":
                cat.nonsemisimple[name] = [
                    {k: str(v) for k, v in e.items() if k != "__line__"} for e in entries or []
                ]
    for name, n in cat.counts.items():
        if name in ORBIT_COUNTS and n != ORBIT_COUNTS[name]:
            raise CatalogError(f"{name}: {n} diagrams, expected {ORBIT_COUNTS[name]}")
    return cat


@lru_cache(maxsize=None)
def _default_catalog(directory: str) -> Catalog:
    return load_catalog()


def default_catalog() -> Catalog:
    return _default_catalog(str(data_dir()))


def lookup_wdd(type_name: str, tau: Sequence[int], catalog: Catalog | None = None) -> str:
    """Label of the diagram equal to ``tau``, or ``"absent"``.

    ``tau`` must already be dominant.
    """
    tau = tuple(int(x) for x in tau)
    if not is_dominant(tau):
        raise ValueError(f"{tau} is not dominant; take its dominant conjugate first")
    cat = catalog or default_catalog()
    if type_name not in cat.diagrams:
        raise KeyError(f"no diagram table for {type_name}")
    for d in cat.diagrams[type_name]:
        if d.weights == tau:
            return d.label
    return "absent"


# ---------------------------------------------------------------------------
# characteristic-zero checks over GF(101)


def _neutral_element(A: ChevalleyAlgebra, tau: Sequence[int], support: Sequence[int] | None = None) -> dict[int, int]:
    """Coefficients on ``h_j`` (``j`` in ``support``, 0-based) of the element acting by ``tau`` there."""
    R = A.rootsystem
    C = R.cartan_matrix
    idx = list(range(R.rank)) if support is None else list(support)
    # sum_j c_j <a_i, a_j^vee> = tau_i, and <a_i, a_j^vee> = C[j][i]
    M = ExactMatrix([[C[j][i] for j in idx] for i in idx], A.field)
    sol = solve_affine(M, [tau[k] for k in range(len(idx))])
    return {A.h_index(j + 1): c for j, c in zip(idx, sol.particular) if c}


def _sl2_completes(A: ChevalleyAlgebra, e: LieElement, h: Mapping[int, int], minus2: Sequence[int]) -> bool:
    """Is ``h`` in ``[e, span(minus2)]``?"""
    if not minus2:
        return not any(h.values())
    M = A.ad_matrix(e).submatrix(range(A.dim), minus2)
    try:
        solve_affine(M, [h.get(k, 0) for k in range(A.dim)])
    except InconsistentSystem:
        return False
    return True


def _random_in(A: ChevalleyAlgebra, indices: Sequence[int], rng: random.Random) -> LieElement:
    p = A.field.characteristic
    return A.element({k: rng.randrange(1, p) for k in indices})


def is_weighted_dynkin_diagram(type_name: str, tau: Sequence[int], seed: int = 0, tries: int = 3) -> bool:
    """Whether ``tau`` is the weighted Dynkin diagram of some nilpotent orbit.

    Over GF(101), a generic ``e`` of degree 2 must be the nilpositive element
    of an sl2-triple whose neutral element acts by ``tau``.
    """
    A = build_algebra(type_name, CHECK_PRIME)
    tau = tuple(tau)
    if not is_dominant(tau) or any(w > 2 for w in tau):
        return False
    G = grade(A, tau)
    h = _neutral_element(A, tau)
    rng = random.Random(seed)
    for _ in range(tries):
        e = _random_in(A, G.bucket(2), rng)
        if _sl2_completes(A, e, h, G.bucket(-2)):
            return True
    return False


def wdd_char0_consistency(type_name: str, weights: Sequence[int], samples: int = 20, seed: int = 0) -> bool:
    """Randomized check that ``dim g_e = dim g(0) + dim g(1)`` for generic ``e`` of degree 2."""
    A = build_algebra(type_name, CHECK_PRIME)
    G = grade(A, tuple(weights))
    target = G.dim(0) + G.dim(1)
    rng = random.Random(seed)
    for _ in range(samples):
        e = _random_in(A, G.bucket(2), rng)
        if A.centralizer(e)[0] == target:
            return True
    return False


# ---------------------------------------------------------------------------
# Bala-Carter derivation

# Distinguished orbit names of a simple type, ordered by centralizer dimension.
_DISTINGUISHED_NAMES = {
    "E6": ["E6", "E6(a1)", "E6(a3)"],
    "E8": ["E8", "E8(a1)", "E8(a2)", "E8(a3)", "E8(a4)", "E8(b4)", "E8(a5)", "E8(b5)", "E8(a6)", "E8(b6)", "E8(a7)"],
}
_FAMILY_ORDER = "EFDCBGA"


def _component_type(R: RootSystem, comp: Sequence[int]) -> str:
    n = len(comp)
    norms = {R.norm(R.simple_roots[i]) for i in comp}
    C = R.cartan_matrix
    if len(norms) == 1:
        short = "~" if not R.type.simply_laced and R.norm(R.simple_roots[comp[0]]) < R.long_norm else ""
        nbrs = {i: [j for j in comp if j != i and C[i][j]] for i in comp}
        branch = [i for i in comp if len(nbrs[i]) == 3]
        if not branch:
            return f"{short}A{n}"
        b = branch[0]
        arms = []
        for start in nbrs[b]:
            length, prev, cur = 1, b, start
            while True:
                nxt = [j for j in nbrs[cur] if j != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            return f"D{n}"
        return f"E{n}"
    if n == 2:
        ratio = max(norms) // min(norms)
        return "G2" if ratio == 3 else "B2"
    if n == 4:
        return "F4"
    longs = sum(1 for i in comp if R.norm(R.simple_roots[i]) == max(norms))
    return "B3" if longs == 2 else "C3"


def _components(R: RootSystem, J: Sequence[int]) -> list[tuple[int, ...]]:
    C = R.cartan_matrix
    left, comps = set(J), []
    while left:
        stack = [min(left)]
        comp = set(stack)
        while stack:
            i = stack.pop()
            for j in list(left - comp):
                if C[i][j]:
                    comp.add(j)
                    stack.append(j)
        left -= comp
        comps.append(tuple(sorted(comp)))
    return sorted(comps)


def _positive_in(R: RootSystem, J: Iterable[int]) -> list[tuple[int, ...]]:
    J = set(J)
    return [a for a in R.positive_roots if all(c == 0 or i in J for i, c in enumerate(a))]


def _distinguished_gradings(A: ChevalleyAlgebra, comp: tuple[int, ...]) -> list[tuple[tuple[int, ...], int]]:
    """Even distinguished gradings of the Levi component ``comp``: (weights on comp, centralizer dim)."""
    R = A.rootsystem
    pos = _positive_in(R, comp)
    out = []
    for bits in itertools.product((0, 2), repeat=len(comp)):
        full = [0] * R.rank
        for i, w in zip(comp, bits):
            full[i] = w
        deg = [pairing(full, a) for a in pos]
        d0 = len(comp) + 2 * deg.count(0)
        d2 = deg.count(2)
        if d0 != d2:
            continue
        two = [A.root_index(a) for a, d in zip(pos, deg) if d == 2]
        minus = [A.root_index(tuple(-c for c in a)) for a, d in zip(pos, deg) if d == 2]
        h = _neutral_element(A, bits, comp)
        rng = random.Random(len(out))
        if any(_sl2_completes(A, _random_in(A, two, rng), h, minus) for _ in range(3)):
            out.append((bits, d0))
    out.sort(key=lambda x: x[1])
    return out


def _component_names(type_name: str, n: int) -> list[str]:
    base = type_name.lstrip("~")
    if base in _DISTINGUISHED_NAMES:
        names = _DISTINGUISHED_NAMES[base]
    else:
        names = [base] + [f"{base}(a{k})" for k in range(1, n)]
    if len(names) != n:
        raise RuntimeError(f"{type_name}: found {n} distinguished orbits, expected {len(names)}")
    prefix = "~" if type_name.startswith("~") else ""
    return [prefix + s for s in names]


def _label(parts: list[tuple[str, str]]) -> str:
    """Combine (component type, component orbit name) pairs into a label."""
    if not parts:
        return "0"

    def key(item):
        ctype, name = item
        base = ctype.lstrip("~")
        return (_FAMILY_ORDER.index(base[0]), -int(base[1:]), ctype.startswith("~"), name)

    parts = sorted(parts, key=key)
    out, i = [], 0
    while i < len(parts):
        j = i
        while j < len(parts) and parts[j][1] == parts[i][1]:
            j += 1
        k = j - i
        out.append((str(k) if k > 1 else "") + parts[i][1])
        i = j
    return "+".join(out)


def derive_wdd_table(type_name: str) -> list[WeightedDynkinDiagram]:
    """All weighted Dynkin diagrams of ``type_name`` with Bala-Carter labels.

    Labels sharing a Levi type but coming from non-conjugate Levi subgroups get
    primes: the larger orbit ``'`` and the smaller ``''``.
    """
    A = build_algebra(type_name, CHECK_PRIME)
    R = A.rootsystem
    n = R.rank
    C = R.cartan_matrix
    comp_cache: dict[tuple[int, ...], list] = {}
    found: dict[tuple[int, ...], str] = {}
    for size in range(n + 1):
        for J in itertools.combinations(range(n), size):
            comps = _components(R, J)
            options = []
            for comp in comps:
                if comp not in comp_cache:
                    grads = _distinguished_gradings(A, comp)
                    ctype = _component_type(R, comp)
                    names = _component_names(ctype, len(grads))
                    comp_cache[comp] = [(g, ctype, nm) for (g, _), nm in zip(grads, names)]
                options.append([(comp, g, ctype, nm) for g, ctype, nm in comp_cache[comp]])
            for choice in itertools.product(*options):
                h = [Fraction(0)] * n
                for comp, g, _, _ in choice:
                    coeffs = _rational_neutral(C, comp, g)
                    for j, c in coeffs.items():
                        h[j] += c
                tau = [sum(h[j] * C[j][i] for j in range(n)) for i in range(n)]
                if any(x.denominator != 1 for x in tau):
                    raise RuntimeError(f"non-integral neutral element for {J}")
                dom, _ = dominant_conjugate(R, [int(x) for x in tau])
                label = _label([(ct, nm) for _, _, ct, nm in choice])
                prev = found.get(dom)
                if prev is not None and prev != label:
                    raise RuntimeError(f"{type_name}: {dom} labelled both {prev} and {label}")
                found[dom] = label
    rows = []
    for w, label in found.items():
        G = grade(A, w)
        rows.append([w, label, G.dim(0) + G.dim(1)])
    by_label: dict[str, list] = {}
    for r in rows:
        by_label.setdefault(r[1], []).append(r)
    for label, group in by_label.items():
        if len(group) > 1:
            if len(group) != 2:
                raise RuntimeError(f"{label} occurs {len(group)} times")
            group.sort(key=lambda r: r[2])
            group[0][1] = f"({label})'"
            group[1][1] = f"({label})''"
    rows.sort(key=lambda r: (-r[2], r[0]))
    return [WeightedDynkinDiagram(type_name, w, lab, cdim) for w, lab, cdim in rows]


def _rational_neutral(C, comp: Sequence[int], weights: Sequence[int]) -> dict[int, Fraction]:
    """Solve ``sum_j c_j C[j][i] = weights_i`` over Q on the component."""
    M = ExactMatrix([[C[j][i] for j in comp] for i in comp], 0)
    sol = solve_affine(M, list(weights))
    return dict(zip(comp, sol.particular))
