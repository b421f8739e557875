"""Declarative claims harness.

A claims file is a YAML list under ``claims:``; every record has ``id``,
``kind``, kind-specific inputs, ``expected`` and a non-empty ``anchor``.
Expected values are compared by the rules in :func:`compare`:

* integers, booleans, tuples (``"0,1,1,0,1,2"``) and labels match exactly;
* ``">= n"``, ``"> n"``, ``"<= n"``, ``"< n"`` (also ``≥``/``≤``) are bounds;
* ``"full"``/``"proper"`` compare a bracket image with its target space;
* a family such as ``"(r,-2-r,r,4)"`` matches the same set of integer points.

Elements are given as ``{orbit: LABEL}``, ``{roots: [...]}`` or
``{dense: {seed: S, samples: N, require_centralizer: D}}``; the last draws a
seeded stand-in for the open orbit of the claim's degree-2 space.
"""

from __future__ import annotations

import fnmatch
import json
import re
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from .catalog import Catalog, CatalogError, data_dir, default_catalog, load_yaml, lookup_wdd
from .chevalley import AmbiguousPower, ChevalleyAlgebra, LieElement, build_algebra, p_power
from .exactlinalg import nilpotent_jordan_partition
from .grading import (
    Grading,
    IntegerFamily,
    NotHomogeneous,
    bracket_image_dim,
    dense_orbit_element,
    duality_identity_check,
    grade,
    graded_centralizer_dims,
    pairing_perfect,
    solve_grading_constraints,
)
from .rootsys import (
    build_root_system,
    dominant_conjugate,
    format_tuple,
    parse_root_label,
    parse_tuple,
    sum_and_difference_in_sigma,
)

__all__ = [
    "KINDS",
    "ClaimError",
    "ClaimReport",
    "load_claims",
    "run_claims",
    "compare",
    "parse_family",
    "format_table",
    "reports_to_json",
    "default_claims_path",
]


class ClaimError(ValueError):
    pass


@dataclass
class ClaimReport:
    id: str
    kind: str
    computed: Any
    expected: Any
    status: str
    millis: float
    message: str = ""

    def as_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        if not timing:
            d["millis"] = 0
        if not d["message"]:
            del d["message"]
        return d


def default_claims_path() -> Path:
    return data_dir() / "claims.yaml"


# ---------------------------------------------------------------------------
# comparison

_BOUND = re.compile(r"^\s*(>=|≥|<=|≤|>|<)\s*(-?\d+)\s*$")


def parse_family(text: str) -> IntegerFamily:
    """Parse ``"(r,-2-2r,r,4)"`` into an :class:`IntegerFamily`."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ClaimError(f"bad family {text!r}")
    coords = [c.strip() for c in body[1:-1].split(",")]
    names = sorted({ch for c in coords for ch in c if ch.isalpha()})
    particular, kernel = [], [[0] * len(coords) for _ in names]
    for i, c in enumerate(coords):
        const = 0
        for sign, num, name in re.findall(r"([+-]?)(\d*)([a-z]?)", c.replace(" ", "")):
            if not num and not name:
                continue
            v = int(num) if num else 1
            if sign == "-":
                v = -v
            if name:
                kernel[names.index(name)][i] += v
            else:
                const += v
        particular.append(const)
    return IntegerFamily.from_generators(particular, kernel)


def compare(kind: str, computed: Any, expected: Any) -> bool:
    if isinstance(expected, dict):
        return isinstance(computed, dict) and all(
            k in computed and compare(kind, computed[k], v) for k, v in expected.items()
        )
    if kind == "bracket_image" and expected in ("full", "proper"):
        return isinstance(computed, dict) and computed.get("status") == expected
    if isinstance(computed, dict) and "value" in computed:
        computed = computed["value"]
    if isinstance(expected, str):
        m = _BOUND.match(expected)
        if m:
            if not isinstance(computed, int) or isinstance(computed, bool):
                return False
            op, n = m.group(1), int(m.group(2))
            return {
                ">=": computed >= n, "≥": computed >= n, ">": computed > n,
                "<=": computed <= n, "≤": computed <= n, "<": computed < n,
            }[op]
        if kind == "solve_tau" and expected.startswith("("):
            if not isinstance(computed, str) or not computed.startswith("("):
                return False
            return parse_family(expected) == parse_family(computed)
    if isinstance(expected, bool) or isinstance(computed, bool):
        return expected is computed
    if isinstance(expected, str) and isinstance(computed, str):
        return _norm(expected) == _norm(computed)
    return expected == computed


def _norm(s: str) -> str:
    s = s.replace(" ", "")
    if re.fullmatch(r"\(?-?\d+(,-?\d+)*\)?", s):
        return s.strip("()")
    return s


# ---------------------------------------------------------------------------
# loading


KINDS: dict[str, tuple[str, ...]] = {
    "dominant_conjugate": ("type", "tau"),
    "graded_dim": ("type", "tau", "degree"),
    "centralizer_dim": ("type", "p", "element"),
    "graded_centralizer": ("type", "p", "element", "degree"),
    "bracket_image": ("type", "p", "element", "degree"),
    "pairing_perfect": ("type", "p", "tau", "degree"),
    "solve_tau": ("type", "supports"),
    "root_sum": ("type", "roots"),
    "p_power_degree": ("type", "p", "element"),
    "jordan_blocks": ("type", "p", "element"),
    "wdd_lookup": ("type", "tau"),
    "duality_identity": ("type", "p", "element"),
    "commutes": ("type", "p", "element", "with"),
}


def load_claims(path: str | Path | None = None) -> list[dict]:
    """Load and schema-check a claims file.

    Records with an unknown kind or missing inputs are kept, carrying an
    ``__error__`` entry, so that :func:`run_claims` can report them per claim.
    """
    p = Path(path) if path else default_claims_path()
    doc = load_yaml(p)
    if not isinstance(doc, dict) or not isinstance(doc.get("claims"), list):
        raise CatalogError(f"{p}: expected a mapping with a 'claims' list")
    out, seen = [], set()
    for rec in doc["claims"]:
        line = rec.get("__line__", "?")
        cid = str(rec.get("id", f"line-{line}"))
        if cid in seen:
            raise CatalogError(f"{p}: line {line}: duplicate claim id {cid!r}")
        seen.add(cid)
        rec = dict(rec)
        rec["id"] = cid
        kind = rec.get("kind")
        if kind not in KINDS:
            rec["__error__"] = f"unknown kind {kind!r}"
        else:
            missing = [k for k in KINDS[kind] + ("expected",) if k not in rec]
            if missing:
                rec["__error__"] = f"missing inputs: {', '.join(missing)}"
        out.append(rec)
    return out


# ---------------------------------------------------------------------------
# evaluation


class _Context:
    """Caches per run: algebras, gradings and resolved elements."""

    def __init__(self, catalog: Catalog):
        self.catalog = catalog
        self._elements: dict[str, tuple[LieElement, Grading | None]] = {}

    def algebra(self, rec) -> ChevalleyAlgebra:
        return build_algebra(str(rec["type"]), int(rec.get("p", 0)))

    def tau(self, rec, element_spec=None) -> tuple[int, ...]:
        if "tau" in rec:
            return parse_tuple(str(rec["tau"]))
        spec = element_spec or rec.get("element")
        if isinstance(spec, dict) and "orbit" in spec:
            o = self.catalog.orbit(str(rec["type"]), spec["orbit"])
            if o.cocharacter is not None:
                return o.cocharacter
        raise ClaimError("no cocharacter given and the orbit record has none")

    def grading(self, rec, element_spec=None) -> Grading:
        return grade(self.algebra(rec), self.tau(rec, element_spec))

    def element(self, rec, spec=None) -> LieElement:
        spec = rec["element"] if spec is None else spec
        A = self.algebra(rec)
        if isinstance(spec, str):
            spec = {"orbit": spec}
        if not isinstance(spec, dict):
            raise ClaimError(f"bad element spec {spec!r}")
        if "orbit" in spec:
            o = self.catalog.orbit(str(rec["type"]), spec["orbit"])
            if not o.representative:
                raise ClaimError(f"orbit {o.label} has no representative")
            return o.element(A)
        if "roots" in spec:
            return A.from_roots([str(s) for s in spec["roots"]])
        if "h" in spec:
            x = A.zero()
            for i in spec["h"]:
                x = A.add(x, A.h(int(i)))
            return x
        if "dense" in spec:
            d = spec["dense"]
            G = self.grading(rec)
            key = f"{rec['type']}/{A.field.characteristic}/{G.cocharacter}/{d}"
            if key not in self._elements:
                x, _ = dense_orbit_element(A, G, seed=int(d["seed"]), samples=int(d.get("samples", 32)))
                need = d.get("require_centralizer")
                if need is not None and A.centralizer(x)[0] != int(need):
                    raise ClaimError(f"seeded element fails the centralizer-{need} predicate")
                self._elements[key] = (x, G)
            return self._elements[key][0]
        raise ClaimError(f"bad element spec {spec!r}")


def _degree_value(dims: dict[int, int], degree) -> int:
    if isinstance(degree, str):
        d = degree.strip()
        if d == "negative":
            return sum(v for j, v in dims.items() if j < 0)
        if d == "nonnegative":
            return sum(v for j, v in dims.items() if j >= 0)
        if d == "total":
            return sum(dims.values())
        degree = int(d)
    return dims.get(int(degree), 0)


def _eval(ctx: _Context, rec) -> Any:
    kind = rec["kind"]
    t = str(rec["type"])
    if kind == "dominant_conjugate":
        R = build_root_system(t)
        dom, _ = dominant_conjugate(R, parse_tuple(str(rec["tau"])))
        return format_tuple(dom)
    if kind == "graded_dim":
        G = grade(build_algebra(t, 0), parse_tuple(str(rec["tau"])))
        return G.dim(int(rec["degree"]))
    if kind == "wdd_lookup":
        tau = parse_tuple(str(rec["tau"]))
        if rec.get("dominantize"):
            tau, _ = dominant_conjugate(build_root_system(t), tau)
        return lookup_wdd(t, tau, ctx.catalog)
    if kind == "solve_tau":
        fixed = {int(k): int(v) for k, v in (rec.get("fixed") or {}).items() if k != "__line__"}
        try:
            conditions = {str(k): int(v) for k, v in (rec.get("conditions") or {}).items() if k != "__line__"}
            fam = solve_grading_constraints(
                t, [str(s) for s in rec["supports"]], int(rec.get("target", 2)), fixed, conditions
            )
        except ValueError as exc:
            if "inconsistent" in str(exc):
                return "inconsistent"
            raise
        return fam.describe()
    if kind == "root_sum":
        R = build_root_system(t)
        a, b = (parse_root_label(R, str(s)) for s in rec["roots"])
        s, d = sum_and_difference_in_sigma(R, a, b)
        return {"sum": "present" if s else "absent", "difference": "present" if d else "absent"}
    A = ctx.algebra(rec)
    if kind == "pairing_perfect":
        G = grade(A, parse_tuple(str(rec["tau"])))
        deg = rec["degree"]
        if deg == "all":
            return all(pairing_perfect(A, G, i) for i in G.degrees if i != 0)
        return pairing_perfect(A, G, int(deg))
    e = ctx.element(rec)
    if kind == "centralizer_dim":
        return A.centralizer(e)[0]
    if kind == "jordan_blocks":
        parts = nilpotent_jordan_partition(A.ad_matrix(e))
        if rec.get("measure", "count") == "count":
            return len(parts)
        return format_tuple(parts)
    if kind == "commutes":
        x = ctx.element(rec, rec["with"])
        out: Any = A.bracket(e, x).is_zero()
        if "tau" in rec or isinstance(rec.get("expected"), dict):
            G = ctx.grading(rec)
            return {"value": out, "degree": G.degree(x)}
        return out
    G = ctx.grading(rec)
    if kind == "graded_centralizer":
        return _degree_value(graded_centralizer_dims(A, e, G), rec["degree"])
    if kind == "bracket_image":
        j = int(rec["degree"])
        r = bracket_image_dim(A, e, G, j)
        target = G.dim(j + 2)
        return {"value": r, "target": target, "status": "full" if r == target else "proper"}
    if kind == "duality_identity":
        return duality_identity_check(A, e, G)
    if kind == "p_power_degree":
        x = e
        for _ in range(int(rec.get("iterations", 1))):
            try:
                x = p_power(A, x, degree_hint=A.field.characteristic * G.degree(x), grading=G)
            except AmbiguousPower as exc:
                raise ClaimError(str(exc)) from None
        if x.is_zero():
            return "zero"
        try:
            deg = G.degree(x)
        except NotHomogeneous:
            return "mixed"
        if rec.get("require_centralizer", True) and not A.bracket(e, x).is_zero():
            return f"degree {deg}, outside the centralizer"
        return deg
    raise ClaimError(f"unknown kind {kind!r}")


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items() if k != "__line__"}
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    return v


def run_claims(
    catalog: Catalog | None = None,
    claims: str | Path | list[dict] | None = None,
    filter: str | None = None,
    progress: Callable[[ClaimReport], None] | None = None,
) -> list[ClaimReport]:
    """Run every claim whose id matches the ``filter`` glob, in file order."""
    catalog = catalog or default_catalog()
    recs = claims if isinstance(claims, list) else load_claims(claims)
    ctx = _Context(catalog)
    reports = []
    for rec in recs:
        if filter and not fnmatch.fnmatchcase(rec["id"], filter):
            continue
        expected = _jsonable(rec.get("expected"))
        start = time.perf_counter()
        computed, status, msg = None, "error", ""
        if "__error__" in rec:
            msg = rec["__error__"]
        else:
            try:
                computed = _jsonable(_eval(ctx, rec))
                status = "pass" if compare(rec["kind"], computed, expected) else "fail"
            except (ClaimError, CatalogError, KeyError, ValueError, NotHomogeneous) as exc:
                msg = f"{type(exc).__name__}: {exc}"
        millis = round((time.perf_counter() - start) * 1000, 1)
        r = ClaimReport(rec["id"], str(rec.get("kind")), computed, expected, status, millis, msg)
        reports.append(r)
        if progress:
            progress(r)
    return reports


def reports_to_json(reports: list[ClaimReport], timing: bool = True) -> str:
    return json.dumps([r.as_dict(timing) for r in reports], indent=2, ensure_ascii=False, sort_keys=False)


def _show(v) -> str:
    if isinstance(v, dict) and "value" in v:
        extra = ", ".join(f"{k}={x}" for k, x in v.items() if k != "value")
        return f"{_show(v['value'])} ({extra})"
    if isinstance(v, dict):
        return ", ".join(f"{k}={x}" for k, x in v.items())
    if isinstance(v, bool):
        return str(v).lower()
    return "" if v is None else str(v)


def format_table(reports: list[ClaimReport], timing: bool = True) -> str:
    """Column-aligned report with a summary line."""
    header = ["id", "kind", "status", "computed", "expected"] + (["ms"] if timing else [])
    rows = []
    for r in reports:
        computed = _show(r.computed) if r.status != "error" else r.message
        row = [r.id, r.kind, r.status, computed, _show(r.expected)]
        if timing:
            row.append(f"{r.millis:.1f}")
        rows.append(row)
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)] if rows else [len(h) for h in header]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*header).rstrip(), fmt.format(*("-" * w for w in widths)).rstrip()]
    lines += [fmt.format(*row).rstrip() for row in rows]
    counts = {s: sum(r.status == s for r in reports) for s in ("pass", "fail", "error")}
    lines.append(f"{len(reports)} claims: {counts['pass']} pass, {counts['fail']} fail, {counts['error']} error")
    return "\n".join(lines)
