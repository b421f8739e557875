from __future__ import annotations

import shutil
import textwrap

import pytest

from liestrata.catalog import (
    DATA_ENV,
    ORBIT_COUNTS,
    CatalogError,
    characteristic_allows,
    data_dir,
    default_catalog,
    derive_wdd_table,
    is_weighted_dynkin_diagram,
    load_catalog,
    lookup_wdd,
    verify_manifest,
    wdd_char0_consistency,
)
from liestrata.chevalley import build_algebra
from liestrata.grading import grade


@pytest.fixture(scope="module")
def catalog():
    return default_catalog()


def write(tmp_path, body: str):
    f = tmp_path / "cat.yaml"
    f.write_text(textwrap.dedent(body))
    return f


# -- shipped data -------------------------------------------------------------------


def test_orbit_counts(catalog):
    assert {t: len(v) for t, v in catalog.diagrams.items()} == ORBIT_COUNTS
    assert ORBIT_COUNTS == {"G2": 5, "F4": 16, "E6": 21, "E7": 45, "E8": 70}


@pytest.mark.parametrize("name", ["G2", "F4", "E6", "E7", "E8"])
def test_shipped_table_equals_derivation(catalog, name):
    derived = derive_wdd_table(name)
    shipped = catalog.diagrams[name]
    assert [(d.label, d.weights, d.centralizer_dim) for d in derived] == [
        (d.label, d.weights, d.centralizer_dim) for d in shipped
    ]


@pytest.mark.parametrize("name", ["G2", "F4", "E6", "E7", "E8"])
def test_centralizer_column_matches_grading(catalog, name):
    A = build_algebra(name, 0)
    for d in catalog.diagrams[name]:
        G = grade(A, d.weights)
        assert d.centralizer_dim == G.dim(0) + G.dim(1)
        assert all(w in (0, 1, 2) for w in d.weights)


def test_standard_table_entries(catalog):
    # a few entries checked against the standard tables by hand
    expected = {
        ("G2", "G2(a1)"): (0, 2),
        ("F4", "F4(a3)"): (0, 2, 0, 0),
        ("E6", "D5"): (2, 2, 0, 2, 0, 2),
        ("E6", "A3+A1"): (0, 1, 1, 0, 1, 0),
        ("E6", "E6(a3)"): (2, 0, 0, 2, 0, 2),
        ("E7", "E7(a4)"): (2, 0, 0, 2, 0, 0, 2),
        ("E8", "E8(b6)"): (0, 0, 0, 2, 0, 0, 0, 2),
        ("E8", "E8(b4)"): (2, 0, 0, 2, 0, 0, 2, 2),
        ("E8", "D5+A2"): (0, 0, 0, 0, 2, 0, 0, 2),
        ("E8", "D7(a1)"): (2, 0, 0, 0, 2, 0, 0, 2),
        ("E8", "E8"): (2,) * 8,
    }
    for (t, label), w in expected.items():
        assert catalog.diagram_for(t, label).weights == w


def test_lookup(catalog):
    assert lookup_wdd("E7", (2, 0, 0, 2, 0, 0, 2)) == "E7(a4)"
    assert lookup_wdd("E6", (2, 0, 2, 2, 0, 2)) == "absent"
    with pytest.raises(ValueError):
        lookup_wdd("E6", (2, -1, 0, 0, 0, 0))
    with pytest.raises(KeyError):
        lookup_wdd("B3", (0, 0, 0))


def test_orbit_records(catalog):
    rec = catalog.orbit("E8", "(A7)_2")  # alias
    assert rec.label == "(A7)_3"
    assert rec.characteristic == "p=3"
    with pytest.raises(KeyError):
        catalog.orbit("E8", "nonsense")
    for rec in catalog.orbits.values():
        g, l = rec.expected_dim_group_centralizer, rec.expected_dim_lie_centralizer
        assert g is None or l is None or l >= g


def test_catalogued_lie_centralizers(catalog):
    for rec in catalog.orbits.values():
        if rec.expected_dim_lie_centralizer is None:
            continue
        p = int(rec.characteristic.split("=")[1])
        A = build_algebra(rec.type, p)
        assert A.centralizer(rec.element(A))[0] == rec.expected_dim_lie_centralizer, rec.label


def test_nonsemisimple_list_is_marked_unverifiable(catalog):
    entries = [e for v in catalog.nonsemisimple.values() for e in v]
    assert entries and all(e["status"] == "unverifiable: group data" for e in entries)


def test_manifest():
    assert verify_manifest() == {"wdd.yaml": True, "orbits.yaml": True, "claims.yaml": True}


def test_data_dir_override(tmp_path, monkeypatch):
    for f in data_dir().iterdir():
        if f.is_file():
            shutil.copy(f, tmp_path / f.name)
    with open(tmp_path / "orbits.yaml", "a") as fh:
        fh.write("\n# local edit\n")
    monkeypatch.setenv(DATA_ENV, str(tmp_path))
    assert data_dir() == tmp_path
    assert verify_manifest()["orbits.yaml"] is False
    assert len(load_catalog().orbits) == len(default_catalog().orbits)


# -- characteristic expressions ------------------------------------------------------


def test_characteristic_allows():
    assert characteristic_allows("any", 2)
    assert characteristic_allows("p=2", 2) and not characteristic_allows("p=2", 3)
    assert characteristic_allows("p≠2", 3) and not characteristic_allows("p≠2", 2)
    assert characteristic_allows("p!=2", 0)
    with pytest.raises(ValueError):
        characteristic_allows("p<2", 2)


# -- loader errors ----------------------------------------------------------------------


def test_bad_root_string_named(tmp_path):
    f = write(
        tmp_path,
        """\
        orbits:
          - label: X
            type: E6
            representative: ["13", "999"]
        """,
    )
    with pytest.raises(CatalogError, match=r"line 2.*'999'"):
        load_catalog(f)


def test_yaml_syntax_error_has_line(tmp_path):
    f = write(
        tmp_path,
        """\
        orbits:
          - label: X
            type: [E6
        """,
    )
    with pytest.raises(CatalogError, match=r"line \d+"):
        load_catalog(f)


@pytest.mark.parametrize(
    "body,message",
    [
        (
            """\
            orbits:
              - {label: X, type: G2, representative: ["21"], cocharacter: "2,-2"}
              - {label: X, type: G2, representative: ["32"], cocharacter: "2,-2"}
            """,
            "duplicate orbit",
        ),
        (
            """\
            orbits:
              - {label: X, type: G2, representative: ["21"], cocharacter: "1,1"}
            """,
            "not of degree 2",
        ),
        (
            """\
            orbits:
              - {label: X, type: G2, representative: ["21"], cocharacter: "2,-2,0"}
            """,
            "does not match rank",
        ),
        (
            """\
            orbits:
              - {label: X, type: G2, representative: ["21"], group_centralizer: 6, lie_centralizer: 4}
            """,
            "smaller than group",
        ),
        (
            """\
            orbits:
              - {label: X, type: G9, representative: []}
            """,
            "G9",
        ),
        (
            """\
            diagrams:
              G2:
                orbits:
                  - {label: A, weights: "0,-1"}
            """,
            "not dominant",
        ),
        (
            """\
            diagrams:
              G2:
                count: 3
                orbits:
                  - {label: A, weights: "0,1"}
            """,
            "header says 3",
        ),
        (
            """\
            diagrams:
              G2:
                orbits:
                  - {label: A, weights: "0,1"}
                  - {label: B, weights: "0,1"}
            """,
            "duplicate diagram",
        ),
        (
            """\
            diagrams:
              G2:
                orbits:
                  - {label: A, weights: "0,1"}
            """,
            "expected 5",
        ),
    ],
)
def test_loader_rejects(tmp_path, body, message):
    with pytest.raises(CatalogError, match=message):
        load_catalog(write(tmp_path, body))


def test_graded_false_skips_degree_check(tmp_path):
    f = write(
        tmp_path,
        """\
        orbits:
          - {label: X, type: G2, representative: ["21"], cocharacter: "1,1", graded: false}
        """,
    )
    assert load_catalog(f).orbit("G2", "X").cocharacter == (1, 1)


# -- characteristic-zero diagram checks ------------------------------------------------


@pytest.mark.parametrize("name", ["G2", "F4", "E6"])
def test_every_shipped_diagram_passes_sl2_check(catalog, name):
    for d in catalog.diagrams[name]:
        assert is_weighted_dynkin_diagram(name, d.weights), d.label


def test_non_diagrams_rejected(catalog):
    # all dominant 0/1/2 tuples of G2 that are not in the table
    shipped = {d.weights for d in catalog.diagrams["G2"]}
    for w in [(a, b) for a in range(3) for b in range(3)]:
        assert is_weighted_dynkin_diagram("G2", w) == (w in shipped), w
    assert not is_weighted_dynkin_diagram("E6", (2, 0, 2, 2, 0, 2))
    assert not is_weighted_dynkin_diagram("E6", (2, 0, 0, 0, 0, 0))
    assert not is_weighted_dynkin_diagram("E6", (3, 0, 0, 0, 0, 0))


def test_char0_consistency(catalog):
    for d in catalog.diagrams["F4"]:
        assert wdd_char0_consistency("F4", d.weights)
    # the dimension test alone is weaker than the sl2 test
    assert wdd_char0_consistency("E6", (2, 0, 0, 0, 0, 0))
    assert not is_weighted_dynkin_diagram("E6", (2, 0, 0, 0, 0, 0))
