import pytest

from sullivan.family import (FamilyError, build_family, check_cocycles_bound, check_no_low_cocycles,
                             check_well_formed, family_degrees)
from sullivan.reports import low_cocycles_report, obstruction_report, verify_family


def test_degree_tables():
    assert family_degrees(1) == {"x1": 2, "x2": 4, "x3": 6, "y1": 17, "y2": 19, "y3": 21, "w": 55, "z": 71}
    assert family_degrees(2) == {"x1": 2, "x2": 4, "x3": 8, "x4": 14, "y1": 37, "y2": 43, "y3": 49,
                                 "w": 127, "z": 143}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_degrees_distinct_and_differentials_homogeneous(n):
    fam = build_family(n)
    degs = list(fam.degrees.values())
    assert len(set(degs)) == len(degs)
    for g, e in fam.algebra.diff.items():
        assert not e or e.degree() == fam.degrees[g] + 1


def test_w_differential_n1(fam1, fam2):
    assert str(fam1.algebra.diff["w"]) == "x1^28"
    assert str(fam2.algebra.diff["w"]) == "x1^28*x2^18"


def test_z_differential_exponent(fam1, fam2):
    assert "x1^9*x3^3*y1*y2" in str(fam1.algebra.diff["z"])
    assert "x1^11*x4^3*y1*y2" in str(fam2.algebra.diff["z"])


def test_rejects_n_out_of_range():
    with pytest.raises(FamilyError, match="collide"):
        build_family(0)
    with pytest.raises(FamilyError):
        build_family(4)
    assert build_family(4, max_n=4).n == 4


@pytest.mark.parametrize("n", [1, 2])
def test_well_formed(n):
    d2, mini = check_well_formed(n)
    assert d2.failures == [] and mini.failures == []


def test_no_low_cocycles(fam1, fam2):
    for fam in (fam1, fam2):
        checks = check_no_low_cocycles(fam)
        assert [c.degree for c in checks] == [fam.degrees[g] for g in ("y1", "y2", "y3")]
        assert [c.cocycle_dim for c in checks] == [0, 0, 0]
    assert sorted(check_no_low_cocycles(fam2)[1].basis) == ["x1*x2*y1", "x1^3*y1"]


def test_listed_spanning_set_incomplete_at_n2(fam2):
    payload, disc = low_cocycles_report(fam2)
    row = payload["checks"][2]
    assert row["degree"] == 49
    assert "x1^4*x2*y1" in row["missing_from_listed"]
    assert [d.code for d in disc] == ["LOW_DEGREE_SPANNING_SET_INCOMPLETE"]


def test_bounding_checks_n1(fam1):
    z = check_cocycles_bound(fam1, "z")
    w = check_cocycles_bound(fam1, "w")
    assert (z.degree, z.cap, z.h_dim) == (71, 70, 43)
    assert (w.degree, w.cap, w.h_dim) == (55, 54, 30)
    for chk in (z, w):
        bounded = [(c, p) for c, p, ok in chk.preimages if ok]
        assert len(bounded) == chk.cocycle_dim - sum(1 for _, _, ok in chk.preimages if not ok)
        for c, p in bounded:
            assert fam1.algebra.d(p) == c
        assert not chk.ok


def test_preimage_pattern_of_odd_products(fam1):
    # d(y1 y3 x1^k) = d(y1) y3 x1^k - y1 d(y3) x1^k
    A = fam1.algebra
    x1, y1, y3 = A.gen("x1"), A.gen("y1"), A.gen("y3")
    pre = y1 * y3 * x1 ** 8
    assert str(A.d(pre)) == "x1^8*x2^3*x3*y3 - x1^8*x2*x3^3*y1"


def test_obstruction_report(fam1, fam2):
    for fam in (fam1, fam2):
        payload, disc = obstruction_report(fam)
        assert all(payload[g]["equals_class_of_differential"] for g in ("y1", "y2", "y3", "w", "z"))
        codes = [d.code for d in disc]
        assert "OBSTRUCTION_Y1_Y3_SWAPPED" in codes
        assert not payload["published_y1_value_matches"] and not payload["published_y3_value_matches"]


def test_verify_family_keys(fam1):
    result, disc = verify_family(fam1, ("low",))
    assert set(result) == {"n", "no_low_cocycles"} and result["no_low_cocycles"]["ok"]
    assert disc == []
