import pytest

from artifact.constructions import conjugate
from artifact.errors import PreconditionUnmet
from artifact.growth import classify, growth_series, lower_bound_check, sync_level_linear_check
from artifact.registry import get
from artifact.transducer import identity, inverse, min_core_power

G_COUNTS = [2, 3, 5, 7, 11, 15, 23, 31, 47, 63, 95, 127]


def test_g_series_and_bound():
    s = growth_series(get("G_H3"), 12)
    assert s.states == G_COUNTS and not s.truncated
    assert [r.sync_level for r in s.records] == list(range(1, 13))
    assert lower_bound_check(s, lambda m: 2 ** (m // 2))


def test_identity_and_cayley_series():
    s = growth_series(identity(3), 10)
    assert s.states == [1] * 10 and s.classification["label"] == "bounded"
    assert not lower_bound_check(s, lambda m: m)
    c = growth_series(inverse(get("CM_Z2")), 6)
    assert c.states == [2 ** m for m in range(1, 7)]


def test_h_series():
    s = growth_series(get("H_H4"), 8)
    assert s.states == [2 ** m for m in range(1, 9)]
    assert lower_bound_check(s, lambda m: 2 ** m)


def test_csv_format():
    text = growth_series(get("B_WITNESS"), 3).to_csv()
    lines = text.splitlines()
    assert lines[0] == "m,states,sync_level,bisync_level,coredist_raw"
    assert lines[1].startswith("1,2,1,")
    assert len(lines) == 4


def test_cap_truncates():
    s = growth_series(get("H_H4"), 10, cap=100)
    assert s.truncated and len(s.records) < 10


def test_determinism():
    a = growth_series(get("M_NOTCONJ"), 6)
    b = growth_series(get("M_NOTCONJ"), 6)
    assert a.records == b.records and a.to_csv() == b.to_csv()


@pytest.mark.parametrize("name", ["B_WITNESS", "G_H3"])
def test_linear_sync(name):
    r = sync_level_linear_check(get(name), 8)
    assert r.holds and r.slope >= 1 and r.levels == tuple(range(1, 9))


def test_linear_sync_precondition():
    with pytest.raises(PreconditionUnmet):
        sync_level_linear_check(get("ORD3_C"), 4)


@pytest.mark.parametrize("a,h", [("M_NOTCONJ", "EX1_C"), ("B_WITNESS", "ORD2_B2"), ("G_H3", "G_H3")])
def test_conjugate_growth_within_factor(a, h):
    A, H = get(a), get(h)
    B = conjugate(A, H)
    sa = growth_series(A, 7).states
    sb = growth_series(B, 7).states
    f = H.size ** 2
    assert all(y <= f * x and x <= f * y for x, y in zip(sa, sb))


@pytest.mark.parametrize("name", ["G_H3", "B_WITNESS", "H_H4", "M_NOTCONJ", "EX1_C", "ORD2_B2", "COMBINED_H5"])
def test_classification_stable_under_powers(name):
    A = get(name)
    base = growth_series(A, 8).classification["label"]
    for t in (2, 3):
        assert growth_series(min_core_power(A, t), 6).classification["label"] == base


def test_classify_labels():
    assert classify([1, 2, 4, 8, 16, 32])["label"] == "at_least_exponential"
    assert classify([1, 4, 9, 16, 25, 36, 49, 64])["label"] == "polynomial_fit"
    assert classify([3, 5])["label"] == "too-short"
