import itertools

import pytest
from hypothesis import assume, given

from artifact.dual import (
    Split,
    bad_pairs_graph,
    bottom_depends_only_on_top,
    decide_order,
    dual,
    dual_is_zero,
    finite_order_certificate,
    free_semigroup_condition,
    h3_order_tests,
    has_circuit,
    letter_partition,
    minimal_bad_pairs_graph,
    reduce_by_conjugation_h3,
    right_zero_check,
    sigma_family,
    splitting_length,
    verify_split,
    witness_from_loop,
)
from artifact.errors import (
    HypothesesNotMet,
    NoLoop,
    NoSplit,
    NotWellDefined,
    PreconditionUnmet,
    WrongAlphabet,
)
from artifact.registry import get
from artifact.transducer import (
    Transducer,
    equivalent,
    identity,
    inverse,
    min_core,
    min_core_power,
    minimize,
    parse_trn,
    product,
    serialize,
    sync_level,
)
from artifact.words import spectrum

from conftest import machines, registry_sync

B_DUAL1 = """alphabet: 2
states: 0 1 2
0: 0|0->1 1|0->2
1: 0|0->2 1|0->1
2: 0|1->0 1|1->0
"""

# a 3-state machine inflated to 4 states by a known order-2 conjugator
INFLATED = """alphabet: 3
states: c1.q1.c1 c1.q1.c2 c1.q2.c1 c2.q0.c1
c1.q1.c1: 0|2->c2.q0.c1 1|1->c1.q1.c1 2|0->c1.q1.c2
c1.q1.c2: 0|1->c2.q0.c1 1|2->c1.q1.c1 2|0->c1.q1.c2
c1.q2.c1: 0|2->c2.q0.c1 1|0->c1.q1.c2 2|1->c1.q1.c1
c2.q0.c1: 0|2->c2.q0.c1 1|1->c1.q2.c1 2|0->c1.q1.c2
"""


def pair(*names):
    return frozenset(names)


# ---- duals

def test_dual_b_level1():
    assert serialize(dual(get("B_WITNESS"), 1).transducer) == B_DUAL1


def test_dual_identity():
    D = dual(identity(3), 2).transducer
    for c in range(D.size):
        assert (D.delta[c] == c).all() and len(set(D.rho[c])) == 1


def test_dual_ord3_level3_minimized():
    M, _ = minimize(dual(get("ORD3_C"), 3).transducer)
    assert M.size == 3
    # a 3-cycle with constant outputs q0/q1/q2
    nxt = [int(M.delta[c, 0]) for c in range(3)]
    assert sorted(nxt) == [0, 1, 2] and all(nxt[c] != c for c in range(3))
    assert sorted(int(M.rho[c, 0]) for c in range(3)) == [0, 1, 2]
    for c in range(3):
        assert len(set(M.delta[c])) == 1 and len(set(M.rho[c])) == 1


def test_dual_zero_examples():
    assert dual_is_zero(get("ORD3_C"), 3)
    assert dual_is_zero(identity(3), 1)
    B = get("B_WITNESS")
    for m in range(1, 5):
        assert not dual_is_zero(B, m)
        assert splitting_length(B, m, 8)


def test_finite_certificate_examples():
    assert finite_order_certificate(get("ORD3_C"), 3)
    assert finite_order_certificate(identity(3), 1)
    H = get("H5_FINITE_SPLIT")
    k = sync_level(H)
    assert k == 3
    assert not finite_order_certificate(H, k) and finite_order_certificate(H, k + 1)
    assert not dual_is_zero(H, k) and dual_is_zero(H, k + 1)


@pytest.mark.parametrize("name", ["EX1_C", "B_WITNESS", "ORD2_B2", "G_H3", "M_NOTCONJ"])
def test_dual_product_identity(name):
    A = get(name)
    for k in (1, 2):
        lhs = minimize(dual(A, k + 1).transducer)[0]
        rhs = minimize(product(dual(A, k).transducer, dual(A, 1).transducer))[0]
        assert lhs.size == rhs.size and equivalent(lhs, rhs).equivalent


# ---- splits

def test_splitting_length_examples():
    s = splitting_length(get("B_WITNESS"), 1, 4)
    assert s.length == 1 and s.word == (0,) and (s.P, s.T) == (("q0",), ("q1",))
    assert verify_split(get("B_WITNESS"), s)
    none = splitting_length(get("ORD3_C"), 3, 6)
    assert not none and none.max_len == 6 and none.exhausted
    H = get("H5_FINITE_SPLIT")
    assert splitting_length(H, 3, 4).length == 1


def test_bottom_depends_examples():
    B = get("B_WITNESS")
    s = splitting_length(B, 1, 4)
    assert bottom_depends_only_on_top(B, s, 1)
    # found by exhaustive search over length-2 tuples: a valid split whose bottom depends on padding
    A = get("A4_NOCIRCUIT")
    bad = Split((0, 0, 1), ("q1", "q1"), ("q2", "q4"), 2, pair("q1", "q2"), pair())
    assert verify_split(A, bad)
    assert not bottom_depends_only_on_top(A, bad, 3)


@pytest.mark.parametrize("name,r", [("B_WITNESS", 1), ("G_H3", 1), ("A4_NOCIRCUIT", 3),
                                    ("M_NOTCONJ", 2), ("H5_FINITE_SPLIT", 3)])
def test_minimal_splits_pass_the_check(name, r):
    A = get(name)
    s = splitting_length(A, r, 8)
    assert verify_split(A, s) and bottom_depends_only_on_top(A, s, r)
    assert len(s.top) == 2 and len(s.bottom) == 2


@pytest.mark.parametrize("name,k,levels", [("B_WITNESS", 1, 3), ("G_H3", 1, 3), ("M_NOTCONJ", 2, 3),
                                           ("H_H4", 1, 3), ("A4_NOCIRCUIT", 3, 2)])
def test_splitting_length_grows(name, k, levels):
    A = get(name)
    ls = [splitting_length(A, m * k, 12).length for m in range(1, levels + 1)]
    assert all(a < b for a, b in zip(ls, ls[1:]))
    # sync level of the (l+1)-th power exceeds k
    assert sync_level(min_core_power(A, ls[0] + 1)) >= k + 1


# ---- sigma maps and graphs

def test_sigma_family_b():
    fam = sigma_family(get("B_WITNESS"), 1)
    assert fam.length == 1
    assert fam.maps == {(0,): (0, 1), (1,): (1, 0), (2,): (0, 0)}
    assert fam((0,), "q0") != fam((0,), "q1")
    with pytest.raises(NoSplit):
        sigma_family(get("ORD3_C"), 3, 6)


def test_sigma_composites_a4_are_right_zeros():
    A = get("A4_NOCIRCUIT")
    fam = sigma_family(A, 3)
    maps = list(fam.maps.values())
    images = {frozenset(range(A.size))}
    for _ in range(A.size ** 2 + 1):
        images = {frozenset(m[q] for q in S) for S in images for m in maps}
    assert all(len(S) == 1 for S in images)
    assert right_zero_check(A, 3)
    assert not right_zero_check(get("B_WITNESS"), 1)
    with pytest.raises(NoSplit):
        right_zero_check(get("ORD3_C"), 3)


def test_minimal_graph_b():
    g = minimal_bad_pairs_graph(get("B_WITNESS"), 1)
    assert g.vertices == {pair("q0", "q1")}
    assert {(e[0], e[1]) for e in g.edges} == {(pair("q0", "q1"), pair("q0", "q1"))}
    assert sorted(e[2] for e in g.edges) == [(0,), (1,)]
    c = has_circuit(g)
    assert len(c) == 1 and c[0][0] == c[0][1] == pair("q0", "q1")


def test_graphs_a4():
    A = get("A4_NOCIRCUIT")
    g = bad_pairs_graph(A, 3, 4)
    loops = {e[0] for e in g.edges if e[0] == e[1]}
    assert pair("q1", "q2") in loops
    assert {e[2] for e in g.edges if e[0] == e[1] == pair("q1", "q2")} >= {(1, 0, 1), (1, 2, 0)}
    gm = minimal_bad_pairs_graph(A, 3)
    assert has_circuit(gm) is None
    # every edge of the minimal graph is a verified split of minimal length
    for a, b, w, m in gm.edges:
        assert m == 1
    assert has_circuit(g) is not None


def test_graph_edges_are_verified_splits():
    A = get("A4_NOCIRCUIT")
    g = bad_pairs_graph(A, 3, 4)
    for a, b, w, m in g.edges:
        x, y = sorted(a, key=A.index)
        found = False
        for pad in itertools.product(A.names, repeat=m - 1):
            s = Split(w, (x,) + pad, (y,) + pad, m, a, b)
            if verify_split(A, s):
                found = True
                break
        assert found and bottom_depends_only_on_top(A, Split(w, (x,) + pad, (y,) + pad, m, a, b), 3)


def test_empty_graph_cases():
    g = bad_pairs_graph(get("ORD3_C"), 3)
    assert not g.vertices and not g.edges and has_circuit(g) is None


def test_dot_export():
    dot = minimal_bad_pairs_graph(get("B_WITNESS"), 1).to_dot()
    assert '"{q0,q1}";' in dot and '"{q0,q1}" -> "{q0,q1}" [label="0/1"];' in dot


# ---- witnesses

def test_witness_b():
    w = witness_from_loop(get("B_WITNESS"), 1)
    assert str(w.word) == "...(1).1(02)..."
    assert (w.word.left, w.word.center, w.word.right, w.word.start) == ((1,), (), (0, 2), 1)
    assert w.case == "case1:returns-to-start"
    from artifact.words import orbit_is_infinite_sample

    assert orbit_is_infinite_sample(get("B_WITNESS"), w.word, 8)


def test_witness_g():
    assert str(witness_from_loop(get("G_H3"), 1).word) == "...(1).1(0)..."


def test_witness_needs_loop():
    with pytest.raises(NoLoop):
        witness_from_loop(get("ORD3_C"), 3)


# ---- order

@pytest.mark.parametrize("name,period", [("ORD3_C", 3), ("ORD2_B2", 2), ("COMBINED_H5", 6),
                                         ("H5_FINITE_SPLIT", 24), ("BASE_B", 4), ("BPRIME", 8)])
def test_decide_order_finite(name, period):
    A = get(name)
    v = decide_order(A)
    assert v.verdict == "finite" and v.period == period and v.index == 1
    # the power sequence really repeats
    P1 = min_core_power(A, v.index)
    P2 = min_core_power(A, v.index + v.period)
    assert equivalent(P1, P2).equivalent


@pytest.mark.parametrize("name,graph", [("B_WITNESS", "minimal"), ("G_H3", "minimal"),
                                        ("A4_NOCIRCUIT", "general"), ("M_NOTCONJ", None),
                                        ("H_H4", None)])
def test_decide_order_infinite(name, graph):
    v = decide_order(get(name))
    assert v.verdict == "infinite"
    if graph:
        assert v.certificate["kind"] == "bad-pairs-circuit" and v.certificate["graph"] == graph


def test_decide_order_b_certificate():
    c = decide_order(get("B_WITNESS")).certificate
    assert c["level"] == 1 and c["circuit"][0]["from"] == ["q0", "q1"] == c["circuit"][0]["to"]


def test_decide_order_unknown_on_starved_budget():
    v = decide_order(get("G_H3"), max_power=1, max_dual_level=0)
    assert v.verdict == "unknown" and v.budgets["progress"]["powers"] == 1


def test_order_ord3_cube_identity():
    assert equivalent(min_core_power(get("ORD3_C"), 3), identity(3)).equivalent


def test_finite_certificate_soundness():
    for name, m in (("ORD3_C", 3), ("H5_FINITE_SPLIT", 4), ("ORD2_B2", 1)):
        A = get(name)
        assert finite_order_certificate(A, m)
        v = decide_order(A)
        for i in range(1, 2 * v.period + 1):
            assert sync_level(min_core_power(A, i)) <= m


# ---- free semigroups, partitions, three letters

def test_free_semigroup_condition():
    r = free_semigroup_condition(get("B_WITNESS"), 1, ["q0", "q1"])
    assert r.holds and r.rank == 2
    assert free_semigroup_condition(get("A4_NOCIRCUIT"), 3, ["q1", "q2"], max_len=4).holds
    with pytest.raises(PreconditionUnmet):
        free_semigroup_condition(get("B_WITNESS"), 1, ["q0"])


def test_letter_partitions():
    assert str(letter_partition(get("B_WITNESS"))) == "{[0,1]={q0}, [2]={q1}}"
    assert len(letter_partition(identity(3)).blocks) == 1
    for A in registry_sync(bisync=True):
        if A.size < 2:
            continue
        blocks = letter_partition(A).blocks
        assert any(len(b[0]) >= 2 for b in blocks)


def test_h3_tests():
    r = h3_order_tests(get("G_H3"))
    assert r.verdict == "InfiniteOrZeroStep"
    assert not dual_is_zero(get("G_H3"), 1)
    assert decide_order(get("G_H3")).verdict == "infinite"
    assert h3_order_tests(identity(3)).verdict == "Inconclusive"
    with pytest.raises(WrongAlphabet):
        h3_order_tests(get("H_H4"))


def test_reduce_round_trip():
    A4 = parse_trn(INFLATED)
    M = get("M_NOTCONJ")
    C0 = Transducer(3, ["c1", "c2"], [[1, 0, 0]] * 2, [[0, 1, 2], [0, 2, 1]])
    assert equivalent(min_core(product(product(C0, M), C0)), A4).equivalent
    C, B = reduce_by_conjugation_h3(A4)
    assert B.size == 3 and C.size == 2
    assert equivalent(min_core(product(C, C)), identity(3)).equivalent
    assert equivalent(min_core(product(product(C, A4), C)), B).equivalent
    assert spectrum(B, 3) == spectrum(M, 3)


@pytest.mark.parametrize("name", ["G_H3", "B_WITNESS", "M_NOTCONJ", "A4_NOCIRCUIT"])
def test_reduce_recorded_outcomes(name):
    with pytest.raises(HypothesesNotMet):
        reduce_by_conjugation_h3(get(name))


def test_reduce_identity_rejected():
    with pytest.raises(HypothesesNotMet):
        reduce_by_conjugation_h3(identity(3))


# ---- properties

@given(machines(max_states=3))
def test_circuit_never_finite(A):
    k = max(sync_level(A), 1)
    try:
        g = minimal_bad_pairs_graph(A, k)
    except (NoSplit, NotWellDefined):
        assume(False)
    assume(has_circuit(g) is not None)
    assert decide_order(A, max_power=6).verdict != "finite"


@given(machines(max_states=3))
def test_minimal_split_checks(A):
    k = max(sync_level(A), 1)
    s = splitting_length(A, k, 6)
    assume(s)
    assert verify_split(A, s)
    assert bottom_depends_only_on_top(A, s, k)
