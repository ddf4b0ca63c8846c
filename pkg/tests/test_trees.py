"""Stable trees: construction, cuts, signatures, surgeries, enumeration.

The independent oracles here work on the raw vertex/edge descriptions via
plain reachability, never through the canonical bitmask representation.
"""

from __future__ import annotations

import math
from itertools import combinations

import pytest

from stablecurves import (
    InvariantError,
    LabelSet,
    PartitionSetSignature,
    TwoPartition,
    compatible,
    contract_edge,
    edge_cut,
    enumerate_curve_trees,
    enumerate_distinguished,
    enumerate_stable_two_partitions,
    enumerate_trees,
    exceptional_vertex,
    forget_and_stabilize,
    make_tree,
    n_set,
    pi_of_tree,
    signature,
    tree_from_signature,
    tree_violations,
    unlabeled_type_key,
)


# ---------------------------------------------------------------- oracles


def cuts_by_reachability(vertex_tails, edges):
    """All edge cuts of a raw description, as frozenset pairs of labels."""
    nv = len(vertex_tails)
    cuts = set()
    for skip in edges:
        side = set()
        stack = [skip[1]]
        seen = {skip[0], skip[1]}
        while stack:
            v = stack.pop()
            side.update(vertex_tails[v])
            for a, b in edges:
                if (a, b) == tuple(skip):
                    continue
                for x, y in ((a, b), (b, a)):
                    if x == v and y not in seen:
                        seen.add(y)
                        stack.append(y)
        rest = set()
        for v in range(nv):
            rest.update(vertex_tails[v])
        rest -= side
        cuts.add(frozenset((frozenset(side), frozenset(rest))))
    return cuts


def forget_by_cut_restriction(t, q):
    """Forget oracle: restrict every cut to the kept labels, rebuild."""
    dropped = set(q)
    keep = [x for x in t.label_set.labels if x not in dropped]
    new_s = LabelSet.of(keep)
    cuts = set()
    for p in signature(t).partitions:
        a = [x for x in p.part_a if x not in dropped]
        b = [x for x in p.part_b if x not in dropped]
        if len(a) >= 2 and len(b) >= 2:
            cuts.add(TwoPartition.of(new_s, b))
    return tree_from_signature(cuts, new_s)


def rooted_trivalent_count(k):
    """(2k - 3)!! rooted trivalent trees on k tails."""
    return math.prod(range(1, 2 * k - 2, 2))


def as_pair(sigma):
    return frozenset((frozenset(sigma.part_a), frozenset(sigma.part_b)))


# ------------------------------------------------------------ make_tree


def test_make_tree_star():
    s = LabelSet.numbered(5)
    t = make_tree([[1, 2, 3, 4, 5]], [], s)
    assert t.n_vertices == 1
    assert t.codimension == 0
    assert t.tails_at(0) == (1, 2, 3, 4, 5)


def test_make_tree_divisor_graph():
    s = LabelSet.numbered(5)
    t = make_tree([[1, 2], [3, 4, 5]], [(0, 1)], s)
    assert t.codimension == 1
    assert set(t.tails_at(0)) == {1, 2}
    assert set(t.tails_at(1)) == {3, 4, 5}


def test_make_tree_is_canonical_under_relabeling_of_vertices():
    s = LabelSet.numbered(6)
    a = make_tree([[1, 2], [3, 4], [5, 6]], [(0, 1), (1, 2)], s)
    b = make_tree([[5, 6], [3, 4], [1, 2]], [(2, 1), (1, 0)], s)
    assert a == b


def test_make_tree_rejects_unstable_vertex():
    s = LabelSet.numbered(5)
    with pytest.raises(InvariantError, match="unstable vertex"):
        make_tree([[1], [2, 3, 4, 5]], [(0, 1)], s)


def test_make_tree_rejects_bad_label_coverage():
    s = LabelSet.numbered(5)
    with pytest.raises(InvariantError, match="missing label"):
        make_tree([[1, 2, 3, 4]], [], s)
    with pytest.raises(InvariantError, match="more than once"):
        make_tree([[1, 2, 3], [3, 4, 5]], [(0, 1)], s)
    with pytest.raises(InvariantError, match="unknown label"):
        make_tree([[1, 2, 3, 4, 5, 9]], [], s)


def test_make_tree_rejects_non_trees():
    s = LabelSet.numbered(6)
    with pytest.raises(InvariantError, match="not a tree"):
        make_tree([[1, 2], [3, 4], [5, 6]], [(0, 1)], s)
    with pytest.raises(InvariantError, match="disconnected"):
        make_tree(
            [[1, 2, 3], [4], [5], [6]],
            [(1, 2), (2, 3), (3, 1)],
            s,
        )
    with pytest.raises(InvariantError, match="duplicate edge"):
        make_tree([[1, 2], [3, 4, 5, 6]], [(0, 1), (1, 0)], s)
    with pytest.raises(InvariantError, match="self-loop"):
        make_tree([[1, 2], [3, 4, 5, 6]], [(0, 0)], s)
    with pytest.raises(InvariantError, match="missing vertex"):
        make_tree([[1, 2], [3, 4, 5, 6]], [(0, 7)], s)


def test_tree_violations_lists_everything_at_once():
    s = LabelSet.numbered(5)
    problems = tree_violations([[1], [2, 3, 4]], [(0, 1)], s)
    text = "; ".join(problems)
    assert "unstable vertex 0" in text
    assert "missing label 5" in text


# ------------------------------------------------------ cuts, signature


def test_edge_cut_two_vertex_graph():
    s = LabelSet.numbered(5)
    t = make_tree([[1, 2], [3, 4, 5]], [(0, 1)], s)
    cut = edge_cut(t, t.edges[0])
    assert as_pair(cut) == frozenset((frozenset({1, 2}), frozenset({3, 4, 5})))


def test_edge_cut_chain_both_edges():
    s = LabelSet.numbered(6)
    t = make_tree([[1, 2, 3], [4], [5, 6]], [(0, 1), (1, 2)], s)
    cuts = [edge_cut(t, e) for e in t.edges]
    sizes = sorted(tuple(sorted(c.sizes)) for c in cuts)
    assert sizes == [(2, 4), (3, 3)]
    assert cuts[0] != cuts[1]
    assert compatible(cuts[0], cuts[1])


def test_edge_cut_unknown_edge():
    s = LabelSet.numbered(5)
    t = make_tree([[1, 2], [3, 4, 5]], [(0, 1)], s)
    with pytest.raises(InvariantError, match="unknown edge"):
        edge_cut(t, (0, 2))


def test_signature_matches_reachability_oracle():
    s = LabelSet.numbered(7)
    descriptions = [
        ([[1, 2, 3], [4], [5], [6, 7]], [(0, 1), (1, 2), (2, 3)]),
        ([[1, 2], [3], [4, 5], [6, 7]], [(0, 1), (1, 2), (1, 3)]),
        ([[1, 2, 3, 4], [5, 6, 7]], [(0, 1)]),
    ]
    for tails, edges in descriptions:
        t = make_tree(tails, edges, s)
        got = {as_pair(p) for p in signature(t).partitions}
        assert got == cuts_by_reachability(tails, edges)


def test_signature_star_is_empty():
    s = LabelSet.numbered(4)
    t = make_tree([[1, 2, 3, 4]], [], s)
    assert signature(t).partitions == ()


def test_signature_size_equals_codimension():
    s = LabelSet.numbered(6)
    for codim in range(4):
        for t in enumerate_trees(s, codim):
            assert len(signature(t).partitions) == codim


# ------------------------------------------------- signature -> tree


def test_tree_from_signature_chain():
    s = LabelSet.numbered(6)
    sig = [TwoPartition.of(s, [4, 5, 6]), TwoPartition.of(s, [5, 6])]
    t = tree_from_signature(sig, s)
    assert t.n_vertices == 3
    middle = [v for v in range(3) if len(t.tails_at(v)) == 1]
    assert [t.tails_at(v) for v in middle] == [(4,)]


def test_tree_from_signature_empty_is_star():
    s = LabelSet.numbered(5)
    t = tree_from_signature([], s)
    assert t.n_vertices == 1
    assert t.codimension == 0


def test_tree_from_signature_rejects_crossing():
    s = LabelSet.numbered(6)
    sig = [TwoPartition.of(s, [2, 3]), TwoPartition.of(s, [3, 4])]
    with pytest.raises(InvariantError, match="incompatible set"):
        tree_from_signature(sig, s)


def test_tree_from_signature_rejects_duplicates():
    s = LabelSet.numbered(6)
    sigma = TwoPartition.of(s, [2, 3])
    with pytest.raises(InvariantError, match="distinct"):
        tree_from_signature([sigma, sigma], s)


def test_signature_roundtrip_all_trees_small():
    for n in (4, 5, 6):
        s = LabelSet.numbered(n)
        for codim in range(0, n - 2):
            for t in enumerate_trees(s, codim):
                sig = signature(t)
                assert tree_from_signature(sig) == t
                assert PartitionSetSignature.of(s, sig.partitions) == sig


# ------------------------------------------------------------ contract


def test_contract_single_edge_gives_star():
    s = LabelSet.numbered(5)
    t = make_tree([[1, 2], [3, 4, 5]], [(0, 1)], s)
    star = contract_edge(t, t.edges[0])
    assert star.n_vertices == 1


def test_contract_removes_exactly_that_cut():
    s = LabelSet.numbered(6)
    for t in enumerate_trees(s, 3):
        full = set(signature(t).partitions)
        for e in t.edges:
            cut = edge_cut(t, e)
            smaller = contract_edge(t, e)
            assert set(signature(smaller).partitions) == full - {cut}


def test_contract_chain_merges_middle():
    s = LabelSet.numbered(6)
    t = make_tree([[1, 2], [3, 4], [5, 6]], [(0, 1), (1, 2)], s)
    e = [e for e in t.edges if 0 in e][0]
    merged = contract_edge(t, e)
    assert merged.n_vertices == 2
    tails = {frozenset(merged.tails_at(v)) for v in range(2)}
    assert frozenset({1, 2, 3, 4}) in tails or frozenset({1, 2, 5, 6}) in tails


# -------------------------------------------------------------- forget


def test_forget_drops_middle_tails_and_smooths():
    s = LabelSet.numbered(6)
    t = make_tree([[1, 2], [3, 4], [5, 6]], [(0, 1), (1, 2)], s)
    got = forget_and_stabilize(t, [3, 4])
    expect = make_tree([[1, 2], [5, 6]], [(0, 1)], LabelSet.of([1, 2, 5, 6]))
    assert got == expect


def test_forget_migrates_last_tail():
    s = LabelSet.numbered(5)
    t = make_tree([[1, 2], [3, 4, 5]], [(0, 1)], s)
    got = forget_and_stabilize(t, [1])
    assert got.n_vertices == 1
    assert got.tails_at(0) == (2, 3, 4, 5)


def test_forget_nothing_is_identity():
    s = LabelSet.numbered(6)
    for t in enumerate_trees(s, 2):
        assert forget_and_stabilize(t, []) == t


def test_forget_rejects_too_small_remainder():
    s = LabelSet.numbered(5)
    t = make_tree([[1, 2], [3, 4, 5]], [(0, 1)], s)
    with pytest.raises(InvariantError, match="too small"):
        forget_and_stabilize(t, [1, 2, 3])


def test_forget_matches_cut_restriction_oracle():
    for n in (5, 6):
        s = LabelSet.numbered(n)
        for codim in range(0, n - 2):
            for t in enumerate_trees(s, codim):
                for q in s.labels:
                    assert forget_and_stabilize(t, [q]) == forget_by_cut_restriction(t, [q])


def test_forget_order_independent_on_pairs():
    s = LabelSet.numbered(6)
    for t in enumerate_trees(s, 2):
        for q1, q2 in combinations(s.labels, 2):
            joint = forget_and_stabilize(t, [q1, q2])
            assert joint == forget_and_stabilize(forget_and_stabilize(t, [q1]), [q2])
            assert joint == forget_and_stabilize(forget_and_stabilize(t, [q2]), [q1])


# --------------------------------------------- curve trees and classes


def test_exceptional_vertex_examples():
    s = LabelSet.numbered(6)
    chain = make_tree([[1, 2, 3], [4], [5, 6]], [(0, 1), (1, 2)], s)
    v0 = exceptional_vertex(chain)
    assert set(chain.tails_at(v0)) == {1, 2, 3}
    balanced = make_tree([[1, 2], [3, 4], [5, 6]], [(0, 1), (1, 2)], s)
    v0 = exceptional_vertex(balanced)
    assert len(balanced.tails_at(v0)) == 2
    star4 = make_tree([[1, 2, 3, 4]], [], LabelSet.numbered(4))
    assert exceptional_vertex(star4) == 0


def test_exceptional_vertex_rejects_wrong_codimension():
    s = LabelSet.numbered(5)
    star = make_tree([[1, 2, 3, 4, 5]], [], s)
    with pytest.raises(InvariantError, match="not a curve tree"):
        exceptional_vertex(star)


def test_pi_of_tree_examples():
    s = LabelSet.of(["a", "b", "c", "d", "e", "f"])
    chain = make_tree([["a", "b", "c"], ["d"], ["e", "f"]], [(0, 1), (1, 2)], s)
    pi = pi_of_tree(chain)
    assert pi.blocks == (("a",), ("b",), ("c",), ("d", "e", "f"))
    s6 = LabelSet.numbered(6)
    balanced = make_tree([[1, 2], [3, 4], [5, 6]], [(0, 1), (1, 2)], s6)
    assert pi_of_tree(balanced).shape == (2, 2, 1, 1)


def test_pi_blocks_read_off_disassembly():
    s = LabelSet.numbered(7)
    t = make_tree([[1, 2], [3], [4, 5], [6, 7]], [(0, 1), (1, 2), (1, 3)], s)
    pi = pi_of_tree(t)
    assert pi.blocks == ((1, 2), (3,), (4, 5), (6, 7))


def test_curve_tree_counts_frozen():
    assert len(enumerate_curve_trees(LabelSet.numbered(4))) == 1
    assert len(enumerate_curve_trees(LabelSet.numbered(5))) == 10
    assert len(enumerate_curve_trees(LabelSet.numbered(6))) == 105
    assert len(enumerate_curve_trees(LabelSet.numbered(7))) == 1260


def test_curve_trees_have_one_quadrivalent_vertex():
    s = LabelSet.numbered(6)
    for t in enumerate_curve_trees(s):
        v0 = exceptional_vertex(t)
        degrees = [0] * t.n_vertices
        for i, j in t.edges:
            degrees[i] += 1
            degrees[j] += 1
        for v in range(t.n_vertices):
            flags = degrees[v] + len(t.tails_at(v))
            assert flags == (4 if v == v0 else 3)


def test_class_sizes_match_double_factorial_product():
    for n in (5, 6, 7):
        s = LabelSet.numbered(n)
        per_class: dict = {}
        for t in enumerate_curve_trees(s):
            pi = pi_of_tree(t)
            per_class[pi] = per_class.get(pi, 0) + 1
        assert set(per_class) == set(enumerate_distinguished(s))
        for pi, count in per_class.items():
            expect = math.prod(
                rooted_trivalent_count(len(b)) for b in pi.blocks if len(b) >= 2
            )
            assert count == expect


def test_v0_incident_cuts_are_the_n_set():
    s = LabelSet.numbered(6)
    for t in enumerate_curve_trees(s):
        v0 = exceptional_vertex(t)
        incident = {edge_cut(t, e) for e in t.edges if v0 in e}
        assert incident == set(n_set(pi_of_tree(t)))


# ------------------------------------------------------- enumeration


def test_enumerate_trees_codim_zero_is_star():
    s = LabelSet.numbered(6)
    out = enumerate_trees(s, 0)
    assert len(out) == 1
    assert out[0].n_vertices == 1


def test_enumerate_trees_codim_one_matches_divisors():
    s = LabelSet.numbered(6)
    out = enumerate_trees(s, 1)
    assert len(out) == len(enumerate_stable_two_partitions(s))


def test_enumerate_trees_n5_codim2_frozen():
    s = LabelSet.numbered(5)
    out = enumerate_trees(s, 2)
    assert len(out) == 15
    sigmas = enumerate_stable_two_partitions(s)
    brute = sum(1 for x, y in combinations(sigmas, 2) if compatible(x, y))
    assert brute == 15


def test_enumerate_trees_rejects_out_of_range():
    s = LabelSet.numbered(5)
    with pytest.raises(InvariantError, match="codimension"):
        enumerate_trees(s, 3)
    with pytest.raises(InvariantError, match="codimension"):
        enumerate_trees(s, -1)


def test_curve_trees_equal_generic_enumerator_at_curve_codim():
    for n in (5, 6, 7):
        s = LabelSet.numbered(n)
        assert set(enumerate_trees(s, n - 4)) == set(enumerate_curve_trees(s))


def test_maximal_codimension_is_trivalent():
    s = LabelSet.numbered(6)
    for t in enumerate_trees(s, 3):
        degrees = [0] * t.n_vertices
        for i, j in t.edges:
            degrees[i] += 1
            degrees[j] += 1
        assert all(
            degrees[v] + len(t.tails_at(v)) == 3 for v in range(t.n_vertices)
        )


# ----------------------------------------------------------- type keys


def test_type_key_counts_small_n():
    for n, expected in [(4, 1), (5, 1), (6, 2), (7, 4)]:
        keys = {unlabeled_type_key(t) for t in enumerate_curve_trees(LabelSet.numbered(n))}
        assert len(keys) == expected


def test_type_key_invariant_under_relabeling():
    s = LabelSet.numbered(7)
    t = make_tree([[1, 2, 3], [4], [5], [6, 7]], [(0, 1), (1, 2), (2, 3)], s)
    relabeled = make_tree([[7, 5, 3], [1], [2], [4, 6]], [(0, 1), (1, 2), (2, 3)], s)
    assert unlabeled_type_key(t) == unlabeled_type_key(relabeled)


def test_type_key_distinguishes_the_two_n6_types():
    s = LabelSet.numbered(6)
    chain = make_tree([[1, 2, 3], [4], [5, 6]], [(0, 1), (1, 2)], s)
    balanced = make_tree([[1, 2], [3, 4], [5, 6]], [(0, 1), (1, 2)], s)
    assert unlabeled_type_key(chain) != unlabeled_type_key(balanced)


def test_type_key_uses_centroid_for_non_curve_trees():
    s = LabelSet.numbered(8)
    # A symmetric chain with a bicentroid: both encodings must agree.
    t = make_tree([[1, 2], [3, 4], [5, 6], [7, 8]], [(0, 1), (1, 2), (2, 3)], s)
    key = unlabeled_type_key(t)
    relabeled = make_tree([[7, 8], [5, 6], [3, 4], [1, 2]], [(0, 1), (1, 2), (2, 3)], s)
    assert key == unlabeled_type_key(relabeled)
