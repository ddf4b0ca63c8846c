"""Stable dual trees: building, fingerprinting, contracting, forgetting.

A boundary stratum is recorded as a tree whose vertices carry the labels.
Every vertex needs at least 3 flags (tails plus edge ends), and the set
of edge cuts pins the tree down completely.
"""

from __future__ import annotations

from stablecurves import (
    LabelSet,
    contract_edge,
    edge_cut,
    enumerate_trees,
    forget_and_stabilize,
    make_tree,
    signature,
    tree_from_signature,
    unlabeled_type_key,
)


def main() -> None:
    s = LabelSet.numbered(6)
    t = make_tree([[1, 2], [3], [4, 5, 6]], [(0, 1), (1, 2)], s)
    print("a chain of three components for n=6:")
    for v in range(t.n_vertices):
        print(f"  vertex {v}: tails {list(t.tails_at(v))}")
    print(f"  edges: {list(t.edges)}")
    print(f"  codimension: {t.codimension}")

    print("\nedge cuts (one stable 2-partition per edge):")
    for e in t.edges:
        print(f"  edge {e}: {edge_cut(t, e).literal()}")

    sig = signature(t)
    print(f"\nsignature: {[p.literal() for p in sig.partitions]}")
    assert tree_from_signature(sig) == t

    shorter = contract_edge(t, t.edges[0])
    print(f"after contracting {t.edges[0]}: codimension {shorter.codimension}")

    reduced = forget_and_stabilize(t, [3, 4])
    print(f"after forgetting labels 3 and 4: labels {list(reduced.label_set.labels)},"
          f" {reduced.n_vertices} vertices")

    print("\ntrees by codimension for n=5:")
    s5 = LabelSet.numbered(5)
    for codim in range(0, 3):
        trees = list(enumerate_trees(s5, codim))
        print(f"  codim {codim}: {len(trees)} trees")

    print("\nunlabeled shapes of maximal-codimension trees:")
    for n in (5, 6, 7):
        sn = LabelSet.numbered(n)
        keys = {unlabeled_type_key(t) for t in enumerate_trees(sn, n - 3)}
        print(f"  n={n}: {len(keys)} shapes")


if __name__ == "__main__":
    main()
