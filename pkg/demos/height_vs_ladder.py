"""Compare tree height with the ladder index.

Half-graphs contain ladders of every length up to their size, so the tree
height is expected to grow with them. Grids and random cubic graphs have a
small ladder index, and their trees stay shallow. Graphs without a side
declaration are measured on their doubled bipartite graph.
"""

from sparsebranch import build_sparse_rep, double
from sparsebranch.generators import grid, halfgraph, random_regular
from sparsebranch.oracle import ladder_index

print(f"{'graph':<24}{'ladder':>8}{'height':>8}")
for name, g in [
    *((f"half-graph {t}", halfgraph(t)) for t in range(1, 6)),
    ("grid 6x6", grid(6, 6)),
    ("grid 10x10", grid(10, 10)),
    ("cubic, 30 vertices", random_regular(30, 3, seed=0)),
]:
    bg = g.to_bipartite() if g.sides is not None else double(g)[0]
    height = build_sparse_rep(bg).height
    print(f"{name:<24}{ladder_index(bg, cap=6):>8}{height:>8}")
