"""Walk a small graph through sparsification and back.

A 4x4 grid is turned into a tree with membership edges. Every vertex pair is
then answered from the tree alone, and the rebuilt graph is compared with the
original.
"""

from sparsebranch import build_sparse_rep, format_sparse_rep, load_sparse_rep, reconstruct, stats
from sparsebranch.generators import grid

g = grid(4, 4)
print(f"input: 4x4 grid, {g.n} vertices, {g.num_edges} edges")

sr = build_sparse_rep(g, bipartite=True)
print(f"tree: {len(sr.nodes)} nodes, height {sr.height}, {len(sr.membership_edges())} membership edges")
for line in stats(sr).lines():
    print("  " + line)

text = format_sparse_rep(sr)
print(f"text form: {len(text.splitlines())} lines; first few:")
for line in text.splitlines()[:6]:
    print("  " + line)

back = reconstruct(load_sparse_rep(text))
print("rebuilt graph equals the input:", back.same_as(g))

# a general graph goes through the four-copy bipartization instead
small = grid(3, 3)
sr = build_sparse_rep(small)
print(f"general mode: {len(sr.left) + len(sr.right)} host vertices for {small.n} input vertices")
print("rebuilt graph equals the input:", reconstruct(sr).same_as(small))
