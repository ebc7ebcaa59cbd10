"""Trace the elimination rounds on a short path.

Each round removes one left vertex that is closest to another in neighbourhood
distance. Right vertices with the same surviving neighbours form a class, and a
class freezes into a part once its last left neighbour is gone.
"""

from sparsebranch import BipartiteGraph, compute_partition, leader_coloring, verify_partition

# a1 - b1 - a2 - b2 - a3 - b3 with left side {0, 1, 2} and right side {3, 4, 5}
bg = BipartiteGraph.from_edges(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)])
pr = compute_partition(bg, record=True)

for st in pr.rounds:
    classes = " ".join("{" + ",".join(map(str, c.tolist())) + "}" for c in st.classes)
    frozen = "" if st.frozen is None else f", freezes {st.frozen.tolist()}"
    print(f"round {st.round}: classes {classes}; remove {st.removed} (partner {st.partner}, distance {st.k}){frozen}")

for leader, part in zip(pr.leaders, pr.parts):
    print(f"part {part.tolist()} led by left vertex {leader}")
print(f"largest distance used {pr.k_used}, overlap {pr.k_star}")
print("invariants hold:", verify_partition(bg, pr).ok)

col = leader_coloring(bg, pr)
print(f"leader colouring: {col.color} with {col.n_colors} colours (bound {col.palette_bound})")
