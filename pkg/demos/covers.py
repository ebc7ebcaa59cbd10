"""Neighbourhood covers built from one round of branching on the doubled graph."""

import numpy as np

from sparsebranch import neighborhood_cover, verify_cover
from sparsebranch.generators import grid, random_regular

for name, g in (("6x6 grid", grid(6, 6)), ("random cubic graph on 40 vertices", random_regular(40, 3, seed=1))):
    nc = neighborhood_cover(g)
    rep = verify_cover(g, nc)
    sizes = [int(np.count_nonzero(c)) for c in nc.clusters]
    print(f"{name}: {len(nc)} clusters, sizes {min(sizes)}..{max(sizes)}, overlap {nc.overlap} (bound {nc.k_star})")
    print("  every closed neighbourhood is inside a cluster:", rep.ok)
