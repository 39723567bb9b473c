"""
Hausdorff against bottleneck
============================

The Hausdorff distance lets several bars share a partner; the bottleneck
distance needs a partial matching. Both are computed by scanning eps and
deciding feasibility, the bottleneck one with a max-flow in which bars that
die within eps may route through a slack node.

Run with ``python notebooks/03_distances.py``.
"""

from pmod import Barcode, bottleneck, check_hausdorff_le_bottleneck, hausdorff, make_rect, verify_stability
from pmod.constructions import random_rect_barcode
from pmod.distances import correspondence, matching, pairwise_distance_matrix

# %% multiplicity is invisible to Hausdorff
L = make_rect((0, 0), (8, 8))
M, N = Barcode([L, L]), Barcode([L])
print("d_H =", hausdorff(M, N), " d_B =", bottleneck(M, N))
print("correspondence:", correspondence(M, N))
print("matching      :", matching(M, N))

# %% the d_H <= d_B sanity bound on a few random barcodes
for seed in range(5):
    A = random_rect_barcode(3, (-6, 6), 5, seed)
    B = random_rect_barcode(3, (-6, 6), 5, seed + 100)
    print(seed, check_hausdorff_le_bottleneck(A, B))

# %% the stability check on a random pair
A = random_rect_barcode(2, (-6, 6), 5, 7)
B = random_rect_barcode(2, (-6, 6), 5, 8)
print(verify_stability(A, B))

# %% a distance matrix (PMOD_THREADS caps the worker count)
bars = [random_rect_barcode(2, (-5, 5), 4, s) for s in range(5)]
print(pairwise_distance_matrix(bars))
print(pairwise_distance_matrix(bars, "bottleneck"))
