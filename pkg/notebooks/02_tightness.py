"""
The factor 2 is nearly attained
===============================

A square ``I`` of side ``4 - 2 delta``, a long hexagon ``K`` and the strip
``J = K(1) & K(-1)`` give modules ``M = C(I) + C(J)`` and ``N = C(K)``
that are 1-interleaved while their Hausdorff distance is ``2 - delta``.
On the grid every length is multiplied by ``scale``.

Run with ``python notebooks/02_tightness.py``.
"""

from fractions import Fraction

from pmod import diag_extent, hausdorff, oracle_module_distance
from pmod.constructions import tightness_instance, tightness_polygons
from pmod.intervals import is_flow_intersection_closed

# %% exact vertices before rasterization
square, hexagon = tightness_polygons(Fraction(1, 2))
print("square :", [tuple(map(str, v)) for v in square])
print("hexagon:", [tuple(map(str, v)) for v in hexagon])

# %% distances in grid units and in continuous units
for num, den, scale in [(1, 1, 2), (1, 1, 4), (1, 2, 4), (1, 2, 8), (1, 4, 8)]:
    T = tightness_instance(num, den, scale)
    h, d = hausdorff(T.M, T.N), oracle_module_distance(T.M, T.N)
    print(
        f"delta={str(T.delta):4s} scale={scale}: d_H={h:2d} d_I={d} ratio={h / d:.3f} "
        f"(2 - delta = {float(2 - T.delta):.3f}); extent of K {diag_extent(T.K)}"
    )

# %% the three supports are closed under shifted intersections, so the bound applies
T = tightness_instance(1, 2, 4)
print("closed:", bool(is_flow_intersection_closed([T.I, T.J, T.K])), "| I and J disjoint:", T.I.isdisjoint(T.J))

# %% larger delta breaks convexity of the hexagon
try:
    tightness_instance(3, 2, 4)
except ValueError as exc:
    print("delta = 3/2:", exc)
