"""
Two squares against their union
===============================

Two a x a squares touching at one corner point form the barcode of ``M``;
their union is the single bar of ``N``. A unit shift glues the squares
together, so ``M`` and ``N`` are 1-interleaved for every ``a``, yet each
square sits about ``a/2`` away from the union. The Hausdorff distance
therefore grows without bound while the interleaving distance stays at 1.

Run with ``python notebooks/01_instability.py``.
"""

from pmod import hausdorff, oracle_interleaving_exists, oracle_module_distance, pair_distance
from pmod.constructions import instability_instance
from pmod.intervals import is_flow_intersection_closed

# %% the a = 4 instance, drawn as text (I = upper-left, J = lower-right)
M, N = instability_instance(4)
I, J = M
(K,) = N
for y in range(K.hi[1], K.lo[1] - 1, -1):
    print("".join("I" if (x, y) in I and (x, y) not in J else "J" if (x, y) in J and (x, y) not in I
                  else "*" if (x, y) in I else "." for x in range(K.lo[0], K.hi[0] + 1)))

# %% the oracle finds a 1-interleaving and no 0-interleaving
ok, witness = oracle_interleaving_exists(M, N, 1)
print("1-interleaved:", ok, " f:", witness.f, " g:", witness.g)
print("0-interleaved:", oracle_interleaving_exists(M, N, 0)[0])

# %% each square alone is far from the union
print("pair distances to K:", pair_distance(I, K), pair_distance(J, K))

# %% the ratio d_H / d_I grows linearly in a
for a in (1, 2, 4, 8, 16):
    M, N = instability_instance(a)
    h, d = hausdorff(M, N), oracle_module_distance(M, N)
    print(f"a={a:2d}  d_H={h}  d_I={d}  ratio={h / d:g}")

# %% the bound d_H <= 2 d_I does not apply here: K meets its own shift in two pieces
M, N = instability_instance(4)
rep = is_flow_intersection_closed([*M, *N])
print("closed under shifted intersections:", bool(rep), "| components:", rep.n_components, "at shift", rep.shift)
