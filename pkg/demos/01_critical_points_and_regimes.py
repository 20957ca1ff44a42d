# coding: utf-8

# # Critical points and energy bands
#
# The configuration space of the double spherical pendulum is S^2 x S^2.
# Gravity only sees the two heights, so the potential is a weighted sum
# of z1 and z2 and has exactly four critical points: both bobs at a pole.

# In[1]:

from pendulum_topology import PendulumParams, classify_energy, critical_points, expected_topology
from pendulum_topology.mechanics import band_levels, search_critical_points

params = PendulumParams()          # unit masses, lengths and gravity
print(params, "slope k =", params.k)


# The four poles, their potential values and Morse indices.  The index
# counts the directions in which the potential goes down.

# In[2]:

for cp in critical_points(params):
    print(f"{cp.label}  z = {cp.z}  V = {cp.potential_value:+.1f}  index {cp.morse_index}"
          f"  hessian {cp.hessian_eigenvalues}")


# A blind numerical search from random starting points finds nothing else.

# In[3]:

found, stray = search_critical_points(params, n_seeds=50)
print(sorted(found), "stray:", len(stray))


# Between consecutive critical values the energy surface keeps its
# topology.  Each band gets a tag, and each tag a known manifold.

# In[4]:

for tag, h in band_levels(params).items():
    r = classify_energy(params, h)
    t = expected_topology(r)
    print(f"h = {h:+.2f}  {r.tag}  ({r.lower}, {r.upper})  {t.name:28s} betti {t.betti}")


# When k = 1 the two middle critical values coincide and the middle band
# disappears.  Asking for a regime then raises.

# In[5]:

flat = PendulumParams(l2=2.0)
print("k =", flat.k, "degenerate:", flat.degenerate)
try:
    classify_energy(flat, 0.0)
except Exception as e:
    print(type(e).__name__, e)
