# coding: utf-8

# # Torsion and what topology forbids
#
# Above the top critical value the energy surface is the unit tangent
# bundle of S^2 x S^2.  Rational homology hides a Z_4 in degree 3 that
# comes from the Euler number 4 of the base.

# In[1]:

from pendulum_topology import (
    cross_section_check,
    euler_characteristic,
    geodesic_flow_check,
    integrability_check,
    unit_tangent_integer_homology,
)
from pendulum_topology.mechanics import S2xS2, TABLE

trace = []
T1 = unit_tangent_integer_homology(S2xS2, 4, trace=trace)
print(T1)
print("\n".join(trace))


# Other Euler numbers give other torsion; e = 0 gives a product-like answer.

# In[2]:

for e in (0, 1, 2, 4, 6):
    E = unit_tangent_integer_homology(S2xS2, e)
    print(e, [E.group(k) for k in range(8)])


# Could the flow on a band be a geodesic flow?  Unit tangent bundles of
# 4-manifolds satisfy a Betti identity; the first three surfaces break it.

# In[3]:

for tag, (name, prof) in TABLE.items():
    v = geodesic_flow_check(prof, n=4)
    print(f"{tag} {name:26s} {v.verdict}  lhs {v.lhs} rhs {v.rhs}")


# A global cross section would need an infinite H_1, which none of the
# surfaces has.

# In[4]:

for tag, (name, prof) in TABLE.items():
    v = cross_section_check(prof, euler_characteristic(prof))
    print(tag, v.verdict, [c.name for c in v.conditions if c.holds is False])


# And the configuration space itself passes the Betti bounds that an
# analytically integrable geodesic flow would impose.

# In[5]:

v = integrability_check(S2xS2, 4)
print(v.verdict, list(zip(v.lhs, v.rhs)))
