# coding: utf-8

# # How well does the constrained leapfrog hold the energy?
#
# Each step kicks, drifts, projects both bobs back to their spheres with a
# Newton solve, kicks again and removes the radial momentum.  It is
# reversible and second order, so energy errors should fall by 4 per
# halving of dt and stay bounded over long runs.

# In[1]:

import time

import numpy as np

from pendulum_topology import PendulumParams, sample_phase_point, simulate

params = PendulumParams()
x = sample_phase_point(params, 0.0, seed=42)
t = time.perf_counter()
traj, diag = simulate(params, x, 1e-3, 10_000)
print(diag, f"{time.perf_counter() - t:.1f}s")


# Halving the step.

# In[2]:

drifts = []
for dt in (4e-3, 2e-3, 1e-3, 5e-4):
    _, d = simulate(params, x, dt, int(round(10 / dt)))
    drifts.append(d.energy_drift)
    print(f"dt {dt:.0e}  drift {d.energy_drift:.2e}")
print("ratios", np.round(np.array(drifts[:-1]) / drifts[1:], 2))


# The drift depends a lot on where the run starts.  Fast swings of the
# lower bob make the error constant large.

# In[3]:

spread = []
for seed in range(10):
    _, d = simulate(params, sample_phase_point(params, 0.0, seed), 1e-3, 10_000)
    spread.append(d.energy_drift)
print("min %.1e  median %.1e  max %.1e" % (min(spread), np.median(spread), max(spread)))


# The accessible region {V <= h} confines the configuration for every
# trajectory: the potential never climbs above the energy.

# In[4]:

V = params.energy_scale * (params.k * traj.q[:, 0, 2] + traj.q[:, 1, 2])
print("max V - h =", V.max() - diag.energy)
