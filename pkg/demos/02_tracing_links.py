# %% [markdown]
# # Tracing links of plane curves
#
# For f: C^2 -> C the link is the intersection of V_f with a small sphere
# |z| = eps.  It is a union of closed curves in S^3.  We find points on it by
# Newton's method from random starts and follow each curve with a
# predictor-corrector tracer until it closes up.
#
# For the Brieskorn polynomial z1^p + z2^q the link is a torus link with
# gcd(p, q) components, which is what we should recover.

# %%
from math import gcd

import numpy as np

from mixedgsv import enumerate_components, parse

for p, q in [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4)]:
    f = parse(f"z1^{p} + z2^{q}")
    for eps in (0.5, 0.25):
        loops = enumerate_components(f, eps)
        sizes = [len(L) for L in loops]
        print(f"z1^{p} + z2^{q}  eps={eps:<5} components={len(loops)} "
              f"(gcd {gcd(p, q)})  points per loop={sizes}")

# %% [markdown]
# ## What a traced loop carries
#
# Every sample satisfies f = 0 and |z| = eps to Newton accuracy.  The
# diagnostics record the step, the smallest Jacobian margin met along the
# way (how far the 3x4 system was from losing rank) and the random start.

# %%
f = parse("z1^2 + z2^3")
loop = enumerate_components(f, 0.5)[0]
print(loop.diagnostics)
radii = np.linalg.norm(loop.points, axis=1)
print("radius spread :", radii.min(), radii.max())
print("closed        :", loop.closed, " orientation sign:", loop.orientation_sign)

# %% [markdown]
# Along the trefoil arg(z1) makes three full turns and arg(z2) makes two,
# the signature of the (2, 3) torus knot.

# %%
def turns(w):
    inc = np.angle(np.roll(w, -1) / w)
    return round(inc.sum() / (2 * np.pi))


print("turns of z1:", turns(loop.points[:, 0]), " turns of z2:", turns(loop.points[:, 1]))
