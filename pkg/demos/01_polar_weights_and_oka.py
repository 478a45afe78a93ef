# %% [markdown]
# # Polar weights and Oka dependence
#
# A mixed polynomial is a polynomial in z and conj(z).  When its support is
# balanced in the right way it is *polar weighted homogeneous*: there are
# radial weights p and angular weights q under which every monomial scales
# the same way.  The two C*-directions of that action give two vector fields
# that are tangent to the zero set V_f.
#
# This script walks through the three-variable example
# f = -z1*conj(z1)^4 + z2^4 + z3^4.

# %%
import numpy as np

from mixedgsv import (angular_field, evaluate, format_poly, infer_weights, nabla_g, nabla_h,
                      oka_alpha, parse, radial_field, verify_polar)
from mixedgsv.frames import c_margin, four_way_dependence, r_margin
from mixedgsv.expr_io import format_field
from mixedgsv.mixed_poly import wirtinger_dz, wirtinger_dzbar

f = parse("-z1*conj(z1)^4 + z2^4 + z3^4")
print("f           =", format_poly(f))
print("df/dz1      =", format_poly(wirtinger_dz(f, 1)))
print("df/dconj z1 =", format_poly(wirtinger_dzbar(f, 1)))

# %% [markdown]
# ## Inferring the weights
#
# The weights solve two small linear systems over the integers, one for the
# radial degrees mu + nu and one for the angular degrees mu - nu.

# %%
w = infer_weights(f)
print("radial  p =", w.p, " degree a =", w.a)
print("angular q =", w.q, " degree c =", w.c)
print("check on 100 random points:", verify_polar(f, w, trials=100))
print("radial field :", format_field(radial_field(w)))
print("angular field:", format_field(angular_field(w)))

# %% [markdown]
# ## A point where the gradients line up
#
# On the real point z1 = 128/225, z2 = z3 = sqrt(131072/759375) the gradient
# of g = Re f is a complex multiple of the angular field but not of the radial
# one.  The normalized smallest singular value of the pair makes that visible.

# %%
x = 128 / 225
y = np.sqrt(131072 / 759375)
z = np.array([x, y, y], dtype=complex)
print("|f(z)|                      =", abs(evaluate(f, z)))
ng = nabla_g(f, z)
print("margin(grad g, angular)     =", c_margin(ng, angular_field(w)(z)))
print("margin(grad g, radial)      =", c_margin(ng, radial_field(w)(z)))

# %% [markdown]
# ## Oka's criterion
#
# grad g and grad h are dependent over R exactly when conj(df) is a unit
# multiple alpha of the conjugate derivative.  For a holomorphic polynomial
# the conjugate derivative vanishes, so the gradients are always
# independent while the four complex-dependence conditions all hold.

# %%
rng = np.random.default_rng(0)
for text in ["z1*conj(z1)", "z1^2 + z2^3", "z1^2*conj(z1) + z2^3"]:
    g = parse(text)
    p = (rng.standard_normal(g.nvars) + 1j * rng.standard_normal(g.nvars)) / 2
    print(f"{text:24s} alpha={oka_alpha(g, p)!s:40s}"
          f" R-margin={r_margin(nabla_g(g, p), nabla_h(g, p)):.3f}"
          f" four-way={four_way_dependence(g, p)}")
