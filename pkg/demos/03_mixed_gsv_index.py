# %% [markdown]
# # The mixed GSV index as a winding number
#
# For a tangent vector field v on V_f (n = 2) the index is read off the link.
# Along every link component we build a unit field v_perp that is
# Hermitian-orthogonal to v and frame homotopic to it: the normal frame
# (grad g, grad h) is rotated onto (v, i v) and a vector starting at v is
# carried along by projecting out the moving frame.  The unitary frame
# (v_perp, v) then has a determinant in the unit circle, and its winding
# number is the contribution of that component.
#
# For holomorphic weighted-homogeneous curves the radial field has index
# 1 - mu, where mu is the Milnor number.

# %%
from mixedgsv import infer_weights, mixed_gsv_index, parse, radial_field
from mixedgsv.polar import milnor_number_oracle

print(f"{'f':24s} {'windings':>14s} {'total':>6s} {'1-mu':>5s} {'parity':>7s}")
for text in ["z1", "z1^2 + z2^2", "z1^2 + z2^3", "z1^2 + z2^5", "z1^3 + z2^4"]:
    f = parse(text, nvars=2)
    w = infer_weights(f)
    rep = mixed_gsv_index(f, radial_field(w))
    print(f"{text:24s} {str(rep.component_windings):>14s} {rep.total:>6d} "
          f"{1 - milnor_number_oracle(w):>5d} {rep.parity:>7d}")

# %% [markdown]
# ## Cross-checks carried by every report
#
# * ``direct_windings``: for holomorphic f, v_perp is a unit multiple of
#   grad g, so the winding of det(grad g, v) must agree.
# * ``independence_ok``: a rerun with twice as many t-steps and a
#   cosine-clustered schedule gives the same windings.
# * ``swap_ok``: the frame (v, v_perp) gives the same winding as (v_perp, v).
# * ``parity``: the real GSV index mod 2, computed by a separate route that
#   contracts the normal frame to a fixed one; it must equal total mod 2.

# %%
f = parse("z1^2 + z2^3")
rep = mixed_gsv_index(f, radial_field(infer_weights(f)))
for key in ["direct_windings", "independence_ok", "swap_ok", "mod2_agreement"]:
    print(f"{key:16s} {getattr(rep, key)}")
print(rep.diagnostics["components"][0])

# %% [markdown]
# ## A genuinely mixed example
#
# f = z1^2 conj(z1) + z2^3 is polar weighted homogeneous but not holomorphic.
# Its radial field is tangent but not complex tangent, and the index is
# stable when the link radius is halved.

# %%
f = parse("z1^2*conj(z1) + z2^3")
v = radial_field(infer_weights(f))
for eps in (0.5, 0.25):
    rep = mixed_gsv_index(f, v, epsilon=eps)
    print(f"eps={eps}: windings={rep.component_windings} parity={rep.parity} "
          f"mod2 agreement={rep.mod2_agreement}")
