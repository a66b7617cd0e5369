"""
Series solutions of L.f in Q[z]
===============================

Two routes to the coefficients of f_j: the recurrence read off from the
operator, and the closed finite sums.  They have to agree exactly.
"""

# %%
from lauricella_pade import instance_I1, instance_I2
from lauricella_pade.solutions import (
    apply_L,
    binomial_series_model,
    build_by_recurrence,
    build_closed_form,
    jp_expand,
)

I1, I2 = instance_I1(), instance_I2()
print("I1: a =", I1.a, "  b =", I1.b, "  s =", [str(s) for s in I1.s])
print("I2: a =", I2.a, "  b =", I2.b)

# %% The first coefficients of f_0 for I1.
rec = build_by_recurrence(I1, 12)
print([str(c) for c in rec.f[0].coeffs[:6]])

# %% Both constructions, 200 coefficients, both instances.
for inst in (I1, I2):
    same = build_by_recurrence(inst, 200).f == build_closed_form(inst, 200).f
    print(inst.m, "roots:", same)

# %% L.f_j is a monomial of degree m-j-2.
fam = build_by_recurrence(I2, 40)
for j, f in enumerate(fam.f):
    poly, tail = apply_L(I2, f)
    print(f"L.f_{j} = {poly};  tail zero: {not any(tail.coeffs)}")

# %% With b_(m-1) = -1 the solution is a plain product of binomial series.
from lauricella_pade import Instance

flat = Instance.from_roots([0, 1], ["-1/2", "-1/2"])
print(build_by_recurrence(flat, 10).f[0] == binomial_series_model(flat, 10))

# %% Differentiating m-1 times gives a Jordan-Pochhammer operator.
jp = jp_expand(I1)
for row in jp.table():
    print(row)
print("identity holds:", jp.equal)
