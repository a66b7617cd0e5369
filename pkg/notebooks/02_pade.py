"""
Pade-type approximants by a Rodrigues formula
=============================================
"""

# %%
from lauricella_pade import instance_I1, instance_I2
from lauricella_pade.pade import (
    build_system,
    leibniz_expand,
    remainder_closed_form,
    required_truncation,
    rodrigues_apply,
    solve_pade_linear_system,
)
from lauricella_pade.solutions import build_family

I1, I2 = instance_I1(), instance_I2()

# %% P_{n,l} for small n.  The degree grows by w+1 per step.
for n in range(4):
    print(n, rodrigues_apply(I1, n, 0))

# %% The multi-index closed form gives the same polynomials.
print(all(rodrigues_apply(I2, n, l) == leibniz_expand(I2, n, l) for n in range(7) for l in range(3)))

# %% Remainders vanish to order n+1 at infinity.
n = 6
fam = build_family(I2, required_truncation(I2, n) + 30)
sys = build_system(fam, n)
print([[str(o) for o in row] for row in sys.orders])

# %% The tail of P f - Q also has a closed form; compare the first terms.
closed = remainder_closed_form(fam, n, 0, 1, 12)
print(closed.coeffs == sys.R[0][1].coeffs[:12])

# %% A blind nullspace solve at the minimal degree finds the same P up to scale.
P, Qs, nullity = solve_pade_linear_system(fam.f, [n, n], 2 * n)
print("nullity", nullity, " proportional:", P * sys.P[0].lc() == sys.P[0] * P.lc())
