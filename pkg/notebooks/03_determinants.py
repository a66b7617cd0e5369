"""
Non-vanishing of the approximant determinants
=============================================

Delta_n is the determinant of the P row and the Q rows.  It should be a
nonzero constant whenever the hypotheses hold.
"""

# %%
from lauricella_pade import Instance, instance_I1, instance_I2
from lauricella_pade.determinant import certify_range, check_hypotheses

# %% Hypothesis table for I1.  The literal coprimality with b is informational only.
for c in check_hypotheses(instance_I1(), 10).checks:
    print(f"{c.name:20s} {'ok ' if c.passed else 'no '} operative={c.operative}  {c.witness}")

# %%
for inst, n_max in ((instance_I1(), 15), (instance_I2(), 10)):
    bundle = certify_range(inst, n_max)
    print(inst.m, "roots: all certified =", bundle.all_certified)
    print("  Delta_n:", [str(r.delta_scalar) for r in bundle.reports[:5]], "...")

# %% Delta_n and det M_n differ by a simple explicit factor.
print(all(r.relation_holds for r in certify_range(instance_I2(), 6).reports))

# %% Break the second hypothesis: det M_n collapses and nothing gets certified.
bad = Instance.from_roots([0, 1], [-2, "1/2"])
for r in certify_range(bad, 4).reports:
    print(r.n, r.det_Mn, r.certified, r.notes)
