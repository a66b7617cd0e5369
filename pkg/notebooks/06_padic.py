"""
The same series at a 5-adic point
=================================
"""

# %%
from fractions import Fraction

from lauricella_pade import instance_I1
from lauricella_pade.evaluator import eval_padic, padic_partial_sums
from lauricella_pade.heights import Place, convergence_condition, measure
from lauricella_pade.solutions import build_family

I1 = instance_I1()
fam = build_family(I1, 200)
beta = Fraction(1, 125)

# %% Convergence needs |beta|_5 above an explicit bound.
print(convergence_condition(I1, beta, Place(5)))

# %% f_0(1/125) to 40 digits of relative precision.
x = eval_padic(fam, 0, beta, 5, 40)
print(x)

# %% Accumulating in Q_5 and reducing exact rational partial sums agree mod 5^40.
pairs = padic_partial_sums(fam, 0, beta, 5, 40, 30)
print(all(acc.agrees_with(exact) for acc, exact in pairs))

# %% V is positive once |beta|_5 is large enough.
for k in (3, 6):
    rep = measure(I1, Fraction(1, 5**k), Place(5))
    print(k, rep.V, rep.applicable)
