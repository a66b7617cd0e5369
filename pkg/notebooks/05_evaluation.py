"""
Rigorous evaluation, growth slopes and a linear-form scan
=========================================================
"""

# %%
import mpmath

from lauricella_pade import instance_I1
from lauricella_pade.evaluator import check_estimates, eval_arch, linear_form_scan, perron_check_family
from lauricella_pade.heights import INF, measure
from lauricella_pade.solutions import build_family

I1 = instance_I1()
fam = build_family(I1, 400)

# %% f_0(10^5) as an interval, next to mpmath's closed form.
x = eval_arch(fam, 0, 10**5, 256)
print(x.to_strings(40))
with mpmath.workprec(300):
    t = mpmath.mpf(1) / 10**5
    print(mpmath.nstr(t * mpmath.sqrt(1 - t) * mpmath.hyp2f1(2, 1.5, 3, t), 40))

# %% Coefficient growth: |f_n|^(1/n) approaches max |alpha_i| = 1 from below.
print(perron_check_family(I1)[0])

# %% Growth of remainders and of the approximants at beta = 10^5.
est = check_estimates(I1, 10**5)
print(f"slope log|R|   = {est.slope_R:.4f}   (-A = {est.minus_A:.4f})")
print(f"slope log|P,Q| = {est.slope_PQ:.4f}   (U = {est.U:.4f}, with m log 4: {est.pq_coefficient:.4f})")
# The second slope sits above U: the leading coefficient of P_{n,0} grows like 4^n.

# %% Scan all integer vectors of height <= 20 against the measure bound.
rep = measure(I1, 10**5, INF)
scan = linear_form_scan(fam, 10**5, INF, H_max=20, prec=256, report=rep)
print(scan.to_dict())
print(scan.to_csv().splitlines()[:4])
