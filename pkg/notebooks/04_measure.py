"""
Heights and the linear independence measure
===========================================

Every real quantity is an exact combination c + sum c_p log p, so its sign
is decided exactly and its value enclosed in an interval.
"""

# %%
from lauricella_pade import instance_I1
from lauricella_pade.heights import INF, A_v, U_v, V_threshold, V_v, measure

I1 = instance_I1()

# %% V changes sign between 10^4 and 10^5.
for beta in (10**4, 10**5):
    V = V_v(I1, beta, INF)
    print(beta, V, float(V))

# %% The exact threshold.
t = V_threshold(I1)
print("least integer beta with V > 0:", t)

# %% A, U and the measure at beta = 10^5 with epsilon = V/2.
rep = measure(I1, 10**5, INF)
print("A =", A_v(I1, 10**5, INF), "  U =", U_v(I1, 10**5, INF))
print("mu    in", rep.mu.to_strings(12))
print("log C in", rep.log_C.to_strings(12))

# %% Far above the threshold the exponent settles near 4.
for k in (5, 8, 20, 100):
    print(f"beta = 10^{k}: mu = {float(measure(I1, 10**k, INF).mu):.5f}")
