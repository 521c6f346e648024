"""Writes synthetic_pollution.csv: 59 synthetic regions with Pb, Cd, Zn, S.

The values are made up. Only the sign pattern is meant to be realistic:
Cd and Zn move against Pb and S, so negating Cd and Zn makes every pairwise
correlation positive.
"""
import numpy as np

# Correlations after negating Cd and Zn (order Pb, Cd, Zn, S).
C = np.array([
    [1.00, 0.40, 0.60, 0.27],
    [0.40, 1.00, 0.48, 0.06],
    [0.60, 0.48, 1.00, 0.30],
    [0.27, 0.06, 0.30, 1.00],
])
sign = np.array([1.0, -1.0, -1.0, 1.0])
log_mean = np.array([1.2, -1.5, 3.6, 7.4])
log_sd = np.array([0.35, 0.30, 0.25, 0.15])

rng = np.random.default_rng(59)
z = rng.multivariate_normal(np.zeros(4), C, size=59)
values = np.exp(log_mean + log_sd * sign * z)

with open("synthetic_pollution.csv", "w") as f:
    f.write("region,Pb,Cd,Zn,S\n")
    for i, row in enumerate(values, start=1):
        f.write(f"R{i:02d}," + ",".join(f"{v:.3f}" for v in row) + "\n")
