"""Counts of C_k, Q_k and P_k up to X for k = 2 with a crude density readout."""

from twistsha import check_curve, density_scan

E = check_curve(1, 1)
for rep in density_scan(E, 2, [10**4, 10**5, 10**6]):
    print(f"X = {rep.x:>8}  C_2 = {rep.count_Ck:>6}  Q_2 = {rep.count_Qk:>5}  P_2 = {rep.count_Pk:>5}"
          f"  P/Q = {rep.count_Pk / rep.count_Qk:.3f}")
