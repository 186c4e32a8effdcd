"""How much does shrinking toward the marginal buy in privacy?

A secret S (two values) and a public attribute X (four symbols) are
released as Y with P_{Y|S} = (1 - alpha) P_{X|S} + alpha P_X. We print LDP and
log-lift of the release against their first-order estimates (1 - alpha) L.
"""

import numpy as np

from linsan import example1, ldp, linear_reduce, log_lift, privacy_report

j = example1()
print("P_X|S rows:")
for s, row in zip(j.s_alphabet, j.x_given_s):
    print(f"  s={s}: {np.round(row, 3).tolist()}")
print("P_X:", np.round(j.p_x, 3).tolist())

base = privacy_report(j)
print(f"\nunreleased: LDP {base.ldp:.4f} bits, log-lift {base.log_lift:.4f} bits at x={base.loglift_argmax[0]}, s={base.loglift_argmax[1]}")

print("\nalpha   LDP    (1-a)LDP  log-lift (1-a)LL")
for a in (0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0):
    r = privacy_report(j, a)
    print(f"{a:5.2f}  {r.ldp:6.4f}  {r.ldp_first_order:6.4f}   {r.log_lift:6.4f}   {r.loglift_first_order:6.4f}")

# the estimate is an approximation: the exact values sit below it for LDP
ch = linear_reduce(j, 0.5)
print(f"\nat alpha=0.5 the worst likelihood ratio is {2 ** ldp(ch):.3f} (was 5)")
print(f"and the worst lift is {2 ** log_lift(ch, j.p_s):.4f}")
