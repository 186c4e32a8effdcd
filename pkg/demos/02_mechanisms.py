"""Two ways to realize the same release, and what each costs in utility.

A Markov mechanism only sees X. A secret-aware one also sees S and can leave
under-represented symbols untouched, which roughly halves the distortion here.
"""

import numpy as np

from linsan import (
    distortion_optimal_mechanism,
    dtv,
    example1,
    induced_channel,
    markov_mechanism,
    tv_optimal_mechanism,
    verify_realization,
)

np.set_printoptions(precision=3, suppress=True)
j = example1()
alpha = 0.5

mk = markov_mechanism(j.p_x, alpha, j.x_alphabet)
print("Markov P_Y|X:\n", mk.rows)

tv = tv_optimal_mechanism(j, alpha)
print("\nsecret-aware mechanism, s=1 (rows are inputs a..d):\n", tv.tensor[0])
print("s=2:\n", tv.tensor[1])
print("realizes the target:", verify_realization(tv, j, alpha).passed)

# squared symbol distance: one long move costs more than two short ones
d = np.subtract.outer(np.arange(4), np.arange(4)).astype(float) ** 2
cheap = distortion_optimal_mechanism(j, alpha, d)
print("\ndistance-aware mechanism, s=1:\n", cheap.tensor[0])

for name, ch in (
    ("Markov", mk.rows),
    ("TV-optimal", induced_channel(tv, j)),
    ("distance-aware", induced_channel(cheap, j)),
):
    half, full = dtv(ch, j.p_x)
    cost = float(j.p_x @ (ch * d).sum(axis=1))
    print(f"{name:15s} D_TV half {half:.4f} full {full:.4f}  E(X-Y)^2 {cost:.4f}")
