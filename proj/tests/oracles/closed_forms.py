#!/usr/bin/env python3
"""Independent high-precision evaluation of the exploration-length, optimal-m
and confidence-radius closed forms on a fixed pseudo-random grid.

Writes tests/data/closed_forms.csv, which the C++ tests read. Regenerate with
    python3 tests/oracles/closed_forms.py > tests/data/closed_forms.csv
"""
import random

from mpmath import mp, mpf, log, sqrt, ceil

mp.dps = 50
rng = random.Random(20240917)

print("T,delta,agents,c,eta,m,explore_unrounded,explore_len,m_star,rad")
for _ in range(100):
    T = mpf(int(10 ** rng.uniform(0.5, 7.0)) + 2)
    delta = mpf(rng.choice([1, 2, 5, 10, 20, 36, 56, 130])) * mpf(rng.uniform(0.5, 2.0))
    agents = rng.randint(1, 6)
    c = rng.choice([1, agents])
    eta = mpf(10 ** rng.uniform(0.0, 4.0))
    m = rng.randint(1, 20000)
    third = mpf(1) / 3
    explore = delta ** (2 * third) * T ** (2 * third) * mpf(agents) ** (2 * third) \
        * log(T) ** third / (2 * eta ** (2 * third))
    explore_len = max(1, int(ceil(explore)))
    m_star = (T * delta * c / (2 * eta) * sqrt(log(T) / 2)) ** (2 * third)
    rad = sqrt(log(T) / (2 * m))
    row = [T, delta, agents, c, eta, m, explore, explore_len, m_star, rad]
    print(",".join(mp.nstr(v, 25) if isinstance(v, mpf) else str(v) for v in row))
