"""Compare the closed-form J1 constants, as corrected and as printed, with the operator oracle."""
import itertools
import math
from collections import Counter
from fractions import Fraction

from qtwistor.fockrep import j1_monomials, j1_word, printed_C, rep_constant_C, rep_word

if __name__ == "__main__":
    q0, c, top, deg = Fraction(1, 2), 11, 5, 4
    worst = 0.0
    printed = Counter()
    ratios = set()
    for ni, mi in j1_monomials(deg):
        op = rep_word(j1_word(ni, mi), q0, c)
        for n, m, k in itertools.product(range(top + 1), repeat=3):
            rc = rep_constant_C(ni, mi, n, m, k)
            truth = 0.0 if rc.target is None else op.entry(rc.target, (n, m, k))
            worst = max(worst, abs(rc.C(q0) - truth))
            if rc.target is None:
                continue
            p = printed_C(ni, mi, n, m, k, q0)
            if math.isnan(p):
                printed["undefined"] += 1
            elif abs(p - truth) <= 1e-9:
                printed["match"] += 1
            else:
                printed["mismatch"] += 1
                ratios.add(round(p / truth, 9) if truth else None)
    print(f"corrected constants: worst error {worst:.3e}")
    print(f"printed constants: {dict(printed)}; distinct ratios on mismatches: {len(ratios)}")
