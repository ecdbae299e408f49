"""Exact and truncated index pairings for the quotient projections."""
from fractions import Fraction

from qtwistor.projections import PROJECTIONS, named_projection, numeric_pairing, pairing_table

if __name__ == "__main__":
    table = pairing_table()
    print(f"{'':6s}{'mu0':>6s}{'mu1':>6s}   mu1 at q = 1/4, 1/2, 3/4 (cutoff 60)")
    for name in PROJECTIONS:
        row = table[name]
        nums = [numeric_pairing(named_projection(name), "mu1", Fraction(q), 60) for q in ("1/4", "1/2", "3/4")]
        print(f"{name:6s}{row['mu0'].value:>6d}{row['mu1'].value:>6d}   " + ", ".join(f"{x:+.12f}" for x in nums))
    print("mu1 summand for P2:", dict(table["P2"]["mu1"].summand))
