"""Reduce random words under several strategies and report rewrite statistics."""
import argparse
import random

from qtwistor.ncalg import ReductionStats, leftmost, normal_form, random_strategy, reduce_word, rightmost
from qtwistor.suites import random_word

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--words", type=int, default=2000)
    ap.add_argument("--max-len", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    bad = 0
    steps = depth = 0
    for _ in range(args.words):
        w = random_word(rng, args.max_len)
        st = ReductionStats()
        ref = reduce_word(w, leftmost, st)
        steps, depth = max(steps, st.steps), max(depth, st.max_depth)
        others = [reduce_word(w, rightmost), reduce_word(w, random_strategy(rng)), normal_form(w)]
        bad += any(o != ref for o in others)
    print(f"{args.words} words, max length {args.max_len}: {bad} disagreements")
    print(f"largest reduction: {steps} rewrite steps, depth {depth}")
