"""Scramble the FX pair with random Nielsen moves and watch the trace descent undo it."""
import random
import sys

from fuchsian_doubles import fx_pair, nielsen_search
from fuchsian_doubles.stopping import MOVES, replay


def main(seed=0, length=8):
    rng = random.Random(seed)
    A, B = fx_pair()
    scramble = tuple(rng.choice(MOVES) for _ in range(length))
    C, D = replay(A, B, scramble)
    print("scramble:", " ".join(scramble))
    r = nielsen_search(C, D)
    for k, (ta, tb) in enumerate(r.trace_history):
        print(f"  step {k:2d}  |tr| = {abs(ta):10.4f} {abs(tb):10.4f}")
    print("moves:", " ".join(r.moves) or "none")
    print("case:", r.case.value, " commutator trace:", round(r.commutator_trace, 6))
    for name, ok in ((n, ok) for n, _, _, ok in r.frame.checks()):
        print(f"  {'ok ' if ok else 'BAD'} {name}")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:]))
