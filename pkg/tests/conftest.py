import random

from addcomb import IntSet


def random_intset(rng: random.Random, max_size: int, lo: int, hi: int) -> IntSet:
    size = rng.randint(1, max_size)
    return IntSet(rng.sample(range(lo, hi + 1), min(size, hi - lo + 1)))
