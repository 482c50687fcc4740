#!/usr/bin/env python3
"""Independent reference implementation of the project's RNG stack.

Re-implements SplitMix64, xoshiro256++, the substream derivation chain, the
53-bit uniform double and Marsaglia's polar normal from their published
definitions, then prints golden values that tests/test_rng.cpp pins. Run it
whenever the pinned numbers look suspect:

    python3 tests/oracles/rng_oracle.py
"""

import math

MASK = (1 << 64) - 1


def splitmix64(state):
    state = (state + 0x9E3779B97F4A7C15) & MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return state, (z ^ (z >> 31)) & MASK


def derive_seed(master, a, b=0):
    # Each coordinate is absorbed into the fully mixed previous output.
    _, h = splitmix64(master)
    _, h = splitmix64(h ^ a)
    _, h = splitmix64(h ^ b)
    return h


def rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK


class Xoshiro256pp:
    def __init__(self, seed):
        s = seed
        self.state = []
        for _ in range(4):
            s, word = splitmix64(s)
            self.state.append(word)
        if not any(self.state):
            self.state[0] = 1

    def next_u64(self):
        s = self.state
        result = (rotl((s[0] + s[3]) & MASK, 23) + s[0]) & MASK
        t = (s[1] << 17) & MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = rotl(s[3], 45)
        return result

    def next_double(self):
        return (self.next_u64() >> 11) * 2.0 ** -53

    def normal_pair(self):
        while True:
            u = 2.0 * self.next_double() - 1.0
            v = 2.0 * self.next_double() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                break
        f = math.sqrt(-2.0 * math.log(s) / s)
        return u * f, v * f


def main():
    for seed in (0, 1, 42):
        rng = Xoshiro256pp(seed)
        values = [rng.next_u64() for _ in range(5)]
        print(f"seed {seed}: " + ", ".join(f"{v}ull" for v in values))

    print(f"derive_seed(42, 3, 7) = {derive_seed(42, 3, 7)}ull")
    print(f"derive_seed(42, 3)    = {derive_seed(42, 3)}ull")
    print(f"derive_seed(0, 0)     = {derive_seed(0, 0)}ull")

    rng = Xoshiro256pp(42)
    doubles = [rng.next_double() for _ in range(3)]
    print("doubles(seed 42): " + ", ".join(repr(d) for d in doubles))

    rng = Xoshiro256pp(7)
    first, second = rng.normal_pair()
    print(f"normals(seed 7): {first!r}, {second!r}")


if __name__ == "__main__":
    main()
