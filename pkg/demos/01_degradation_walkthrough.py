#!/usr/bin/env python3
"""Walk through the index-set degradation process step by step.

The process moves a set of bit-channel indices through one level per index
bit (MSB first). Wherever only one member of a level pair is occupied, the
occupied index drops to the pair member whose current bit is 0; full pairs
stay put. Every destination ends up covered by its source, the map is a
bijection, and the same bookkeeping predicts exactly which bit channels go
dark when coded symbols are dropped.
"""
import json

from polarpunct import covers, propagate, punctured_bit_channels

print("=" * 64)
print("Degradation chain for the set {2, 3, 4, 7} at n = 3")
print("=" * 64)
pmap = propagate({2, 3, 4, 7}, 3)
for level, values in enumerate(pmap.levels):
    print(f"  level {level}: {list(values)}")
print("pairing:", ", ".join(f"{s} -> {d}" for s, d in pmap.pairs))
for s, d in pmap.pairs:
    assert covers(s, d, 3), "every destination must be covered by its source"
print("covering check passed for every pair")

print()
print("=" * 64)
print("Puncture propagation: drop coded symbols at positions {0, 4, 2, 6}")
print("=" * 64)
dark = punctured_bit_channels({0, 4, 2, 6}, 3)
print("bit channels rendered useless:", sorted(dark))

print()
print("Full JSON dump of the map (what the `propagate` CLI emits):")
print(json.dumps(pmap.to_json_dict(), indent=2))
