#!/usr/bin/env python3
"""Quasi-uniform vs worst-quality puncturing at N = 256, Q = 70.

Quasi-uniform puncturing drops the bit-reversed image of {0..69} without
looking at the code; here that renders bit channel 63 useless even though
the construction put it in the information set, so the union bound on the
block error rate jumps past 1/2. Worst-quality puncturing spends the same
70 punctures on the least reliable frozen channels and keeps every
information channel alive.
"""
from polarpunct import (
    analyze_pattern,
    compare_patterns,
    ga_reliability,
    qup_pattern,
    select_information_set,
    wqp_pattern,
)

N, K, Q = 256, 93, 70

profile = ga_reliability(8, -0.5)
spec = select_information_set(profile, K)

qup = qup_pattern(8, Q)
wqp = wqp_pattern(spec, profile, Q)

print(f"polar code N={N}, K={K}, punctured down to M={N - Q} (rate {K / (N - Q):.3f})")
print()
print("qup coded positions :", qup.coded_set[:12], "...")
print("qup punctured chans :", qup.destination_set[:12], "...")
print("wqp coded positions :", wqp.coded_set[:12], "...")
print("wqp punctured chans :", wqp.destination_set[:12], "...")
print()

rq = analyze_pattern(qup, spec, profile)
rw = analyze_pattern(wqp, spec, profile)
print(f"qup: punctured information channels {rq.punctured_info_channels}, "
      f"union bound {rq.union_bound:.4f}, quality loss {rq.quality_loss:.4f}")
print(f"wqp: punctured information channels {rw.punctured_info_channels}, "
      f"union bound {rw.union_bound:.4f}, quality loss {rw.quality_loss:.4f}")

delta = compare_patterns(rw, rq)
print()
print(f"wqp minus qup: quality loss {delta.quality_loss_delta:+.4f}, "
      f"union bound {delta.union_bound_delta:+.4f} (negative = wqp better)")
assert delta.quality_loss_delta <= 0 and delta.union_bound_delta <= 0
