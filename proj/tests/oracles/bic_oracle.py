#!/usr/bin/env python3
"""Independent oracle for the spherical-Gaussian BIC/AIC scores.

Dataset: two tight 2-d triangles, three points each:
  A: (0,0), (1,0), (0,1)      B: (10,10), (11,10), (10,11)

k = 1: one cluster of 6,  SSE_1 = 2724/9 (scatter about the global mean).
k = 2: the A|B split,     SSE_2 = 8/3 (each triangle contributes 4/3).

Prints log-likelihood / penalty / score for both variants and the AIC
penalty, to be frozen into test_info.cpp.
"""
import math

N = 6
D = 2

points = [(0, 0), (1, 0), (0, 1), (10, 10), (11, 10), (10, 11)]
mean = tuple(sum(p[j] for p in points) / N for j in range(D))
sse1 = sum((p[0] - mean[0]) ** 2 + (p[1] - mean[1]) ** 2 for p in points)
sse2 = 8.0 / 3.0
assert abs(sse1 - 2724.0 / 9.0) < 1e-12

cases = {1: (sse1, [6]), 2: (sse2, [3, 3])}


def original(sse, counts, k):
    size_terms = sum(r * math.log(r) for r in counts)
    sigma2 = sse / (N - k)
    return (-(N / 2) * math.log(2 * math.pi) - (N * D / 2) * math.log(sigma2)
            - (N - k * k) / 2 + size_terms - N * math.log(N))


def fixed(sse, counts, k):
    size_terms = sum(r * math.log(r) for r in counts)
    sigma2 = sse / (D * (N - k))
    return (size_terms - N * math.log(N)
            - (N * D / 2) * math.log(2 * math.pi * sigma2) - D * (N - k) / 2)


for k, (sse, counts) in cases.items():
    p = (k - 1) + D * k + 1
    bic_penalty = (p / 2) * math.log(N)
    ll_orig = original(sse, counts, k)
    ll_fixed = fixed(sse, counts, k)
    print(f"k={k} sse={sse:.15g}")
    print(f"  p={p} bic_penalty={bic_penalty:.15g} aic_penalty={p}")
    print(f"  original: ll={ll_orig:.15g} bic={ll_orig - bic_penalty:.15g}")
    print(f"  fixed:    ll={ll_fixed:.15g} bic={ll_fixed - bic_penalty:.15g}"
          f" aic={ll_fixed - p:.15g}")
