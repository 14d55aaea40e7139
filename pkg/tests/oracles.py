"""Naive scalar reference implementations used as independent oracles.

Everything here works on plain Python lists with math-module scalars and
direct formula transcriptions (x ** p, explicit loops). Nothing imports
the package's kernels, so agreement is meaningful.
"""

import math


def cosine_matrix(gen, ref):
    """Per-pair dot product over norms, scalar loops."""
    out = []
    for row_g in gen:
        row = []
        for row_r in ref:
            dot = sum(a * b for a, b in zip(row_g, row_r))
            ng = math.sqrt(sum(a * a for a in row_g))
            nr = math.sqrt(sum(b * b for b in row_r))
            row.append(dot / (ng * nr))
        out.append(row)
    return out


def max_pr(m):
    n_rows = len(m)
    n_cols = len(m[0])
    precision = sum(max(row) for row in m) / n_rows
    recall = sum(max(m[i][j] for i in range(n_rows)) for j in range(n_cols)) / n_cols
    return precision, recall


def _transform(value, policy):
    if policy == "abs":
        return abs(value)
    if policy == "clamp":
        return max(value, 0.0)
    assert policy == "error"
    if value < 0.0:
        raise ValueError("negative similarity under error policy")
    return value


def _power_mean(values, p):
    return (sum(v**p for v in values) / len(values)) ** (1.0 / p)


def pnorm_pr(m, p, policy="abs"):
    n_rows = len(m)
    n_cols = len(m[0])
    transformed = [[_transform(v, policy) for v in row] for row in m]
    precision = sum(_power_mean(row, p) for row in transformed) / n_rows
    recall = (
        sum(
            _power_mean([transformed[i][j] for i in range(n_rows)], p)
            for j in range(n_cols)
        )
        / n_cols
    )
    return precision, recall


def interpolated_pr(m, lam, p, policy="abs"):
    pm, rm = max_pr(m)
    pp, rp = pnorm_pr(m, p, policy)
    return lam * pm + (1 - lam) * pp, lam * rm + (1 - lam) * rp


def f1(precision, recall):
    """Harmonic mean, or None when undefined (precision + recall <= 0)."""
    if precision + recall <= 0:
        return None
    return 2 * precision * recall / (precision + recall)


def pearson(xs, ys):
    """Textbook sum-based formula."""
    n = len(xs)
    sx = sum(xs)
    sy = sum(ys)
    sxy = sum(x * y for x, y in zip(xs, ys))
    sxx = sum(x * x for x in xs)
    syy = sum(y * y for y in ys)
    num = n * sxy - sx * sy
    den = math.sqrt((n * sxx - sx * sx) * (n * syy - sy * sy))
    return num / den


def ranks(values):
    """Average ranks by enumerating sorted positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    out = [0.0] * len(values)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        mean_rank = sum(range(i + 1, j + 2)) / (j - i + 1)
        for k in range(i, j + 1):
            out[order[k]] = mean_rank
        i = j + 1
    return out


def spearman(xs, ys):
    return pearson(ranks(xs), ranks(ys))


def spearman_shortcut(xs, ys):
    """1 - 6 sum(d^2) / (n (n^2 - 1)); valid only without ties."""
    rx = ranks(xs)
    ry = ranks(ys)
    n = len(xs)
    d2 = sum((a - b) ** 2 for a, b in zip(rx, ry))
    return 1 - 6 * d2 / (n * (n * n - 1))


def dft(frame):
    """Direct O(N^2) discrete Fourier transform, first N//2+1 bins."""
    n = len(frame)
    bins = []
    for k in range(n // 2 + 1):
        re = sum(frame[t] * math.cos(-2 * math.pi * k * t / n) for t in range(n))
        im = sum(frame[t] * math.sin(-2 * math.pi * k * t / n) for t in range(n))
        bins.append(complex(re, im))
    return bins
