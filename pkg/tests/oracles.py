"""Direct-from-definition reference implementations.

Plain Python loops over lists; nothing here touches fircluster, so the
comparisons in the test suite are between independent code paths.
"""

import math
from fractions import Fraction
from itertools import combinations


def _clusters(labels):
    out = {}
    for i, l in enumerate(labels):
        out.setdefault(l, []).append(i)
    return [out[key] for key in sorted(out)]


def _mean(rows):
    m = len(rows[0])
    return [math.fsum(r[v] for r in rows) / len(rows) for v in range(m)]


def _sq(a, b):
    return math.fsum((x - y) ** 2 for x, y in zip(a, b))


def _dist(a, b):
    return math.sqrt(_sq(a, b))


def centroids(X, labels):
    return [_mean([X[i] for i in members]) for members in _clusters(labels)]


def dispersion(X, labels):
    m = len(X[0])
    out = [0.0] * m
    for members in _clusters(labels):
        z = _mean([X[i] for i in members])
        for v in range(m):
            out[v] += math.fsum((X[i][v] - z[v]) ** 2 for i in members)
    return out


def wcss(X, labels):
    total = []
    for members in _clusters(labels):
        z = _mean([X[i] for i in members])
        total.extend(_sq(X[i], z) for i in members)
    return math.fsum(total)


def silhouette(X, labels, i):
    groups = {l: [j for j in range(len(X)) if labels[j] == l] for l in set(labels)}
    own = groups[labels[i]]
    if len(own) == 1:
        return 0.0
    a = math.fsum(_dist(X[i], X[j]) for j in own if j != i) / (len(own) - 1)
    b = min(
        math.fsum(_dist(X[i], X[j]) for j in members) / len(members)
        for l, members in groups.items()
        if l != labels[i]
    )
    top = max(a, b)
    return 0.0 if top == 0 else (b - a) / top


def asw(X, labels):
    return math.fsum(silhouette(X, labels, i) for i in range(len(X))) / len(X)


def calinski_harabasz(X, labels):
    n = len(X)
    groups = _clusters(labels)
    k = len(groups)
    c = _mean(X)
    between = math.fsum(len(g) * _sq(_mean([X[i] for i in g]), c) for g in groups)
    return (between / (k - 1)) / (wcss(X, labels) / (n - k))


def davies_bouldin(X, labels):
    groups = _clusters(labels)
    Z = [_mean([X[i] for i in g]) for g in groups]
    S = [math.fsum(_dist(X[i], Z[l]) for i in g) / len(g) for l, g in enumerate(groups)]
    k = len(groups)
    worst = [max((S[l] + S[t]) / _dist(Z[l], Z[t]) for t in range(k) if t != l) for l in range(k)]
    return math.fsum(worst) / k


def ari_pair_counting(a, b):
    """ARI from explicit enumeration of all point pairs."""
    n = len(a)
    both = same_a = same_b = 0
    for i, j in combinations(range(n), 2):
        sa = a[i] == a[j]
        sb = b[i] == b[j]
        both += sa and sb
        same_a += sa
        same_b += sb
    pairs = n * (n - 1) // 2
    if pairs == 0:
        return 1.0
    expected = Fraction(same_a * same_b, pairs)
    maximum = Fraction(same_a + same_b, 2)
    if maximum == expected:
        return 1.0
    return float((both - expected) / (maximum - expected))


def kmeanspp_probabilities(points, k=2):
    """Exact probability that each point set is chosen as the k=2 seeding.

    First point uniform, second with probability proportional to squared
    distance to the first.  Returns ``{(first, second): probability}``.
    """
    n = len(points)
    out = {}
    for first in range(n):
        d = [_sq(points[first], p) for p in points]
        total = sum(d)
        for second in range(n):
            if d[second] > 0:
                out[(first, second)] = (1 / n) * d[second] / total
    return out


def pearson(x, y):
    n = len(x)
    mx = math.fsum(x) / n
    my = math.fsum(y) / n
    sxy = math.fsum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = math.fsum((a - mx) ** 2 for a in x)
    syy = math.fsum((b - my) ** 2 for b in y)
    return sxy / math.sqrt(sxx * syy)
