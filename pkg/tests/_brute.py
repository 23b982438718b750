"""Slow reference implementations that share no code with the package."""

from itertools import permutations, product


def is_associative(t):
    n = len(t)
    return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))


def iso_key(t):
    """Least relabelled table over permutations fixing the identity at 0."""
    n = len(t)
    best = None
    for rest in permutations(range(1, n)):
        p = (0,) + rest
        inv = [0] * n
        for old, new in enumerate(p):
            inv[new] = old
        cand = tuple(tuple(p[t[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
        if best is None or cand < best:
            best = cand
    return best


def monoid_classes(n):
    """Isomorphism classes of monoids on {0..n-1} with identity 0, by plain search."""
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    keys = set()
    for vals in product(range(n), repeat=len(cells)):
        t = [[j for j in range(n)]] + [[i] + [0] * (n - 1) for i in range(1, n)]
        for (i, j), v in zip(cells, vals):
            t[i][j] = v
        if is_associative(t):
            keys.add(iso_key(t))
    return keys


def set_partitions(n):
    if n == 0:
        yield ()
        return
    for p in set_partitions(n - 1):
        top = max(p, default=-1)
        for v in range(top + 2):
            yield p + (v,)


def stable(t, labels, two_sided):
    n = len(t)
    for a in range(n):
        for b in range(n):
            if labels[a] != labels[b]:
                continue
            for m in range(n):
                if labels[t[m][a]] != labels[t[m][b]]:
                    return False
                if two_sided and labels[t[a][m]] != labels[t[b][m]]:
                    return False
    return True


def closure_by_partitions(t, pairs, two_sided):
    """Finest stable partition containing ``pairs``, as a set of frozensets."""
    n = len(t)
    best = None
    for labels in set_partitions(n):
        if any(labels[a] != labels[b] for a, b in pairs):
            continue
        if not stable(t, labels, two_sided):
            continue
        count = max(labels) + 1
        if best is None or count > best[0]:
            best = (count, labels)
    labels = best[1]
    return frozenset(frozenset(x for x in range(n) if labels[x] == c) for c in set(labels))


def blocks(classes):
    return frozenset(frozenset(x for x, c in enumerate(classes) if c == k) for k in set(classes))
