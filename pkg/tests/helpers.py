"""Independent reference implementations used only by the tests."""

import itertools
import math


def naive_chain(l, n, offsets):
    """Adjacency sets of a chain, grown polygon by polygon with plain dicts.

    Mirrors the documented layout (local vertex 0 receives each bridge; the
    bridge out of polygon 1 leaves from its vertex 0) without sharing code with
    the library.
    """
    adj = {}

    def link(u, v):
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)

    for i in range(n):
        ring = [i * l + j for j in range(l)]
        for j in range(l):
            link(ring[j], ring[(j + 1) % l])
    if n >= 2:
        link(0, l)
    for j, d in enumerate(offsets):
        prev = (j + 1) * l
        link(prev + d, (j + 2) * l)
    return adj


def naive_edges(adj):
    return sorted({(min(u, v), max(u, v)) for u in adj for v in adj[u]})


def naive_census(adj):
    c = {4: 0, 5: 0, 6: 0}
    for u, v in naive_edges(adj):
        c[len(adj[u]) + len(adj[v])] += 1
    return (c[4], c[5], c[6])


def naive_sombor(adj, a):
    return math.fsum(math.sqrt((len(adj[u]) - a) ** 2 + (len(adj[v]) - a) ** 2) for u, v in naive_edges(adj))


def all_sequences(k, m):
    return itertools.product(range(1, k + 1), repeat=m)


def brute_moments(l, n, probs, a_of):
    """Mean, variance and pmf over all sequences with the naive builder.

    ``a_of(adj)`` returns the shift for a given graph.
    """
    k = l // 2
    atoms = {}
    mean = var_acc = 0.0
    rows = []
    for seq in all_sequences(k, max(n - 2, 0)):
        w = math.prod(probs[t - 1] for t in seq)
        adj = naive_chain(l, n, seq)
        v = naive_sombor(adj, a_of(adj))
        rows.append((v, w))
    mean = math.fsum(v * w for v, w in rows)
    var_acc = math.fsum(w * (v - mean) ** 2 for v, w in rows)
    for v, w in rows:
        key = round(v, 8)
        atoms[key] = atoms.get(key, 0.0) + w
    return mean, var_acc, {k: p for k, p in atoms.items() if p > 0}


def avg_degree(adj):
    return sum(len(s) for s in adj.values()) / len(adj)
