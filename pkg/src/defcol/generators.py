"""Seeded random members of each graph class, plus exhaustive enumeration."""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Optional

from .cograph import Cotree, JOIN, UNION, eval_cotree
from .graph import Graph


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_cotree(n: int, seed=None) -> Cotree:
    """Merge shuffled leaves pairwise under random union/join nodes."""
    rng = _rng(seed)
    ids = list(range(n))
    rng.shuffle(ids)
    pool = [Cotree.leaf(v) for v in ids]
    while len(pool) > 1:
        i, j = sorted(rng.sample(range(len(pool)), 2))
        b, a = pool.pop(j), pool.pop(i)
        pool.append(Cotree(rng.choice((UNION, JOIN)), (a, b)))
    return pool[0]


def random_cograph(n: int, seed=None) -> Graph:
    return eval_cotree(random_cotree(n, seed))


def random_forest_parents(n: int, seed=None) -> list:
    """Parent array of a random rooted forest on shuffled vertex ids."""
    rng = _rng(seed)
    ids = list(range(n))
    rng.shuffle(ids)
    parent: list = [None] * n
    for k, v in enumerate(ids):
        if k and rng.random() > 0.15:
            parent[v] = ids[rng.randrange(k)]
    return parent


def comparability_graph(parent: list) -> Graph:
    edges = []
    for v in range(len(parent)):
        p = parent[v]
        while p is not None:
            edges.append((v, p))
            p = parent[p]
    return Graph.from_edges(len(parent), edges)


def random_trivially_perfect(n: int, seed=None) -> Graph:
    return comparability_graph(random_forest_parents(n, seed))


def random_chordal(n: int, k: int = 3, seed=None) -> Graph:
    """Random chordal graph of treewidth at most ``k``.

    Vertices arrive one at a time and attach to a random clique of size at
    most ``k`` inside some existing maximal clique, so the reverse arrival
    order is a perfect elimination ordering. Ids are shuffled afterwards.
    """
    rng = _rng(seed)
    cliques: list[list[int]] = []
    edges = []
    for v in range(n):
        if cliques:
            host = rng.choice(cliques)
            size = rng.randint(0, min(k, len(host)))
            nbrs = rng.sample(host, size)
        else:
            nbrs = []
        edges.extend((v, w) for w in nbrs)
        cliques.append(nbrs + [v])
    ids = list(range(n))
    rng.shuffle(ids)
    return Graph.from_edges(n, ((ids[u], ids[w]) for u, w in edges))


def random_split(n: int, seed=None, p: float = 0.5) -> Graph:
    rng = _rng(seed)
    ids = list(range(n))
    rng.shuffle(ids)
    k = rng.randint(0, n)
    K, S = ids[:k], ids[k:]
    edges = [(u, v) for u, v in itertools.combinations(K, 2)]
    edges += [(u, s) for s in S for u in K if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_graph(n: int, p: float = 0.5, seed=None) -> Graph:
    rng = _rng(seed)
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices (``2 ** C(n, 2)`` of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, (pairs[i] for i in range(len(pairs)) if mask >> i & 1))


GENERATORS = {
    "cograph": random_cograph,
    "tp": random_trivially_perfect,
    "chordal": random_chordal,
    "split": random_split,
}


def generate(graph_class: str, n: int, seed: Optional[int] = None) -> Graph:
    try:
        gen = GENERATORS[graph_class]
    except KeyError:
        raise ValueError(f"unknown graph class {graph_class!r}; choose from {sorted(GENERATORS)}") from None
    return gen(n, seed=seed)
