"""Maximum-cardinality bipartite matching (Hopcroft-Karp)."""
from __future__ import annotations

from collections import deque
from typing import Sequence

_INF = float("inf")


def hopcroft_karp(adj: Sequence[Sequence[int]], n_right: int) -> int:
    """Size of a maximum matching.

    ``adj[a]`` lists the right-side vertices (``0..n_right-1``) adjacent to
    left vertex ``a``. Runs in O(E sqrt(V)): each phase finds a maximal set
    of vertex-disjoint shortest augmenting paths.
    """
    n_left = len(adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    size = 0
    while True:
        # layer the left side by alternating-path distance from free vertices
        dist = [_INF] * n_left
        queue = deque()
        for a in range(n_left):
            if match_l[a] < 0:
                dist[a] = 0
                queue.append(a)
        reachable_free = False
        while queue:
            a = queue.popleft()
            for b in adj[a]:
                nxt = match_r[b]
                if nxt < 0:
                    reachable_free = True
                elif dist[nxt] == _INF:
                    dist[nxt] = dist[a] + 1
                    queue.append(nxt)
        if not reachable_free:
            return size
        pos = [0] * n_left
        for root in range(n_left):
            if match_l[root] >= 0:
                continue
            # iterative DFS along the layered graph
            stack = [root]
            while stack:
                a = stack[-1]
                if pos[a] == len(adj[a]):
                    dist[a] = _INF
                    stack.pop()
                    continue
                b = adj[a][pos[a]]
                pos[a] += 1
                nxt = match_r[b]
                if nxt < 0:
                    # augment along the stack
                    for x in reversed(stack):
                        prev = match_l[x]
                        match_l[x] = b
                        match_r[b] = x
                        b = prev
                    size += 1
                    break
                if dist[nxt] == dist[a] + 1:
                    stack.append(nxt)
