"""Maximum bipartite matching by augmenting paths (Kuhn's algorithm)."""

from __future__ import annotations

from typing import Sequence


def max_matching(n_left: int, n_right: int, adj: Sequence[Sequence[int]]) -> list[int]:
    """Return ``match_left`` where ``match_left[u]`` is the partner of ``u`` or -1.

    Neighbours are tried in the order given by ``adj``, so the result is
    deterministic.
    """
    match_left = [-1] * n_left
    match_right = [-1] * n_right

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_left[u] = v
                match_right[v] = u
                return True
        return False

    for u in range(n_left):
        augment(u, [False] * n_right)
    return match_left


def konig_cover(
    n_left: int, n_right: int, adj: Sequence[Sequence[int]], match_left: list[int]
) -> tuple[set[int], set[int]]:
    """Minimum vertex cover ``(left, right)`` from a maximum matching."""
    match_right = [-1] * n_right
    for u, v in enumerate(match_left):
        if v != -1:
            match_right[v] = u
    # alternating reachability from unmatched left vertices
    vis_l = [False] * n_left
    vis_r = [False] * n_right
    stack = [u for u in range(n_left) if match_left[u] == -1]
    for u in stack:
        vis_l[u] = True
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if vis_r[v] or match_left[u] == v:
                continue
            vis_r[v] = True
            w = match_right[v]
            if w != -1 and not vis_l[w]:
                vis_l[w] = True
                stack.append(w)
    left = {u for u in range(n_left) if not vis_l[u]}
    right = {v for v in range(n_right) if vis_r[v]}
    return left, right
