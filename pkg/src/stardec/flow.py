"""Small max-flow engine with residual-cut extraction.

Dinic's algorithm (BFS levels + blocking DFS).  Instances in this package are
tiny (a few hundred nodes, capacities bounded by vertex degrees), and every
caller needs the residual min cut as an explicit certificate, so there is no
reason for anything fancier.
"""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_arc(self, u: int, v: int, cap: int) -> int:
        """Directed arc with a zero-capacity reverse arc; returns the arc index."""
        i = len(self.to)
        self.head[u].append(i)
        self.to.append(v)
        self.cap.append(cap)
        self.head[v].append(i + 1)
        self.to.append(u)
        self.cap.append(0)
        return i

    def add_undirected(self, u: int, v: int, cap: int) -> int:
        """Arc pair with capacity in both directions (for undirected edges)."""
        i = len(self.to)
        self.head[u].append(i)
        self.to.append(v)
        self.cap.append(cap)
        self.head[v].append(i + 1)
        self.to.append(u)
        self.cap.append(cap)
        return i

    def flow_on(self, arc: int, original_cap: int) -> int:
        return original_cap - self.cap[arc]

    def max_flow(self, s: int, t: int, cutoff: int | None = None) -> int:
        """Max flow from s to t; stops early once the flow reaches cutoff."""
        to, cap, head = self.to, self.cap, self.head
        total = 0
        while True:
            if cutoff is not None and total >= cutoff:
                return total
            level = [-1] * self.n
            level[s] = 0
            q = deque([s])
            while q:
                u = q.popleft()
                for i in head[u]:
                    v = to[i]
                    if cap[i] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        q.append(v)
            if level[t] < 0:
                return total
            it = [0] * self.n

            def dfs(u: int, pushed: int) -> int:
                if u == t:
                    return pushed
                while it[u] < len(head[u]):
                    i = head[u][it[u]]
                    v = to[i]
                    if cap[i] > 0 and level[v] == level[u] + 1:
                        got = dfs(v, min(pushed, cap[i]))
                        if got:
                            cap[i] -= got
                            cap[i ^ 1] += got
                            return got
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 60)
                if not pushed:
                    break
                total += pushed
                if cutoff is not None and total >= cutoff:
                    return total

    def residual_reachable(self, s: int) -> set[int]:
        """Nodes reachable from s along positive residual capacity (the source
        side of a minimum cut once max_flow has run to completion)."""
        seen = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for i in self.head[u]:
                v = self.to[i]
                if self.cap[i] > 0 and v not in seen:
                    seen.add(v)
                    q.append(v)
        return seen
