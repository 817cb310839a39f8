import sys
from collections import deque
it = iter(sys.stdin.read().split())
n, m = int(next(it)), int(next(it))
adj = [[] for _ in range(n + 1)]
for _ in range(m):
    u, v, w = int(next(it)), int(next(it)), int(next(it))
    adj[u].append(v)
dist = [-1] * (n + 1)
dist[1] = 0
dq = deque([1])
while dq:
    u = dq.popleft()
    for v in adj[u]:
        if dist[v] < 0:
            dist[v] = dist[u] + 1
            dq.append(v)
print(dist[n])
