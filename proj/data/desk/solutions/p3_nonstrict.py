import sys
from collections import Counter
xs = list(map(int, sys.stdin.read().split()))[1:]
vals = sorted(set(xs))
rank = {v: i + 1 for i, v in enumerate(vals)}
bit = [0] * (len(vals) + 1)
inv = 0
for x in reversed(xs):
    r = rank[x]
    j = r - 1
    while j > 0:
        inv += bit[j]
        j -= j & -j
    j = r
    while j <= len(vals):
        bit[j] += 1
        j += j & -j
inv += sum(c * (c - 1) // 2 for c in Counter(xs).values())
print(inv)
