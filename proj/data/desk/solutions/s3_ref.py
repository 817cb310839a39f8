import sys
xs = list(map(int, sys.stdin.read().split()))
n, k = xs[0], xs[1]
seen = {}
count = 0
for x in xs[2:2 + n]:
    count += seen.get(k - x, 0)
    seen[x] = seen.get(x, 0) + 1
print(count)
