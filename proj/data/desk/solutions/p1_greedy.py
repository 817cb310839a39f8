import sys
xs = list(map(int, sys.stdin.read().split()))
n, cap = xs[0], xs[1]
items = [(xs[2 + 2 * i], xs[3 + 2 * i]) for i in range(n)]
items.sort(key=lambda t: (-t[1] / t[0], t[0]))
total = 0
for w, v in items:
    if w <= cap:
        cap -= w
        total += v
print(total)
