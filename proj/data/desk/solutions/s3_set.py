import sys
xs = list(map(int, sys.stdin.read().split()))
n, k = xs[0], xs[1]
s = set(xs[2:2 + n])
print(sum(1 for v in s if k - v in s and v < k - v))
