import sys
xs = list(map(int, sys.stdin.read().split()))[1:]
print(max(xs))
