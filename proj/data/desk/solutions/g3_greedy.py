import sys
xs = list(map(int, sys.stdin.read().split()))
n = xs[0]
coins = sorted(xs[1:1 + n], reverse=True)
amount = xs[1 + n]
count = 0
for c in coins:
    count += amount // c
    amount %= c
print(count if amount == 0 else -1)
