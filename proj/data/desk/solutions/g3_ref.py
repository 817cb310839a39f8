import sys
xs = list(map(int, sys.stdin.read().split()))
n = xs[0]
coins = xs[1:1 + n]
amount = xs[1 + n]
INF = 1 << 30
dp = [0] + [INF] * amount
for v in range(1, amount + 1):
    best = INF
    for c in coins:
        if c <= v and dp[v - c] + 1 < best:
            best = dp[v - c] + 1
    dp[v] = best
print(dp[amount] if dp[amount] < INF else -1)
