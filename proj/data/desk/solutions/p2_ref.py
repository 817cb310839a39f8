import sys
a = sys.stdin.readline().strip()
b = sys.stdin.readline().strip()
prev = list(range(len(b) + 1))
for i in range(1, len(a) + 1):
    cur = [i] + [0] * len(b)
    ai = a[i - 1]
    for j in range(1, len(b) + 1):
        x = prev[j] + 1
        y = cur[j - 1] + 1
        z = prev[j - 1] + (ai != b[j - 1])
        cur[j] = x if x < y and x < z else (y if y < z else z)
    prev = cur
print(prev[-1])
