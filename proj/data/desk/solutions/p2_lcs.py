import sys
a = sys.stdin.readline().strip()
b = sys.stdin.readline().strip()
prev = [0] * (len(b) + 1)
for i in range(1, len(a) + 1):
    cur = [0] * (len(b) + 1)
    for j in range(1, len(b) + 1):
        cur[j] = prev[j - 1] + 1 if a[i - 1] == b[j - 1] else max(prev[j], cur[j - 1])
    prev = cur
print(len(a) + len(b) - 2 * prev[-1])
