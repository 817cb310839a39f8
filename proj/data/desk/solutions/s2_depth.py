import sys
s = sys.stdin.readline().strip()
depth = 0
ok = True
for c in s:
    depth += 1 if c in '([{' else -1
    if depth < 0:
        ok = False
        break
print('YES' if ok and depth == 0 else 'NO')
