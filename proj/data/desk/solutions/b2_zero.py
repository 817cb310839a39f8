import sys
xs = list(map(int, sys.stdin.read().split()))[1:]
m = 0
for x in xs:
    if x > m:
        m = x
print(m)
