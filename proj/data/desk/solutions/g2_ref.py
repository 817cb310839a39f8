import sys, bisect
xs = list(map(int, sys.stdin.read().split()))[1:]
tails = []
for x in xs:
    i = bisect.bisect_left(tails, x)
    if i == len(tails):
        tails.append(x)
    else:
        tails[i] = x
print(len(tails))
