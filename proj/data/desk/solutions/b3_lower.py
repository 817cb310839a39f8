import sys
s = sys.stdin.read()
print(sum(1 for c in s if c in 'aeiou'))
