#!/usr/bin/env python3
"""Regenerates data/desk: the 12-problem toy contest, its solutions, probes,
scripted-agent books and the expected judge outcomes.

Expected outputs come from the reference functions below. Every seeded-wrong
variant has a Python model here too; its predicted passed-prefix is the index
of the first hidden test where the model disagrees with the reference.

Deterministic: same script, same bytes.
"""

import json
import os
import random
import shutil
import sys

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data", "desk")
CONTEST_ID = "desk-1"


def wrap32(x):
    x &= 0xFFFFFFFF
    return x - (1 << 32) if x >= (1 << 31) else x


# ---------------------------------------------------------------- problems
# Each problem: id, level, title, statement, gen(rng) -> list of inputs
# (samples first, then hidden), ref(input) -> output, optional wrong model.


def p_b1():
    def ref(inp):
        a, b = map(int, inp.split())
        return f"{a + b}\n"

    def wrong(inp):  # sum truncated to 32 bits
        a, b = map(int, inp.split())
        return f"{wrap32(a + b)}\n"

    def gen(rng):
        samples = ["1 2\n", "-5 7\n"]
        tests = ["3 4\n", "0 0\n", "-1000 999\n", "123456 654321\n"]
        tests.append("2000000000 1000000000\n")  # first one past int32
        while len(tests) < 18:
            a = rng.randint(-4 * 10**18, 4 * 10**18)
            b = rng.randint(-4 * 10**18, 4 * 10**18)
            tests.append(f"{a} {b}\n")
        return samples, tests

    return dict(id="b1", level="Bronze", title="Sum of Two",
                statement=(
                    "Read two integers a and b and print a + b.\n\n"
                    "Input: one line with a and b, |a|, |b| <= 4*10^18.\n"
                    "Output: the sum.\n\n"
                    "Watch the integer width: the sum does not fit in 32 bits.\n"),
                gen=gen, ref=ref, wrong=wrong)


def p_b2():
    def ref(inp):
        xs = list(map(int, inp.split()))[1:]
        return f"{max(xs)}\n"

    def wrong(inp):  # running max seeded with 0
        xs = list(map(int, inp.split()))[1:]
        m = 0
        for x in xs:
            m = max(m, x)
        return f"{m}\n"

    def gen(rng):
        samples = ["3\n1 5 2\n", "1\n7\n"]
        tests = ["4\n3 9 2 9\n", "2\n0 1\n", "5\n10 -3 4 8 1\n", "3\n-4 -2 -9\n"]
        while len(tests) < 12:
            n = rng.randint(1, 1000)
            lo = rng.choice([-10**9, -1000, 0])
            xs = [rng.randint(lo, 10**9 if lo == 0 else -1) for _ in range(n)]
            tests.append(f"{n}\n{' '.join(map(str, xs))}\n")
        return samples, tests

    return dict(id="b2", level="Bronze", title="Largest Number",
                statement=(
                    "Given n integers, print the largest one.\n\n"
                    "Input: n (1 <= n <= 1000), then n integers with absolute value at most 10^9.\n"
                    "Output: the maximum. Values may all be negative.\n"),
                gen=gen, ref=ref, wrong=wrong)


def p_b3():
    def ref(inp):
        return f"{sum(1 for c in inp if c in 'aeiouAEIOU')}\n"

    def wrong(inp):
        return f"{sum(1 for c in inp if c in 'aeiou')}\n"

    def gen(rng):
        samples = ["hello world\n", "rhythm\n"]
        tests = ["banana\n", "xyz\n", "Orange Apple\n"]
        while len(tests) < 12:
            n = rng.randint(1, 200)
            s = "".join(rng.choice("abcdeiouxyzAEIOUBCD ") for _ in range(n)).strip() or "a"
            tests.append(s + "\n")
        return samples, tests

    return dict(id="b3", level="Bronze", title="Vowel Count",
                statement=(
                    "Count the vowels (a, e, i, o, u in either case) in one line of text.\n\n"
                    "Input: a line of at most 200 letters and spaces.\n"
                    "Output: the number of vowels.\n"),
                gen=gen, ref=ref, wrong=wrong)


def p_s1():
    def parse(inp):
        it = iter(inp.split())
        n, q = int(next(it)), int(next(it))
        a = [int(next(it)) for _ in range(n)]
        qs = [(int(next(it)), int(next(it))) for _ in range(q)]
        return a, qs

    def ref(inp):
        a, qs = parse(inp)
        p = [0]
        for x in a:
            p.append(p[-1] + x)
        return "".join(f"{p[r] - p[l - 1]}\n" for l, r in qs)

    def wrong(inp):  # 32-bit prefix sums
        a, qs = parse(inp)
        p = [0]
        for x in a:
            p.append(p[-1] + x)
        return "".join(f"{wrap32(p[r] - p[l - 1])}\n" for l, r in qs)

    def case(rng, n, q, bound):
        a = [rng.randint(-bound, bound) for _ in range(n)]
        lines = [f"{n} {q}", " ".join(map(str, a))]
        for _ in range(q):
            l = rng.randint(1, n)
            r = rng.randint(l, n)
            lines.append(f"{l} {r}")
        return "\n".join(lines) + "\n"

    def gen(rng):
        samples = ["5 3\n1 2 3 4 5\n1 5\n2 3\n4 4\n", "3 1\n-1 -2 -3\n1 3\n"]
        tests = [case(rng, 10, 5, 100), case(rng, 200, 50, 10**4), case(rng, 2000, 2000, 10**5)]
        while len(tests) < 12:
            tests.append(case(rng, rng.randint(1000, 2000), 2000, 10**9))
        return samples, tests

    return dict(id="s1", level="Silver", title="Range Sums",
                statement=(
                    "Answer q range-sum queries over a fixed array using prefix sums.\n\n"
                    "Input: n q (1 <= n, q <= 2000); n integers with |a_i| <= 10^9; then q lines l r (1 <= l <= r <= n).\n"
                    "Output: one line per query, the sum a_l + ... + a_r.\n"),
                gen=gen, ref=ref, wrong=wrong)


def p_s2():
    pairs = {")": "(", "]": "[", "}": "{"}

    def ref(inp):
        stack = []
        for c in inp.strip():
            if c in "([{":
                stack.append(c)
            elif not stack or stack.pop() != pairs[c]:
                return "NO\n"
        return "YES\n" if not stack else "NO\n"

    def wrong(inp):  # one depth counter, bracket kinds ignored
        depth = 0
        for c in inp.strip():
            depth += 1 if c in "([{" else -1
            if depth < 0:
                return "NO\n"
        return "YES\n" if depth == 0 else "NO\n"

    def balanced(rng, n):
        out, stack = [], []
        while len(out) + len(stack) < n:
            if stack and rng.random() < 0.5:
                out.append({"(": ")", "[": "]", "{": "}"}[stack.pop()])
            else:
                c = rng.choice("([{")
                stack.append(c)
                out.append(c)
        while stack:
            out.append({"(": ")", "[": "]", "{": "}"}[stack.pop()])
        return "".join(out)

    def gen(rng):
        samples = ["([]{})\n", "([)]\n"]
        tests = ["()\n", "(((\n", "{[()()]}\n", "[(])\n"]
        while len(tests) < 12:
            s = balanced(rng, rng.randint(2, 5000))
            if rng.random() < 0.5:
                i = rng.randrange(len(s))
                s = s[:i] + rng.choice(")]}") + s[i + 1:]
            tests.append(s + "\n")
        return samples, tests

    return dict(id="s2", level="Silver", title="Bracket Check",
                statement=(
                    "Decide whether a string of brackets ()[]{} is balanced: every opening bracket is closed by "
                    "the matching kind, in stack order.\n\n"
                    "Input: one line, length at most 10^4.\nOutput: YES or NO.\n"),
                gen=gen, ref=ref, wrong=wrong)


def p_s3():
    def parse(inp):
        xs = list(map(int, inp.split()))
        n, k = xs[0], xs[1]
        return k, xs[2:2 + n]

    def ref(inp):
        k, a = parse(inp)
        seen, count = {}, 0
        for x in a:
            count += seen.get(k - x, 0)
            seen[x] = seen.get(x, 0) + 1
        return f"{count}\n"

    def wrong(inp):  # distinct values only
        k, a = parse(inp)
        s = set(a)
        return f"{sum(1 for v in s if k - v in s and v < k - v)}\n"

    def gen(rng):
        samples = ["4 5\n1 4 2 3\n", "3 10\n1 2 3\n"]
        tests = ["5 10\n1 9 2 8 4\n", "2 3\n1 5\n", "3 4\n2 2 2\n"]
        while len(tests) < 12:
            n = rng.randint(2, 2000)
            a = [rng.randint(-50, 50) for _ in range(n)]
            tests.append(f"{n} {rng.randint(-60, 60)}\n{' '.join(map(str, a))}\n")
        return samples, tests

    return dict(id="s3", level="Silver", title="Pair Sums",
                statement=(
                    "Count index pairs i < j with a_i + a_j = k. A hash map of seen values gives linear time.\n\n"
                    "Input: n k (2 <= n <= 2000), then n integers.\nOutput: the number of pairs.\n"),
                gen=gen, ref=ref, wrong=wrong)


def p_g1():
    import heapq

    def parse(inp):
        it = iter(inp.split())
        n, m = int(next(it)), int(next(it))
        edges = [(int(next(it)), int(next(it)), int(next(it))) for _ in range(m)]
        return n, edges

    def ref(inp):
        n, edges = parse(inp)
        adj = [[] for _ in range(n + 1)]
        for u, v, w in edges:
            adj[u].append((v, w))
        dist = [None] * (n + 1)
        pq = [(0, 1)]
        while pq:
            d, u = heapq.heappop(pq)
            if dist[u] is not None:
                continue
            dist[u] = d
            for v, w in adj[u]:
                if dist[v] is None:
                    heapq.heappush(pq, (d + w, v))
        return f"{dist[n] if dist[n] is not None else -1}\n"

    def wrong(inp):  # BFS hop count, weights ignored
        n, edges = parse(inp)
        adj = [[] for _ in range(n + 1)]
        for u, v, _ in edges:
            adj[u].append(v)
        dist = [None] * (n + 1)
        dist[1] = 0
        frontier = [1]
        while frontier:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if dist[v] is None:
                        dist[v] = dist[u] + 1
                        nxt.append(v)
            frontier = nxt
        return f"{dist[n] if dist[n] is not None else -1}\n"

    def graph(rng, n, m, wmax):
        lines = [f"{n} {m}"]
        for _ in range(m):
            lines.append(f"{rng.randint(1, n)} {rng.randint(1, n)} {rng.randint(1, wmax)}")
        return "\n".join(lines) + "\n"

    def gen(rng):
        samples = ["3 3\n1 2 1\n2 3 1\n1 3 5\n", "2 1\n2 1 4\n"]
        tests = [graph(rng, 5, 8, 1), graph(rng, 50, 200, 1), "4 2\n1 2 1\n3 4 1\n",
                 "4 4\n1 2 1\n2 3 1\n3 4 1\n1 4 10\n"]
        while len(tests) < 12:
            n = rng.randint(50, 1000)
            tests.append(graph(rng, n, rng.randint(n, 5000), 1000))
        return samples, tests

    return dict(id="g1", level="Gold", title="Cheapest Route",
                statement=(
                    "A directed graph has n nodes and m weighted edges. Find the shortest path distance from node 1 "
                    "to node n (Dijkstra's algorithm with a priority queue), or -1 when n is unreachable.\n\n"
                    "Input: n m (2 <= n <= 1000, m <= 5000), then m lines u v w with 1 <= w <= 1000.\n"
                    "Output: the distance or -1.\n"),
                gen=gen, ref=ref, wrong=wrong)


def p_g2():
    import bisect

    def ref(inp):
        xs = list(map(int, inp.split()))[1:]
        tails = []
        for x in xs:
            i = bisect.bisect_left(tails, x)
            tails[i:i + 1] = [x]
        return f"{len(tails)}\n"

    def wrong(inp):  # non-decreasing
        xs = list(map(int, inp.split()))[1:]
        tails = []
        for x in xs:
            i = bisect.bisect_right(tails, x)
            tails[i:i + 1] = [x]
        return f"{len(tails)}\n"

    def gen(rng):
        samples = ["6\n5 1 4 2 3 6\n", "3\n3 2 1\n"]
        tests = []
        for n in (5, 40, 400):
            tests.append(f"{n}\n{' '.join(map(str, rng.sample(range(1, 10**6), n)))}\n")
        tests.append("5\n1 2 2 2 3\n")
        while len(tests) < 12:
            n = rng.randint(100, 2000)
            tests.append(f"{n}\n{' '.join(str(rng.randint(1, 50)) for _ in range(n))}\n")
        return samples, tests

    return dict(id="g2", level="Gold", title="Rising Sequence",
                statement=(
                    "Find the length of the longest strictly increasing subsequence. Dynamic programming with "
                    "binary search runs in O(n log n).\n\n"
                    "Input: n (1 <= n <= 2000), then n integers.\nOutput: the length.\n"),
                gen=gen, ref=ref, wrong=wrong)


def p_g3():
    def parse(inp):
        xs = list(map(int, inp.split()))
        n = xs[0]
        return xs[1:1 + n], xs[1 + n]

    def ref(inp):
        coins, amount = parse(inp)
        inf = float("inf")
        dp = [0] + [inf] * amount
        for v in range(1, amount + 1):
            for c in coins:
                if c <= v and dp[v - c] + 1 < dp[v]:
                    dp[v] = dp[v - c] + 1
        return f"{dp[amount] if dp[amount] != inf else -1}\n"

    def wrong(inp):  # largest coin first
        coins, amount = parse(inp)
        count = 0
        for c in sorted(coins, reverse=True):
            count += amount // c
            amount %= c
        return f"{count if amount == 0 else -1}\n"

    def gen(rng):
        samples = ["3\n1 3 4\n6\n", "1\n2\n3\n"]
        tests = ["4\n1 5 10 25\n63\n", "3\n1 2 5\n11\n", "2\n5 10\n3\n", "3\n1 5 12\n16\n"]
        while len(tests) < 12:
            n = rng.randint(2, 8)
            coins = sorted(set(rng.randint(1, 200) for _ in range(n)))
            tests.append(f"{len(coins)}\n{' '.join(map(str, coins))}\n{rng.randint(1, 5000)}\n")
        return samples, tests

    return dict(id="g3", level="Gold", title="Fewest Coins",
                statement=(
                    "Given coin denominations (unlimited supply) and an amount, print the minimum number of coins "
                    "that sum to the amount, or -1. Greedy is not always optimal; use dynamic programming.\n\n"
                    "Input: n (1 <= n <= 10), n coin values (<= 1000), then the amount (<= 5000).\nOutput: the count or -1.\n"),
                gen=gen, ref=ref, wrong=wrong)


def p_p1():
    def parse(inp):
        xs = list(map(int, inp.split()))
        n, cap = xs[0], xs[1]
        items = [(xs[2 + 2 * i], xs[3 + 2 * i]) for i in range(n)]
        return cap, items

    def ref(inp):
        cap, items = parse(inp)
        dp = [0] * (cap + 1)
        for w, v in items:
            for c in range(cap, w - 1, -1):
                if dp[c - w] + v > dp[c]:
                    dp[c] = dp[c - w] + v
        return f"{dp[cap]}\n"

    def wrong(inp):  # greedy by value density
        cap, items = parse(inp)
        total = 0
        for w, v in sorted(items, key=lambda t: (-t[1] / t[0], t[0])):
            if w <= cap:
                cap -= w
                total += v
        return f"{total}\n"

    def case(rng, n, cap):
        items = [f"{rng.randint(1, 1000)} {rng.randint(1, 10**6)}" for _ in range(n)]
        return f"{n} {cap}\n" + "\n".join(items) + "\n"

    def gen(rng):
        samples = ["3 50\n10 60\n20 100\n30 120\n", "1 5\n6 10\n"]
        tests = ["2 100\n10 5\n20 7\n", "3 10\n3 3\n4 4\n5 5\n", "3 50\n10 60\n20 100\n30 120\n"]
        while len(tests) < 12:
            tests.append(case(rng, rng.randint(20, 100), rng.randint(500, 10000)))
        return samples, tests

    return dict(id="p1", level="Platinum", title="Backpack",
                statement=(
                    "0/1 knapsack: choose items with total weight at most W maximizing total value.\n\n"
                    "Input: n W (n <= 100, W <= 10^4), then n lines weight value (weight <= 1000, value <= 10^6).\n"
                    "Output: the best total value.\n"),
                gen=gen, ref=ref, wrong=wrong)


def p_p2():
    def ref(inp):
        a, b = inp.split("\n")[:2]
        prev = list(range(len(b) + 1))
        for i in range(1, len(a) + 1):
            cur = [i] + [0] * len(b)
            for j in range(1, len(b) + 1):
                cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1]))
            prev = cur
        return f"{prev[-1]}\n"

    def wrong(inp):  # insertions and deletions only
        a, b = inp.split("\n")[:2]
        prev = [0] * (len(b) + 1)
        for i in range(1, len(a) + 1):
            cur = [0] * (len(b) + 1)
            for j in range(1, len(b) + 1):
                cur[j] = prev[j - 1] + 1 if a[i - 1] == b[j - 1] else max(prev[j], cur[j - 1])
            prev = cur
        return f"{len(a) + len(b) - 2 * prev[-1]}\n"

    def word(rng, n):
        return "".join(rng.choice("acgt") for _ in range(n))

    def gen(rng):
        samples = ["kitten\nsitting\n", "abc\nabc\n"]
        tests = ["abc\nabcd\n", "hello\nhell\n", "x\nxyz\n", "flaw\nlawn\n", "abc\nxbc\n"]
        while len(tests) < 12:
            tests.append(f"{word(rng, rng.randint(1, 400))}\n{word(rng, rng.randint(1, 400))}\n")
        return samples, tests

    return dict(id="p2", level="Platinum", title="Edit Distance",
                statement=(
                    "Compute the edit distance between two strings: the minimum number of single-character "
                    "insertions, deletions and substitutions turning the first into the second.\n\n"
                    "Input: two lines, each a non-empty lowercase string of length at most 400.\nOutput: the distance.\n"),
                gen=gen, ref=ref, wrong=wrong)


def p_p3():
    def ref(inp):
        xs = list(map(int, inp.split()))[1:]
        count = 0

        # merge sort, independent of the submitted Fenwick-tree solution
        def sort(a):
            nonlocal count
            if len(a) <= 1:
                return a
            m = len(a) // 2
            left, right = sort(a[:m]), sort(a[m:])
            out, i, j = [], 0, 0
            while i < len(left) and j < len(right):
                if left[i] <= right[j]:
                    out.append(left[i])
                    i += 1
                else:
                    out.append(right[j])
                    count += len(left) - i
                    j += 1
            return out + left[i:] + right[j:]
        sort(xs)
        return f"{count}\n"

    def wrong(inp):  # counts equal pairs too
        xs = list(map(int, inp.split()))[1:]
        from collections import Counter
        dup = sum(c * (c - 1) // 2 for c in Counter(xs).values())
        return f"{int(ref(inp)) + dup}\n"

    def gen(rng):
        samples = ["5\n2 4 1 3 5\n", "3\n1 2 3\n"]
        tests = []
        for n in (6, 100, 2000):
            tests.append(f"{n}\n{' '.join(map(str, rng.sample(range(1, 10**9), n)))}\n")
        while len(tests) < 12:
            n = rng.randint(1000, 20000)
            tests.append(f"{n}\n{' '.join(str(rng.randint(1, 1000)) for _ in range(n))}\n")
        return samples, tests

    return dict(id="p3", level="Platinum", title="Inversions",
                statement=(
                    "Count pairs i < j with a_i > a_j. A Fenwick tree (binary indexed tree) over compressed "
                    "values or merge sort gives O(n log n).\n\n"
                    "Input: n (1 <= n <= 20000), then n positive integers.\nOutput: the inversion count.\n"),
                gen=gen, ref=ref, wrong=wrong)


PROBLEMS = [p_b1(), p_b2(), p_b3(), p_s1(), p_s2(), p_s3(), p_g1(), p_g2(), p_g3(), p_p1(), p_p2(), p_p3()]

# ---------------------------------------------------------------- sources

SOURCES = {
    "b1_ref.cpp": r"""#include <cstdio>
int main() {
    long long a, b;
    if (std::scanf("%lld %lld", &a, &b) != 2) return 1;
    std::printf("%lld\n", a + b);
}
""",
    "b1_ref.py": "a, b = map(int, input().split())\nprint(a + b)\n",
    "b1_int32.cpp": r"""#include <cstdio>
int main() {
    long long a, b;
    if (std::scanf("%lld %lld", &a, &b) != 2) return 1;
    int s = static_cast<int>(static_cast<unsigned>(a) + static_cast<unsigned>(b));
    std::printf("%d\n", s);
}
""",
    "b2_ref.py": "import sys\nxs = list(map(int, sys.stdin.read().split()))[1:]\nprint(max(xs))\n",
    "b2_zero.py": "import sys\nxs = list(map(int, sys.stdin.read().split()))[1:]\nm = 0\nfor x in xs:\n    if x > m:\n        m = x\nprint(m)\n",
    "b3_ref.py": "import sys\ns = sys.stdin.read()\nprint(sum(1 for c in s if c in 'aeiouAEIOU'))\n",
    "b3_lower.py": "import sys\ns = sys.stdin.read()\nprint(sum(1 for c in s if c in 'aeiou'))\n",
    "s1_ref.cpp": r"""#include <cstdio>
#include <vector>
int main() {
    int n, q;
    std::scanf("%d %d", &n, &q);
    std::vector<long long> p(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        long long x;
        std::scanf("%lld", &x);
        p[i] = p[i - 1] + x;
    }
    while (q--) {
        int l, r;
        std::scanf("%d %d", &l, &r);
        std::printf("%lld\n", p[r] - p[l - 1]);
    }
}
""",
    "s1_int32.cpp": r"""#include <cstdio>
#include <vector>
int main() {
    int n, q;
    std::scanf("%d %d", &n, &q);
    std::vector<unsigned> p(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        long long x;
        std::scanf("%lld", &x);
        p[i] = p[i - 1] + static_cast<unsigned>(x);
    }
    while (q--) {
        int l, r;
        std::scanf("%d %d", &l, &r);
        std::printf("%d\n", static_cast<int>(p[r] - p[l - 1]));
    }
}
""",
    "s2_ref.py": """import sys
s = sys.stdin.readline().strip()
match = {')': '(', ']': '[', '}': '{'}
stack = []
ok = True
for c in s:
    if c in '([{':
        stack.append(c)
    elif not stack or stack.pop() != match[c]:
        ok = False
        break
print('YES' if ok and not stack else 'NO')
""",
    "s2_depth.py": """import sys
s = sys.stdin.readline().strip()
depth = 0
ok = True
for c in s:
    depth += 1 if c in '([{' else -1
    if depth < 0:
        ok = False
        break
print('YES' if ok and depth == 0 else 'NO')
""",
    "s3_ref.py": """import sys
xs = list(map(int, sys.stdin.read().split()))
n, k = xs[0], xs[1]
seen = {}
count = 0
for x in xs[2:2 + n]:
    count += seen.get(k - x, 0)
    seen[x] = seen.get(x, 0) + 1
print(count)
""",
    "s3_set.py": """import sys
xs = list(map(int, sys.stdin.read().split()))
n, k = xs[0], xs[1]
s = set(xs[2:2 + n])
print(sum(1 for v in s if k - v in s and v < k - v))
""",
    "g1_ref.cpp": r"""#include <cstdio>
#include <functional>
#include <queue>
#include <vector>
int main() {
    int n, m;
    std::scanf("%d %d", &n, &m);
    std::vector<std::vector<std::pair<int, int>>> adj(n + 1);
    for (int i = 0; i < m; ++i) {
        int u, v, w;
        std::scanf("%d %d %d", &u, &v, &w);
        adj[u].push_back({v, w});
    }
    const long long inf = 1LL << 60;
    std::vector<long long> dist(n + 1, inf);
    std::priority_queue<std::pair<long long, int>, std::vector<std::pair<long long, int>>, std::greater<>> pq;
    dist[1] = 0;
    pq.push({0, 1});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d != dist[u]) continue;
        for (auto [v, w] : adj[u]) {
            if (d + w < dist[v]) {
                dist[v] = d + w;
                pq.push({dist[v], v});
            }
        }
    }
    std::printf("%lld\n", dist[n] == inf ? -1LL : dist[n]);
}
""",
    "g1_bfs.py": """import sys
from collections import deque
it = iter(sys.stdin.read().split())
n, m = int(next(it)), int(next(it))
adj = [[] for _ in range(n + 1)]
for _ in range(m):
    u, v, w = int(next(it)), int(next(it)), int(next(it))
    adj[u].append(v)
dist = [-1] * (n + 1)
dist[1] = 0
dq = deque([1])
while dq:
    u = dq.popleft()
    for v in adj[u]:
        if dist[v] < 0:
            dist[v] = dist[u] + 1
            dq.append(v)
print(dist[n])
""",
    "g2_ref.py": """import sys, bisect
xs = list(map(int, sys.stdin.read().split()))[1:]
tails = []
for x in xs:
    i = bisect.bisect_left(tails, x)
    if i == len(tails):
        tails.append(x)
    else:
        tails[i] = x
print(len(tails))
""",
    "g2_nondecreasing.py": """import sys, bisect
xs = list(map(int, sys.stdin.read().split()))[1:]
tails = []
for x in xs:
    i = bisect.bisect_right(tails, x)
    if i == len(tails):
        tails.append(x)
    else:
        tails[i] = x
print(len(tails))
""",
    "g3_ref.py": """import sys
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
""",
    "g3_greedy.py": """import sys
xs = list(map(int, sys.stdin.read().split()))
n = xs[0]
coins = sorted(xs[1:1 + n], reverse=True)
amount = xs[1 + n]
count = 0
for c in coins:
    count += amount // c
    amount %= c
print(count if amount == 0 else -1)
""",
    "p1_ref.cpp": r"""#include <cstdio>
#include <vector>
int main() {
    int n, cap;
    std::scanf("%d %d", &n, &cap);
    std::vector<long long> dp(cap + 1, 0);
    for (int i = 0; i < n; ++i) {
        int w;
        long long v;
        std::scanf("%d %lld", &w, &v);
        for (int c = cap; c >= w; --c) {
            if (dp[c - w] + v > dp[c]) dp[c] = dp[c - w] + v;
        }
    }
    std::printf("%lld\n", dp[cap]);
}
""",
    "p1_greedy.py": """import sys
xs = list(map(int, sys.stdin.read().split()))
n, cap = xs[0], xs[1]
items = [(xs[2 + 2 * i], xs[3 + 2 * i]) for i in range(n)]
items.sort(key=lambda t: (-t[1] / t[0], t[0]))
total = 0
for w, v in items:
    if w <= cap:
        cap -= w
        total += v
print(total)
""",
    "p2_ref.py": """import sys
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
""",
    "p2_lcs.py": """import sys
a = sys.stdin.readline().strip()
b = sys.stdin.readline().strip()
prev = [0] * (len(b) + 1)
for i in range(1, len(a) + 1):
    cur = [0] * (len(b) + 1)
    for j in range(1, len(b) + 1):
        cur[j] = prev[j - 1] + 1 if a[i - 1] == b[j - 1] else max(prev[j], cur[j - 1])
    prev = cur
print(len(a) + len(b) - 2 * prev[-1])
""",
    "p3_ref.cpp": r"""#include <algorithm>
#include <cstdio>
#include <vector>
int main() {
    int n;
    std::scanf("%d", &n);
    std::vector<long long> a(n);
    for (auto& x : a) std::scanf("%lld", &x);
    std::vector<long long> sorted = a;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> bit(sorted.size() + 1, 0);
    long long inv = 0;
    for (int i = n - 1; i >= 0; --i) {
        int r = int(std::lower_bound(sorted.begin(), sorted.end(), a[i]) - sorted.begin());
        for (int j = r; j > 0; j -= j & -j) inv += bit[j];
        for (int j = r + 1; j <= int(sorted.size()); j += j & -j) ++bit[j];
    }
    std::printf("%lld\n", inv);
}
""",
    "p3_nonstrict.py": """import sys
from collections import Counter
xs = list(map(int, sys.stdin.read().split()))[1:]
vals = sorted(set(xs))
rank = {v: i + 1 for i, v in enumerate(vals)}
bit = [0] * (len(vals) + 1)
inv = 0
for x in reversed(xs):
    r = rank[x]
    j = r - 1
    while j > 0:
        inv += bit[j]
        j -= j & -j
    j = r
    while j <= len(vals):
        bit[j] += 1
        j += j & -j
inv += sum(c * (c - 1) // 2 for c in Counter(xs).values())
print(inv)
""",
}

PROBES = {
    "sleeper.cpp": r"""#include <unistd.h>
int main() {
    for (;;) sleep(1);
}
""",
    "spinner.cpp": r"""int main() {
    volatile unsigned long x = 0;
    for (;;) x = x + 1;
}
""",
    "allocator.cpp": r"""#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>
int main() {
    std::vector<char*> blocks;
    for (int i = 0; i < 4096; ++i) {
        char* p = static_cast<char*>(std::malloc(1 << 20));
        if (!p) return 3;
        std::memset(p, 1, 1 << 20);
        blocks.push_back(p);
    }
    std::printf("%zu\n", blocks.size());
}
""",
    "broken.cpp": "int main() {\n    return 0\n}\n",
    "broken.py": "def main(:\n    print(1)\n",
    "crash.cpp": r"""#include <cstdlib>
int main() {
    std::abort();
}
""",
    "exit_nonzero.py": "import sys\nsys.exit(3)\n",
    "isolation_probe.py": r"""import os, socket
results = []
try:
    s = socket.create_connection(("1.1.1.1", 80), timeout=1)
    results.append("net:open")
except OSError:
    results.append("net:blocked")
try:
    with open("escape.txt", "w") as f:
        f.write("x")
    results.append("write:open")
except OSError:
    results.append("write:blocked")
try:
    os.listdir("/root")
    results.append("root:" + ("visible" if os.listdir("/root") else "empty"))
except OSError:
    results.append("root:blocked")
results.append("uid:%d" % os.getuid())
print(" ".join(results))
""",
}

# ---------------------------------------------------------------- books

LEVEL_TOKENS = {  # (input, output) per attempt in the main book
    "Bronze": (200_000, 40_000),
    "Silver": (400_000, 80_000),
    "Gold": (640_000, 120_000),
    "Platinum": (960_000, 180_000),
}

REF = {"b1": "b1_ref.cpp", "b2": "b2_ref.py", "b3": "b3_ref.py", "s1": "s1_ref.cpp", "s2": "s2_ref.py",
       "s3": "s3_ref.py", "g1": "g1_ref.cpp", "g2": "g2_ref.py", "g3": "g3_ref.py", "p1": "p1_ref.cpp",
       "p2": "p2_ref.py", "p3": "p3_ref.cpp"}
WRONG = {"b1": "b1_int32.cpp", "b2": "b2_zero.py", "b3": "b3_lower.py", "s1": "s1_int32.cpp",
         "s2": "s2_depth.py", "s3": "s3_set.py", "g1": "g1_bfs.py", "g2": "g2_nondecreasing.py",
         "g3": "g3_greedy.py", "p1": "p1_greedy.py", "p2": "p2_lcs.py", "p3": "p3_nonstrict.py"}
# Problems where the main book's first attempt is the seeded-wrong variant.
WRONG_FIRST = ["b1", "s1", "s2", "g3", "p1"]
HINTS = {"g1": [{"hint_level": 2, "hint_knowledge": "shortest path"}],
         "p2": [{"hint_level": 1}],
         "p3": [{"hint_level": 4, "hint_knowledge": "fenwick tree", "problem_difficulty": "Platinum"}]}


def lang(path):
    return "cpp17" if path.endswith(".cpp") else "python3"


def attempt(path, verdict, tokens):
    return {"source_file": "solutions/" + path, "language": lang(path), "expected_verdict": verdict,
            "synthetic_tokens": {"input": tokens[0], "output": tokens[1]}}


def book(problems, tokens_for, wrong_first, hints, turn_tokens):
    out = {"model_id": "gpt-5-2025-08-07", "turn_tokens": {"input": turn_tokens[0], "output": turn_tokens[1]},
           "problems": {}}
    for p in problems:
        pid = p["id"]
        t = tokens_for(p)
        attempts = []
        if pid in wrong_first:
            attempts.append(attempt(WRONG[pid], "WA", t))
        attempts.append(attempt(REF[pid], "AC", t))
        entry = {"attempts": attempts}
        if pid in hints:
            entry["hints"] = hints[pid]
        out["problems"][pid] = entry
    return out


def write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(text)


def main():
    if os.path.isdir(ROOT):
        shutil.rmtree(ROOT)
    expectations = {"contest_id": CONTEST_ID, "submissions": [], "probes": []}
    for p in PROBLEMS:
        rng = random.Random("desk-" + p["id"])
        samples, tests = p["gen"](rng)
        d = os.path.join(ROOT, "problems", p["id"])
        write(os.path.join(d, "statement.md"), f"# {p['title']}\n\n{p['statement']}")
        write(os.path.join(d, "meta"), f"title={p['title']}\nlevel={p['level']}\ntime_limit_ms=1000\nmemory_limit_mib=256\n")
        for i, inp in enumerate(samples, 1):
            write(os.path.join(d, "samples", f"{i:02d}.in"), inp)
            write(os.path.join(d, "samples", f"{i:02d}.out"), p["ref"](inp))
        outputs = [p["ref"](inp) for inp in tests]
        for i, (inp, out) in enumerate(zip(tests, outputs), 1):
            write(os.path.join(d, "tests", f"{i:02d}.in"), inp)
            write(os.path.join(d, "tests", f"{i:02d}.out"), out)
        expectations["submissions"].append({"problem": p["id"], "source": "solutions/" + REF[p["id"]],
                                            "language": lang(REF[p["id"]]), "verdict": "AC",
                                            "passed": len(tests), "total": len(tests)})
        prefix = next((i for i, inp in enumerate(tests) if p["wrong"](inp) != outputs[i]), None)
        if prefix is None:
            sys.exit(f"wrong variant of {p['id']} passes every test")
        sample_fail = any(p["wrong"](inp) != p["ref"](inp) for inp in samples)
        expectations["submissions"].append({"problem": p["id"], "source": "solutions/" + WRONG[p["id"]],
                                            "language": lang(WRONG[p["id"]]), "verdict": "WA",
                                            "passed": prefix, "total": len(tests),
                                            "fails_samples": sample_fail})
    # Python reference for b1 too, so both interpreters are covered on one problem.
    expectations["submissions"].append({"problem": "b1", "source": "solutions/b1_ref.py", "language": "python3",
                                        "verdict": "AC", "passed": 18, "total": 18})
    for name, src in SOURCES.items():
        write(os.path.join(ROOT, "solutions", name), src)
    for name, src in PROBES.items():
        write(os.path.join(ROOT, "probes", name), src)
    for name, verdict in [("sleeper.cpp", "TLE"), ("spinner.cpp", "TLE"), ("allocator.cpp", "MLE"),
                          ("broken.cpp", "CE"), ("broken.py", "CE"), ("crash.cpp", "RE"),
                          ("exit_nonzero.py", "RE")]:
        expectations["probes"].append({"problem": "b1", "source": "probes/" + name, "language": lang(name),
                                       "verdict": verdict})

    contest = {"id": CONTEST_ID, "name": "Desk Contest 1", "problems": [p["id"] for p in PROBLEMS],
               "qualification_problem": "b1"}
    write(os.path.join(ROOT, "contest.json"), json.dumps(contest, indent=2) + "\n")
    write(os.path.join(ROOT, "expectations.json"), json.dumps(expectations, indent=2) + "\n")

    main_book = book(PROBLEMS, lambda p: LEVEL_TOKENS[p["level"]], WRONG_FIRST, HINTS, (20_000, 2_000))
    write(os.path.join(ROOT, "book.json"), json.dumps(main_book, indent=2) + "\n")
    hard = [p for p in PROBLEMS if p["level"] in ("Gold", "Platinum")]
    specialist = book(hard, lambda p: (300_000, 150_000), [], {}, (20_000, 2_000))
    write(os.path.join(ROOT, "book_specialist.json"), json.dumps(specialist, indent=2) + "\n")
    swarm = book(PROBLEMS, lambda p: (100_000, 20_000), WRONG_FIRST, {}, (0, 0))
    write(os.path.join(ROOT, "book_swarm.json"), json.dumps(swarm, indent=2) + "\n")

    agents = {
        "greedy": {"kind": "GreedyEasiest", "parameters": {}, "book_path": "book.json"},
        "specialist": {"kind": "GreedyEasiest", "parameters": {}, "book_path": "book_specialist.json"},
        "cautious": {"kind": "GreedyEasiest", "parameters": {"test_before_submit": True}, "book_path": "book.json"},
        "quitter": {"kind": "TerminateNow", "parameters": {}},
        "random": {"kind": "RandomWalk", "parameters": {"seed": 7}, "book_path": "book.json"},
        "speedy": {"kind": "SpeedySpendthrift", "parameters": {"workers": 8}, "book_path": "book_swarm.json"},
        "frugal": {"kind": "FrugalPerfectionist", "parameters": {"workers": 1}, "book_path": "book_swarm.json"},
        "costaware": {"kind": "CostAwareStrategist", "parameters": {"workers": 4, "reserve_fraction": 0.25},
                      "book_path": "book_swarm.json"},
    }
    write(os.path.join(ROOT, "agents.json"), json.dumps(agents, indent=2) + "\n")
    print(f"wrote {ROOT}")


if __name__ == "__main__":
    main()
