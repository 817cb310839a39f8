#!/usr/bin/env python3
"""Writes data/corpus: strategy notes, textbook sections, the problem library
and the lexicon used by hint levels 1-4.

Some library problems are twins of desk-1 problems and carry its contest_id,
so similar-problem retrieval has something it must refuse to return.
"""

import json
import os

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data", "corpus")

STRATEGY = [
    ("strategy-budget", "Budget before you code",
     "Every token, hint and local test draws on one credit pool. Read the state snapshot each turn: "
     "termination credit counts inference, hints, tests and time, while penalties only matter for tie-breaks. "
     "Solve the cheap Bronze problems first, keep a reserve for the last submission, and terminate once the "
     "expected value of another attempt is below its price."),
    ("strategy-testing", "Test locally, submit once",
     "A wrong submission costs a penalty and reveals only the passed-prefix length. Run the samples through "
     "TEST_CODE before submitting; custom tests are cheap compared to a wrong answer on a Platinum problem. "
     "Check integer widths: sums of 10^9 values overflow 32 bits."),
    ("strategy-hints", "When hints pay",
     "Level 0 is general advice. Level 1 maps the statement to a textbook section; level 2 looks up a technique "
     "by name. Level 3 returns a similar solved problem and level 4 filters the library by difficulty and "
     "technique. Buy a hint when the technique is unclear, not when the bug is."),
]

TEXTBOOK = [
    ("tb-prefix-sums", "Prefix sums",
     ["prefix sums", "array"],
     "Prefix sums answer range-sum queries in O(1) after O(n) preprocessing: p[i] = p[i-1] + a[i] and the sum "
     "of a[l..r] is p[r] - p[l-1]. Use 64-bit integers when values reach 10^9; integer overflow of 32-bit "
     "accumulators is the classic mistake. Two-dimensional prefix sums extend the idea to rectangles."),
    ("tb-hashing", "Hash maps for counting",
     ["hash map", "counting"],
     "A hash map from value to count supports counting pairs with a given sum in linear time: scan the array, "
     "add the count of k - x seen so far, then record x. Duplicates matter; a set of distinct values loses "
     "multiplicity."),
    ("tb-stack", "Stacks and bracket matching",
     ["stack", "bracket"],
     "A stack checks bracket sequences: push opening brackets, and on a closing bracket pop and compare the "
     "kind. A single depth counter is not enough once several bracket kinds interleave, as in ([)]. The "
     "sequence is balanced when every pop matches and the stack ends empty."),
    ("tb-bfs", "Breadth-first search",
     ["bfs", "graph"],
     "Breadth-first search explores a graph level by level with a queue and finds shortest paths when every "
     "edge has the same length. With weighted edges BFS hop counts are not distances; use Dijkstra instead."),
    ("tb-dijkstra", "Dijkstra's algorithm",
     ["shortest path", "dijkstra", "graph", "priority queue"],
     "Dijkstra's algorithm computes single-source shortest path distances with non-negative edge weights. "
     "Keep a priority queue of (distance, node); pop the closest node, skip stale entries, and relax outgoing "
     "edges. With a binary heap the running time is O((n + m) log n). Unreachable nodes keep infinite distance."),
    ("tb-lis", "Longest increasing subsequence",
     ["dynamic programming", "binary search", "subsequence"],
     "The longest strictly increasing subsequence has an O(n log n) dynamic programming solution: keep tails[k], "
     "the smallest tail of an increasing subsequence of length k + 1, and place each element with binary search "
     "(lower_bound for strict, upper_bound for non-decreasing)."),
    ("tb-coin-change", "Coin change",
     ["dynamic programming", "coin change", "greedy"],
     "The minimum number of coins for an amount follows from dynamic programming: dp[v] = 1 + min dp[v - c] over "
     "coins c <= v. Greedy largest-coin-first is optimal only for canonical coin systems such as 1, 5, 10, 25; "
     "for coins 1, 3, 4 and amount 6 greedy uses three coins where two suffice."),
    ("tb-knapsack", "0/1 knapsack",
     ["dynamic programming", "knapsack"],
     "The 0/1 knapsack problem chooses items under a weight capacity to maximize value. Iterate items and, for "
     "each, capacities from high to low: dp[c] = max(dp[c], dp[c - w] + v). Greedy by value density fails for "
     "the 0/1 variant; it is only correct for the fractional knapsack."),
    ("tb-edit-distance", "Edit distance",
     ["dynamic programming", "edit distance", "string"],
     "Edit distance (Levenshtein distance) counts insertions, deletions and substitutions. The dynamic "
     "programming table d[i][j] takes the minimum of d[i-1][j] + 1, d[i][j-1] + 1 and d[i-1][j-1] + [a_i != b_j]. "
     "Dropping substitutions gives the LCS-based insert/delete distance, which is larger."),
    ("tb-fenwick", "Fenwick trees",
     ["fenwick tree", "binary indexed tree", "inversion"],
     "A Fenwick tree (binary indexed tree) supports prefix sums with point updates in O(log n). Counting "
     "inversions: compress values, scan from the right, and add the number of strictly smaller values already "
     "inserted. Equal values are not inversions."),
    ("tb-merge-sort", "Merge sort",
     ["merge sort", "sorting", "inversion"],
     "Merge sort splits the array, sorts halves recursively and merges them in linear time. During the merge, "
     "each element taken from the right half jumps over the remaining left elements, which counts inversions."),
    ("tb-binary-search", "Binary search",
     ["binary search", "sorting"],
     "Binary search halves a monotone search space. On sorted arrays lower_bound finds the first element not "
     "less than the key; binary search on the answer applies to any monotone predicate."),
    ("tb-union-find", "Union-find",
     ["union find", "graph"],
     "A disjoint set union (union find) structure merges sets and answers connectivity queries in near-constant "
     "amortized time with path compression and union by size."),
    ("tb-two-pointers", "Two pointers",
     ["two pointers", "sorting"],
     "On a sorted array, two pointers moving towards each other find pairs with a target sum in linear time, "
     "and a sliding window maintains a range with a monotone property."),
    ("tb-overflow", "Integer overflow",
     ["integer overflow"],
     "Signed 32-bit integers hold values up to 2147483647. Sums and products of inputs near 10^9 need 64-bit "
     "long long; reading into int silently truncates."),
    ("tb-segment-tree", "Segment trees",
     ["segment tree", "range query"],
     "A segment tree stores aggregates over a binary decomposition of an array, answering range minimum or "
     "range sum queries and point updates in O(log n)."),
]

# (doc_id, title, difficulty, knowledge, body, contest_id)
LIBRARY = [
    ("lib-001", "Add Two Big Numbers", "Bronze", ["integer overflow"],
     "Given a and b up to 10^18, print their sum.\nSolution: read both into 64-bit integers and add.", None),
    ("lib-002", "Array Maximum", "Bronze", ["array"],
     "Print the largest of n integers, which may be negative.\nSolution: start the running maximum at the first "
     "element, not at zero.", None),
    ("lib-003", "Count Letters", "Bronze", ["string", "counting"],
     "Count how many characters of a line are uppercase or lowercase vowels.\nSolution: test membership in "
     "the ten-letter set.", None),
    ("lib-004", "Static Range Sum", "Silver", ["prefix sums"],
     "Answer q queries for the sum of a[l..r].\nSolution: prefix sums with 64-bit accumulators.", None),
    ("lib-005", "Valid Parentheses", "Silver", ["stack", "bracket"],
     "Check whether a string over ()[]{} is balanced.\nSolution: push opening brackets on a stack and match "
     "each closing bracket with the popped kind.", None),
    ("lib-006", "Pairs With Target Sum", "Silver", ["hash map", "counting"],
     "Count pairs i < j with a_i + a_j = k.\nSolution: hash map of counts of values seen so far.", None),
    ("lib-007", "Network Delay", "Gold", ["shortest path", "dijkstra", "graph"],
     "Signals travel along weighted directed links; find when the last node hears the signal from node 1.\n"
     "Solution: Dijkstra from node 1 with a priority queue and take the maximum distance.", None),
    ("lib-008", "Longest Climb", "Gold", ["dynamic programming", "binary search", "subsequence"],
     "Find the longest strictly increasing run of chosen elements, not necessarily adjacent.\nSolution: "
     "patience sorting with lower_bound.", None),
    ("lib-009", "Making Change", "Gold", ["dynamic programming", "coin change"],
     "Minimum coins to pay an amount with arbitrary denominations.\nSolution: unbounded knapsack style "
     "dynamic programming over amounts.", None),
    ("lib-010", "Treasure Bag", "Platinum", ["dynamic programming", "knapsack"],
     "Pick treasures with weights and values under a capacity to maximize value; each treasure at most once.\n"
     "Solution: 0/1 knapsack table iterating capacity downwards.", None),
    ("lib-011", "DNA Alignment Cost", "Platinum", ["dynamic programming", "edit distance", "string"],
     "Minimum insertions, deletions and substitutions to align two DNA strings.\nSolution: Levenshtein "
     "dynamic programming with two rolling rows.", None),
    ("lib-012", "Out of Order", "Platinum", ["fenwick tree", "inversion", "binary indexed tree"],
     "Count pairs that appear in the wrong order.\nSolution: Fenwick tree over compressed values scanning "
     "from the right.", None),
    ("lib-013", "Connected Islands", "Silver", ["union find", "graph"],
     "Count connected components after adding roads.\nSolution: union find with path compression.", None),
    ("lib-014", "Closest Pair Sum", "Silver", ["two pointers", "sorting"],
     "Find the pair whose sum is closest to a target.\nSolution: sort and move two pointers inward.", None),
    ("lib-015", "Range Minimum", "Gold", ["segment tree", "range query"],
     "Answer minimum queries with point updates.\nSolution: segment tree.", None),
    ("lib-016", "Grid Paths", "Gold", ["dynamic programming", "bfs"],
     "Count shortest monotone paths in a grid with blocked cells.\nSolution: dynamic programming row by row.",
     None),
    # desk-1 twins: same problems, must never come back from similar-problem retrieval during desk-1.
    ("lib-desk-g1", "Cheapest Route (archive)", "Gold", ["shortest path", "dijkstra", "graph", "priority queue"],
     "A directed graph has n nodes and m weighted edges. Find the shortest path distance from node 1 to node n "
     "(Dijkstra's algorithm with a priority queue), or -1 when n is unreachable.\nSolution: Dijkstra.", "desk-1"),
    ("lib-desk-p2", "Edit Distance (archive)", "Platinum", ["dynamic programming", "edit distance", "string"],
     "Compute the edit distance between two strings: the minimum number of single-character insertions, "
     "deletions and substitutions turning the first into the second.\nSolution: Levenshtein table.", "desk-1"),
    ("lib-desk-p3", "Inversions (archive)", "Platinum", ["fenwick tree", "inversion", "binary indexed tree"],
     "Count pairs i < j with a_i > a_j. A Fenwick tree (binary indexed tree) over compressed values or merge "
     "sort gives O(n log n).\nSolution: Fenwick tree.", "desk-1"),
    ("lib-desk-b1", "Sum of Two (archive)", "Bronze", ["integer overflow"],
     "Read two integers a and b and print a + b. Watch the integer width: the sum does not fit in 32 bits.\n"
     "Solution: 64-bit addition.", "desk-1"),
]

LEXICON = [
    "prefix sums", "hash map", "stack", "bracket", "bfs", "breadth-first search", "graph", "shortest path",
    "dijkstra", "priority queue", "dynamic programming", "binary search", "subsequence", "coin change",
    "greedy", "knapsack", "edit distance", "fenwick tree", "binary indexed tree", "merge sort", "inversion",
    "union find", "two pointers", "integer overflow", "segment tree", "range query", "sorting", "counting",
]


def dump(path, docs):
    with open(path, "w", newline="\n") as f:
        for d in docs:
            f.write(json.dumps(d, ensure_ascii=False) + "\n")


def main():
    os.makedirs(ROOT, exist_ok=True)
    dump(os.path.join(ROOT, "strategy.jsonl"),
         [{"doc_id": i, "kind": "strategy", "title": t, "body": b, "tags": {"knowledge": []}} for i, t, b in STRATEGY])
    dump(os.path.join(ROOT, "textbook.jsonl"),
         [{"doc_id": i, "kind": "textbook_section", "title": t, "body": b, "tags": {"knowledge": k}}
          for i, t, k, b in TEXTBOOK])
    lib = []
    for i, t, diff, k, b, cid in LIBRARY:
        d = {"doc_id": i, "kind": "library_problem", "title": t, "body": b,
             "tags": {"difficulty": diff, "knowledge": k}}
        if cid:
            d["contest_id"] = cid
        lib.append(d)
    dump(os.path.join(ROOT, "library.jsonl"), lib)
    with open(os.path.join(ROOT, "lexicon.txt"), "w", newline="\n") as f:
        f.write("# algorithm and data-structure terms recognized in problem statements\n")
        f.write("\n".join(LEXICON) + "\n")
    print(f"wrote {ROOT}")


if __name__ == "__main__":
    main()
