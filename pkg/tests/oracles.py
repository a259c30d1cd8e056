"""Definition-level reference implementations used only by the tests.

Everything here works on plain tuples and Python sets, without the packed
integer representation used by the package.
"""

from itertools import chain, combinations

EXAMPLE1_ROWS = [
    "10000001",
    "11000000",
    "01100100",
    "00110000",
    "00010010",
    "00001100",
    "00001011",
]


def columns_of(rows):
    return [tuple(int(r[j]) for r in rows) for j in range(len(rows[0]))]


def vor(vectors):
    vectors = list(vectors)
    return tuple(max(bits) for bits in zip(*vectors))


def nonempty_subsets(items):
    items = list(items)
    return chain.from_iterable(combinations(items, k) for k in range(1, len(items) + 1))


def ssm_by_definition(cols, d, bar=False):
    """Intersection of all index sets with the same Boolean sum equals F0."""
    n = len(cols)
    idx = range(n)
    frames_by_sum = {}
    for s in nonempty_subsets(idx):
        frames_by_sum.setdefault(vor(cols[j] for j in s), []).append(set(s))
    sizes = range(1, d + 1) if bar else [d]
    for k in sizes:
        for f0 in combinations(idx, k):
            frames = frames_by_sum[vor(cols[j] for j in f0)]
            if set.intersection(*frames) != set(f0):
                return False
    return True


def dm_by_definition(cols, d):
    n = len(cols)
    for s in combinations(range(n), d):
        r = vor(cols[j] for j in s)
        for j in range(n):
            if j not in s and all(r[i] >= cols[j][i] for i in range(len(r))):
                return False
    return True


def sm_by_definition(cols, d):
    seen = set()
    for k in range(1, d + 1):
        for s in combinations(range(len(cols)), k):
            r = vor(cols[j] for j in s)
            if r in seen:
                return False
            seen.add(r)
    return True


def table_decode(cols, r, d):
    """All index sets (1-based) of size <= d whose Boolean sum is r."""
    return [
        tuple(j + 1 for j in s)
        for k in range(1, d + 1)
        for s in combinations(range(len(cols)), k)
        if vor(cols[j] for j in s) == tuple(r)
    ]


def desc(words):
    return tuple(frozenset(w[i] for w in words) for i in range(len(words[0])))


def ssc_by_definition(words, d):
    n = len(words)
    groups = {}
    for s in nonempty_subsets(range(n)):
        groups.setdefault(desc([words[j] for j in s]), []).append(set(s))
    for k in range(1, d + 1):
        for c0 in combinations(range(n), k):
            frames = groups[desc([words[j] for j in c0])]
            if set.intersection(*frames) != set(c0):
                return False
    return True


def minimal_frames_by_definition(words, c0):
    """1-based sorted tuples of every minimal frame of c0 (1-based indices)."""
    target = desc([words[j - 1] for j in c0])
    frames = [
        set(s) for s in nonempty_subsets(range(1, len(words) + 1))
        if desc([words[j - 1] for j in s]) == target
    ]
    framesets = {frozenset(f) for f in frames}
    minimal = [
        f for f in frames
        if all(frozenset(f - {x}) not in framesets for x in f)
    ]
    return sorted((tuple(sorted(f)) for f in minimal), key=lambda f: (len(f), f))
