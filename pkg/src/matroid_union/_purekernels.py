"""Pure-Python oracle kernels; same signatures and return codes as ``_kernels``."""

BAD_ID = -1


def count_valid(elems, n):
    c = 0
    for x in elems:
        if x < 0 or x >= n:
            return BAD_ID
        c += 1
    return c


def forest_rank(elems, tail, head, parent, stop_on_cycle):
    n = len(tail)
    ids = list(elems)
    for x in ids:
        if x < 0 or x >= n:
            return BAD_ID
    for x in ids:
        parent[tail[x]] = tail[x]
        parent[head[x]] = head[x]
    r = 0
    for x in ids:
        a = tail[x]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = head[x]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            if stop_on_cycle:
                return -2
            continue
        parent[a] = b
        r += 1
    return r


def gf2_rank(elems, cols, words, stop_on_dependent):
    # cols is a flat word array; rebuild each column as one Python int
    ncols = len(cols) // words if words else 0
    basis = []  # (pivot_mask, vector)
    r = 0
    for x in elems:
        if x < 0 or x >= ncols:
            return BAD_ID
        v = 0
        for w in range(words):
            v |= cols[x * words + w] << (64 * w)
        for piv, b in basis:
            if v & piv:
                v ^= b
        if v == 0:
            if stop_on_dependent:
                return -2
            continue
        basis.append((v & -v, v))
        r += 1
    return r


def partition_rank(elems, block_of, caps, counts, stop_on_excess):
    n = len(block_of)
    ids = list(elems)
    for x in ids:
        if x < 0 or x >= n:
            return BAD_ID
    r = 0
    seen = []
    for x in ids:
        b = block_of[x]
        if b < 0:
            if stop_on_excess:
                r = -2
                break
            continue
        seen.append(b)
        if counts[b] < caps[b]:
            r += 1
        elif stop_on_excess:
            r = -2
            break
        counts[b] += 1
    for b in seen:
        counts[b] = 0
    return r
