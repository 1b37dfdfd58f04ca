"""Pure-Python implementations of the hot kernels.

Every function here has a twin with the same signature in the compiled
``_core`` extension. ``deltaraag._backend`` picks one at import time.

Bit conventions: an F2 row or a matrix row is a Python ``int`` whose bit
``j`` is column ``j``.
"""

NAME = "python"


def rref(rows):
    """Fully reduced row echelon form over F2, pivot = highest set bit.

    Returns ``(pivots, reduced)`` with ``pivots`` sorted ascending and
    ``reduced[k]`` the row whose leading bit is ``pivots[k]``. Every other
    pivot bit is cleared from each reduced row.
    """
    basis = {}
    for r in rows:
        while r:
            h = r.bit_length() - 1
            b = basis.get(h)
            if b is None:
                basis[h] = r
                break
            r ^= b
    pivots = sorted(basis)
    mask = 0
    for p in pivots:
        row = basis[p]
        x = row & mask
        while x:
            q = x.bit_length() - 1
            row ^= basis[q]
            x &= ~(1 << q)
        basis[p] = row
        mask |= 1 << p
    return pivots, [basis[p] for p in pivots]


def rank(rows):
    basis = {}
    for r in rows:
        while r:
            h = r.bit_length() - 1
            b = basis.get(h)
            if b is None:
                basis[h] = r
                break
            r ^= b
    return len(basis)


def umul(a, b):
    """Product of two square F2 matrices given as row bitmasks."""
    out = []
    for row in a:
        acc = 0
        while row:
            low = row & -row
            acc ^= b[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return tuple(out)


def canon_search(n, adj, cells):
    """Branch-and-bound search for the minimum adjacency code.

    ``adj[v]`` is the neighbour bitmask of vertex ``v``; ``cells`` lists,
    in position order, the colour cells whose vertices may occupy the next
    positions. The code appends, for position ``p``, the bits
    ``adj(perm[p], perm[q])`` for ``q < p``; earlier bits are more
    significant. Returns ``(code, perm)``.
    """
    total = n * (n - 1) // 2
    slot = []
    for cell in cells:
        slot.extend([cell] * len(cell))
    best = [None, None]
    perm = [0] * n

    def rec(p, used, code, nbits):
        if best[0] is not None and code > best[0] >> (total - nbits):
            return
        if p == n:
            if best[0] is None or code < best[0]:
                best[0] = code
                best[1] = tuple(perm)
            return
        for v in slot[p]:
            if used >> v & 1:
                continue
            c = code
            nv = adj[v]
            for q in range(p):
                c = (c << 1) | (nv >> perm[q] & 1)
            perm[p] = v
            rec(p + 1, used | (1 << v), c, nbits + p)

    rec(0, 0, 0, 0)
    return best[0], best[1]
