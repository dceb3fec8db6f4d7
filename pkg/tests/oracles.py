"""Independent reference implementations used only by the tests.

Nothing here goes through the packed kernels: groups are generated as
matrices acting on the simple-root basis, Bruhat order comes from subwords,
and KL polynomials come from R-polynomials.
"""
from __future__ import annotations

import itertools
from functools import lru_cache


def reflection_matrices(cartan):
    """s_i as integer matrices on the simple-root basis (columns = images)."""
    n = len(cartan)
    mats = []
    for i in range(n):
        m = [[int(r == c) for c in range(n)] for r in range(n)]
        for c in range(n):
            m[i][c] -= cartan[i][c]
        mats.append(tuple(tuple(row) for row in m))
    return mats


def matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def group_by_bfs(cartan):
    """{matrix: a shortest word} for the whole group, by BFS over right multiplication."""
    n = len(cartan)
    gens = reflection_matrices(cartan)
    ident = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
    words = {ident: ()}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for i, s in enumerate(gens):
                h = matmul(g, s)
                if h not in words:
                    words[h] = words[g] + (i + 1,)
                    nxt.append(h)
        frontier = nxt
    return words


def subword_products(W, word):
    """Elements expressible as subwords of ``word``; equals the Bruhat ideal if reduced."""
    out = set()
    for mask in itertools.product((0, 1), repeat=len(word)):
        out.add(W.from_word([i for i, m in zip(word, mask) if m]))
    return out


# -- permutations (type A) ----------------------------------------------------

def perm_of_word(word, n):
    p = list(range(n))
    for i in word:
        p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def perm_length(p):
    return sum(1 for a, b in itertools.combinations(range(len(p)), 2) if p[a] > p[b])


def perm_bruhat_leq(x, w):
    """Tableau criterion: sorted prefixes of x are entrywise <= those of w."""
    for k in range(1, len(x)):
        if any(a > b for a, b in zip(sorted(x[:k]), sorted(w[:k]))):
            return False
    return True


# -- KL polynomials through R-polynomials --------------------------------------

def _padd(a, b, shift=0, scale=1):
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for k, c in enumerate(b):
        out[k + shift] += scale * c
    while out and out[-1] == 0:
        out.pop()
    return out


def kl_via_R(W):
    """P_{x,w} for every x <= w of a small group, from the R-polynomial identity.

    R recursion (s with ws < w): R_{x,w} = R_{xs,ws} if xs < x, else
    (q - 1) R_{x,ws} + q R_{xs,ws}.  Then
    q^{l(w)-l(x)} P_{x,w}(1/q) - P_{x,w}(q) = sum_{x<y<=w} R_{x,y} P_{y,w},
    and P is minus the part of the right side of degree <= (l(w)-l(x)-1)/2.
    """
    elems = sorted(W.elements(), key=lambda u: (W.length(u), W.reduced_word(u)))
    length = {u: W.length(u) for u in elems}
    leq = {(x, w): W.bruhat_leq(x, w) for x in elems for w in elems}

    @lru_cache(maxsize=None)
    def R(x, w):
        if not leq[(x, w)]:
            return ()
        if x == w:
            return (1,)
        s = W.right_descents(w)[0]
        ws = W.right_mul_simple(w, s)
        xs = W.right_mul_simple(x, s)
        if length[xs] < length[x]:
            return R(xs, ws)
        a = _padd(_padd([], R(x, ws), 1), R(x, ws), 0, -1)
        return tuple(_padd(a, R(xs, ws), 1))

    P = {}
    for w in elems:
        below = [x for x in elems if leq[(x, w)]]
        for x in sorted(below, key=lambda u: -length[u]):
            if x == w:
                P[(x, w)] = (1,)
                continue
            rhs = []
            for y in below:
                if y != x and leq[(x, y)]:
                    rhs = _padd(rhs, _mulp(R(x, y), P[(y, w)]))
            d = length[w] - length[x]
            top = (d - 1) // 2
            P[(x, w)] = tuple(_trim([-c for c in rhs[: top + 1]]))
    return P


def _mulp(a, b):
    out = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


# -- characteristic classes of projective space --------------------------------

def binom(n, k):
    from math import comb
    return comb(n, k) if 0 <= k <= n else 0
