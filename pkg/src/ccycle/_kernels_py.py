"""Pure-Python Weyl-group kernels.

Mirror of the compiled ``_kernels`` module; same constructor, same methods,
same results.  Elements are tuples ``key`` with ``key[j]`` the root index of
``w(alpha_j)`` (0-based simple indices here).
"""
from __future__ import annotations

from typing import List, Sequence, Tuple


class Kernel:
    backend = "python"

    def __init__(self, n: int, N: int, sref: Sequence[Sequence[int]],
                 add: Sequence[Sequence[int]], parent: Sequence[int],
                 pj: Sequence[int], pair: Sequence[Sequence[int]],
                 cart: Sequence[Sequence[int]]):
        self.n = n
        self.N = N
        self.sref = [list(r) for r in sref]
        self.add = [list(r) for r in add]
        self.parent = list(parent)
        self.pj = list(pj)
        self.pair = [list(r) for r in pair]
        self.cart = [list(r) for r in cart]
        self.nbrs = [[(j, -cart[i][j]) for j in range(n) if j != i and cart[i][j]]
                     for i in range(n)]
        self.identity = tuple(range(n))

    def _neg(self, r):
        N = self.N
        return r + N if r < N else r - N

    def images(self, key) -> List[int]:
        n, add, parent, pj = self.n, self.add, self.parent, self.pj
        img = list(key) + [0] * (self.N - n)
        for p in range(n, self.N):
            img[p] = add[img[parent[p]]][key[pj[p]]]
        return img

    def act(self, key, r: int) -> int:
        N = self.N
        if r < N:
            return self.images(key)[r]
        return self._neg(self.images(key)[r - N])

    def length(self, key) -> int:
        N = self.N
        return sum(1 for r in self.images(key) if r >= N)

    def right_simple(self, key, i: int) -> Tuple[int, ...]:
        add = self.add
        k = list(key)
        wi = key[i]
        k[i] = self._neg(wi)
        for j, c in self.nbrs[i]:
            r = key[j]
            for _ in range(c):
                r = add[r][wi]
            k[j] = r
        return tuple(k)

    def left_simple(self, key, i: int) -> Tuple[int, ...]:
        row = self.sref[i]
        return tuple(row[r] for r in key)

    def _reflect(self, key, a: int, wa: int) -> Tuple[int, ...]:
        add = self.add
        row = self.pair[a]
        nwa = self._neg(wa)
        k = list(key)
        for j in range(self.n):
            c = row[j]
            if c == 0:
                continue
            if j == a:  # alpha is simple: the string alpha_j - k alpha passes through 0
                k[j] = nwa
                continue
            r = key[j]
            step = nwa if c > 0 else wa
            for _ in range(abs(c)):
                r = add[r][step]
            k[j] = r
        return tuple(k)

    def right_reflect(self, key, a: int) -> Tuple[int, ...]:
        return self._reflect(key, a, self.images(key)[a])

    def compose(self, u, v) -> Tuple[int, ...]:
        N = self.N
        img = self.images(u)
        return tuple(img[r] if r < N else self._neg(img[r - N]) for r in v)

    def inverse(self, key) -> Tuple[int, ...]:
        n, N = self.n, self.N
        inv = [0] * n
        for p, r in enumerate(self.images(key)):
            if r < n:
                inv[r] = p
            elif N <= r < N + n:
                inv[r - N] = p + N
        return tuple(inv)

    def left_descents(self, key) -> List[int]:
        n, N = self.n, self.N
        return sorted(r - N for r in self.images(key) if N <= r < N + n)

    def inversions(self, key) -> List[int]:
        N = self.N
        return [p for p, r in enumerate(self.images(key)) if r >= N]

    def covers(self, key) -> List[Tuple[Tuple[int, ...], int]]:
        """Pairs (w s_a, a) over positive roots a with l(w s_a) = l(w) - 1."""
        N = self.N
        img = self.images(key)
        target = sum(1 for r in img if r >= N) - 1
        out = []
        for a in range(N):
            if img[a] >= N:
                k2 = self._reflect(key, a, img[a])
                if self.length(k2) == target:
                    out.append((k2, a))
        return out

    def bruhat_leq(self, x, w) -> bool:
        N = self.N
        lx, lw = self.length(x), self.length(w)
        while True:
            if lx > lw:
                return False
            if lx == lw:
                return tuple(x) == tuple(w)
            for i, r in enumerate(w):
                if r >= N:
                    break
            if x[i] >= N:
                x = self.right_simple(x, i)
                lx -= 1
            w = self.right_simple(w, i)
            lw -= 1

    def ideal(self, word: Sequence[int]) -> List[Tuple[int, ...]]:
        """All v <= s_{word[0]} ... s_{word[-1]} (word assumed reduced)."""
        seen = {self.identity}
        out = [self.identity]
        for i in word:
            for k in [self.right_simple(k, i) for k in out]:
                if k not in seen:
                    seen.add(k)
                    out.append(k)
        return out

    def ideal_size(self, word: Sequence[int]) -> int:
        return len(self.ideal(word))
