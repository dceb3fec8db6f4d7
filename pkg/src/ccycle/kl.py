"""Kazhdan-Lusztig polynomials of finite Weyl groups.

``kl_poly(x, w)`` is the ordinary polynomial P_{x,w} for x <= w; the local
intersection cohomology of X_w at the cell of x in G/B.  Parabolic values for
G/P are read off maximal coset representatives.

The recursion runs on *extremal* pairs: since P_{x,w} = P_{xs,w} for a right
descent s of w and P_{x,w} = P_{sx,w} for a left descent, x is first pushed up
until its descent sets contain those of w.  Then for a left descent s of w
(so also of x), with v = sw,

    P_{x,w} = P_{sx,v} + q P_{x,v} - sum_z mu(z,v) q^{(l(w)-l(z))/2} P_{x,z}

over z < v with sz < z and mu(z,v) != 0.  Such z either contain the descent
sets of v or are v t / t v for a descent t of v, which bounds the search.
"""
from __future__ import annotations

import json
import logging
import os
import threading
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from .weyl import ParabolicData, WeylElement, WeylGroup

log = logging.getLogger(__name__)

Coeffs = Tuple[int, ...]
ONE: Coeffs = (1,)


class NotBelowError(ValueError):
    """Raised when a KL polynomial is requested for x not <= w."""


@dataclass(frozen=True)
class KLPolynomial:
    coeffs: Coeffs

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __call__(self, q: int = 1) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if isinstance(other, KLPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (tuple, list)):
            return self.coeffs == KLPolynomial(tuple(other)).coeffs
        if isinstance(other, int):
            return self.coeffs == KLPolynomial((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
                coef = str(c) if (c != 1 or k == 0) else ""
                terms.append(coef + mono)
        return " + ".join(terms) or "0"


def _add(a: Sequence[int], b: Sequence[int], shift: int = 0, scale: int = 1) -> List[int]:
    """a + scale * q^shift * b."""
    out = list(a) + [0] * max(0, len(b) + shift - len(a))
    for k, c in enumerate(b):
        out[k + shift] += scale * c
    return out


def _trim(a: List[int]) -> Coeffs:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


class KLCache:
    """Memo of KL polynomials for one Weyl group, optionally persisted.

    The file is JSON lines: a header ``{"format", "version", "cartan"}``
    followed by one ``{"v", "w", "p"}`` record per pair (reduced words and a
    coefficient list).  A file with a bad header or unreadable records is
    ignored with a warning and the run starts cold.
    """

    FORMAT = "ccycle-kl"
    VERSION = 1

    def __init__(self, group: WeylGroup, path: str | os.PathLike | None = None):
        self.group = group
        self.memo: Dict[Tuple[WeylElement, WeylElement], Coeffs] = {}
        self.mu: Dict[WeylElement, List[Tuple[WeylElement, int, int, frozenset]]] = {}
        self.path = os.fspath(path) if path is not None else None
        self.loaded = 0
        self.warning: str | None = None
        self._lock = threading.Lock()
        if self.path and os.path.exists(self.path):
            self.load()

    def __len__(self):
        return len(self.memo)

    def get(self, key):
        return self.memo.get(key)

    def put(self, key, value: Coeffs) -> None:
        with self._lock:
            self.memo.setdefault(key, value)

    def header(self) -> dict:
        return {"format": self.FORMAT, "version": self.VERSION, "cartan": self.group.label}

    def load(self) -> int:
        W = self.group
        records = {}
        try:
            with open(self.path) as fh:
                head = json.loads(fh.readline())
                if head != self.header():
                    raise ValueError(f"cache header {head} does not match {self.header()}")
                for line in fh:
                    if not line.strip():
                        continue
                    rec = json.loads(line)
                    key = (W.parse_word(rec["v"]), W.parse_word(rec["w"]))
                    records[key] = tuple(int(c) for c in rec["p"])
        except (OSError, ValueError, KeyError, TypeError) as exc:
            self.warning = f"ignoring KL cache {self.path}: {exc}"
            log.warning(self.warning)
            return 0
        with self._lock:
            for k, v in records.items():
                self.memo.setdefault(k, v)
        self.loaded = len(records)
        return self.loaded

    def save(self, path: str | os.PathLike | None = None) -> None:
        path = os.fspath(path) if path is not None else self.path
        if path is None:
            return
        W = self.group
        with self._lock:
            items = list(self.memo.items())
        rows = sorted(((W.reduced_word(x), W.reduced_word(w), p) for (x, w), p in items),
                      key=lambda r: (len(r[1]), r[1], len(r[0]), r[0]))
        tmp = f"{path}.tmp"
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(tmp, "w") as fh:
            fh.write(json.dumps(self.header(), sort_keys=True) + "\n")
            for x, w, p in rows:
                rec = {"v": ",".join(map(str, x)), "w": ",".join(map(str, w)), "p": list(p)}
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
        os.replace(tmp, path)


def _left_descent_set(W: WeylGroup, x: WeylElement) -> frozenset:
    return frozenset(W.kernel.left_descents(x))


def _extremal(W: WeylGroup, x: WeylElement, w: WeylElement) -> WeylElement:
    N = W.N
    k = W.kernel
    dr = [j for j, r in enumerate(w) if r >= N]
    dl = k.left_descents(w)
    while True:
        moved = False
        for j in dr:
            if x[j] < N:
                x = k.right_simple(x, j)
                moved = True
        if dl:
            have = set(k.left_descents(x))
            for j in dl:
                if j not in have:
                    x = k.left_simple(x, j)
                    moved = True
                    break
        if not moved:
            return x


def _choose_descent(W: WeylGroup, w: WeylElement) -> int:
    """A left descent s of w, preferring one with D_R(sw) containing D_R(w)."""
    N = W.N
    dl = W.kernel.left_descents(w)
    dr = [j for j, r in enumerate(w) if r >= N]
    for s in dl:
        v = W.kernel.left_simple(w, s)
        if all(v[j] >= N for j in dr):
            return s
    return dl[0]


def _mu_list(W: WeylGroup, cache: KLCache, v: WeylElement):
    """``[(z, mu(z,v), l(z), D_L(z))]`` for z < v with mu(z,v) != 0."""
    got = cache.mu.get(v)
    if got is not None:
        return got
    k = W.kernel
    N = W.N
    lv = k.length(v)
    K = [j for j, r in enumerate(v) if r >= N]
    L = frozenset(k.left_descents(v))
    found: Dict[WeylElement, int] = {}
    for t in K:
        found[k.right_simple(v, t)] = 1
    for t in L:
        found[k.left_simple(v, t)] = 1
    wK = W.longest_in([j + 1 for j in K])
    lK = k.length(wK)
    for y in W.quotient([j + 1 for j in K]):  # sorted by length
        lz = k.length(y) + lK
        if lz >= lv:
            break
        z = k.compose(y, wK)
        d = lv - lz
        if d % 2 == 0 or z in found:
            continue
        if not L <= _left_descent_set(W, z):
            continue
        if not k.bruhat_leq(z, v):
            continue
        if d == 1:
            mu = 1
        else:
            p = _kl(W, cache, z, v)
            deg = (d - 1) // 2
            mu = p[deg] if len(p) > deg else 0
        if mu:
            found[z] = mu
    out = sorted(((z, mu, k.length(z), _left_descent_set(W, z)) for z, mu in found.items()),
                 key=lambda r: (r[2], r[0]))
    cache.mu[v] = out
    return out


def _kl(W: WeylGroup, cache: KLCache, x: WeylElement, w: WeylElement) -> Coeffs:
    """P_{x,w}; assumes x <= w."""
    k = W.kernel
    x = _extremal(W, x, w)
    lw, lx = k.length(w), k.length(x)
    if lw - lx <= 2:
        return ONE
    key = (x, w)
    got = cache.get(key)
    if got is not None:
        return got
    s = _choose_descent(W, w)
    v = k.left_simple(w, s)
    sx = k.left_simple(x, s)  # s is a left descent of x as well
    res = list(_kl(W, cache, sx, v))
    if k.bruhat_leq(x, v):
        res = _add(res, _kl(W, cache, x, v), shift=1)
    for z, mu, lz, dl in _mu_list(W, cache, v):
        if s in dl and lz >= lx and k.bruhat_leq(x, z):
            res = _add(res, _kl(W, cache, x, z), shift=(lw - lz) // 2, scale=-mu)
    out = _trim(res)
    _check(out, lw - lx)
    cache.put(key, out)
    return out


def _check(p: Coeffs, d: int) -> None:
    if not p or p[0] != 1:
        raise ArithmeticError(f"KL polynomial {p} lacks constant term 1")
    if len(p) - 1 > (d - 1) // 2:
        raise ArithmeticError(f"KL polynomial {p} exceeds the degree bound for length gap {d}")
    if any(c < 0 for c in p):
        raise ArithmeticError(f"KL polynomial {p} has a negative coefficient")


def kl_poly(x: WeylElement, w: WeylElement, cache: KLCache) -> KLPolynomial:
    """P_{x,w} for x <= w in Bruhat order."""
    W = cache.group
    if not W.bruhat_leq(x, w):
        raise NotBelowError(f"{W.word_string(x) or 'id'} is not below {W.word_string(w) or 'id'}")
    return KLPolynomial(_kl(W, cache, x, w))


def kl_parabolic(v: WeylElement, w: WeylElement, pd: ParabolicData, cache: KLCache) -> KLPolynomial:
    """Parabolic P for v <= w in W^P, via maximal representatives v w_P, w w_P."""
    pd.check(v)
    pd.check(w)
    W = pd.group
    return kl_poly(W.multiply(v, pd.w_P), W.multiply(w, pd.w_P), cache)


def kl_matrix(pd: ParabolicData, cache: KLCache):
    """``(polys, at_one)``: rows[i][j] hold P for (basis[i], basis[j]); zero off the order."""
    W = pd.group
    n = len(pd.WP)
    polys: List[List[KLPolynomial | None]] = [[None] * n for _ in range(n)]
    at_one = [[0] * n for _ in range(n)]
    for j, w in enumerate(pd.WP):
        for i, v in enumerate(pd.WP[: j + 1]):
            if W.bruhat_leq(v, w):
                p = kl_parabolic(v, w, pd, cache)
                polys[i][j] = p
                at_one[i][j] = p(1)
    return polys, at_one


def kl_poly_textbook(W: WeylGroup, x: WeylElement, w: WeylElement,
                     choose: Callable[[WeylGroup, WeylElement], Tuple[str, int]] | None = None,
                     memo: dict | None = None) -> KLPolynomial:
    """Plain KL recursion over the whole group, with a caller-chosen descent.

    No extremal reduction and no pruning of the mu-sum; meant for small
    groups and for cross-checking :func:`kl_poly`.  ``choose(W, w)`` returns
    ``("left" | "right", j)`` with j a 0-based descent on that side.  With
    ``memo=None`` nothing is memoized.
    """
    elements = W.elements()
    k = W.kernel
    choose = choose or (lambda W_, w_: ("right", W_.right_descents(w_)[0] - 1))

    def mul(side, u, j):
        return k.left_simple(u, j) if side == "left" else k.right_simple(u, j)

    def is_desc(side, u, j):
        return j in k.left_descents(u) if side == "left" else u[j] >= W.N

    def P(a, b) -> Coeffs:
        if not k.bruhat_leq(a, b):
            return ()
        if a == b:
            return ONE
        if memo is not None and (a, b) in memo:
            return memo[(a, b)]
        side, j = choose(W, b)
        v = mul(side, b, j)
        sa = mul(side, a, j)
        c = 1 if is_desc(side, a, j) else 0
        res = _add(_add([], P(sa, v), shift=1 - c), P(a, v), shift=c)
        lb = k.length(b)
        lv = lb - 1
        for z in elements:
            lz = k.length(z)
            if lz >= lv or (lv - lz) % 2 == 0 or not is_desc(side, z, j):
                continue
            if not k.bruhat_leq(a, z) or not k.bruhat_leq(z, v):
                continue
            pz = P(z, v)
            deg = (lv - lz - 1) // 2
            mu = pz[deg] if len(pz) > deg else 0
            if mu:
                res = _add(res, P(a, z), shift=(lb - lz) // 2, scale=-mu)
        out = _trim(res)
        if memo is not None:
            memo[(a, b)] = out
        return out

    return KLPolynomial(P(x, w))
