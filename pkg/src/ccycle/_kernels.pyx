# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Weyl-group kernels; see ``_kernels_py`` for the reference semantics."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

cdef enum:
    MAXRANK = 16


cdef class Kernel:
    cdef public int n, N
    cdef public str backend
    cdef public tuple identity
    cdef int R
    cdef int *sref
    cdef int *add
    cdef int *parent
    cdef int *pj
    cdef int *pair
    cdef int *cart
    cdef int *img
    cdef int *img2
    cdef int bits

    def __cinit__(self, int n, int N, sref, add, parent, pj, pair, cart):
        if n > MAXRANK:
            raise ValueError("rank too large for compiled kernel")
        self.n = n
        self.N = N
        self.R = 2 * N
        self.sref = <int *> malloc(n * self.R * sizeof(int))
        self.add = <int *> malloc(self.R * self.R * sizeof(int))
        self.parent = <int *> malloc(N * sizeof(int))
        self.pj = <int *> malloc(N * sizeof(int))
        self.pair = <int *> malloc(N * n * sizeof(int))
        self.cart = <int *> malloc(n * n * sizeof(int))
        self.img = <int *> malloc(N * sizeof(int))
        self.img2 = <int *> malloc(N * sizeof(int))
        cdef int i, j
        for i in range(n):
            for j in range(self.R):
                self.sref[i * self.R + j] = sref[i][j]
            for j in range(n):
                self.cart[i * n + j] = cart[i][j]
        for i in range(self.R):
            row = add[i]
            for j in range(self.R):
                self.add[i * self.R + j] = row[j]
        for i in range(N):
            self.parent[i] = parent[i]
            self.pj[i] = pj[i]
            for j in range(n):
                self.pair[i * n + j] = pair[i][j]
        self.bits = 1
        while (1 << self.bits) < self.R:
            self.bits += 1
        self.backend = "cython"
        self.identity = tuple(range(n))

    def __dealloc__(self):
        free(self.sref)
        free(self.add)
        free(self.parent)
        free(self.pj)
        free(self.pair)
        free(self.cart)
        free(self.img)
        free(self.img2)

    cdef inline int neg(self, int r) nogil:
        return r + self.N if r < self.N else r - self.N

    cdef inline void c_images(self, const int *key, int *img) nogil:
        cdef int p
        for p in range(self.n):
            img[p] = key[p]
        for p in range(self.n, self.N):
            img[p] = self.add[img[self.parent[p]] * self.R + key[self.pj[p]]]

    cdef inline int c_length(self, const int *key, int *img) nogil:
        cdef int p, c = 0
        self.c_images(key, img)
        for p in range(self.N):
            if img[p] >= self.N:
                c += 1
        return c

    cdef inline void c_right_simple(self, int *k, int i) nogil:
        # in place: k <- k * s_i
        cdef int j, c, t, r
        cdef int wi = k[i]
        for j in range(self.n):
            if j == i:
                continue
            c = -self.cart[i * self.n + j]
            if c == 0:
                continue
            r = k[j]
            for t in range(c):
                r = self.add[r * self.R + wi]
            k[j] = r
        k[i] = self.neg(wi)

    cdef inline void c_reflect(self, const int *key, int a, int wa, int *out) nogil:
        cdef int j, c, t, r, step
        cdef int nwa = self.neg(wa)
        for j in range(self.n):
            c = self.pair[a * self.n + j]
            if j == a:  # alpha is simple: the string alpha_j - k alpha passes through 0
                out[j] = nwa
                continue
            r = key[j]
            if c > 0:
                step = nwa
            else:
                step = wa
                c = -c
            for t in range(c):
                r = self.add[r * self.R + step]
            out[j] = r

    cdef inline uint64_t pack(self, const int *k) nogil:
        cdef uint64_t code = 0
        cdef int j
        for j in range(self.n):
            code = (code << self.bits) | <uint64_t> k[j]
        return code

    cdef inline void unpack(self, uint64_t code, int *k) nogil:
        cdef int j
        cdef uint64_t mask = ((<uint64_t> 1) << self.bits) - 1
        for j in range(self.n - 1, -1, -1):
            k[j] = <int> (code & mask)
            code >>= self.bits

    cdef void load(self, key, int *k) except *:
        cdef int j
        if len(key) != self.n:
            raise ValueError("element has wrong rank")
        for j in range(self.n):
            k[j] = key[j]

    cdef tuple totuple(self, const int *k):
        return tuple([k[j] for j in range(self.n)])

    def images(self, key):
        cdef int k[MAXRANK]
        self.load(key, k)
        self.c_images(k, self.img)
        return [self.img[p] for p in range(self.N)]

    def act(self, key, int r):
        cdef int k[MAXRANK]
        self.load(key, k)
        self.c_images(k, self.img)
        if r < self.N:
            return self.img[r]
        return self.neg(self.img[r - self.N])

    def length(self, key):
        cdef int k[MAXRANK]
        self.load(key, k)
        return self.c_length(k, self.img)

    def right_simple(self, key, int i):
        cdef int k[MAXRANK]
        self.load(key, k)
        self.c_right_simple(k, i)
        return self.totuple(k)

    def left_simple(self, key, int i):
        cdef int k[MAXRANK]
        cdef int j
        self.load(key, k)
        for j in range(self.n):
            k[j] = self.sref[i * self.R + k[j]]
        return self.totuple(k)

    def right_reflect(self, key, int a):
        cdef int k[MAXRANK]
        cdef int out[MAXRANK]
        self.load(key, k)
        self.c_images(k, self.img)
        self.c_reflect(k, a, self.img[a], out)
        return self.totuple(out)

    def compose(self, u, v):
        cdef int k[MAXRANK]
        cdef int out[MAXRANK]
        cdef int j, r
        self.load(u, k)
        self.c_images(k, self.img)
        for j in range(self.n):
            r = v[j]
            out[j] = self.img[r] if r < self.N else self.neg(self.img[r - self.N])
        return self.totuple(out)

    def inverse(self, key):
        cdef int k[MAXRANK]
        cdef int out[MAXRANK]
        cdef int p, r
        self.load(key, k)
        self.c_images(k, self.img)
        for p in range(self.N):
            r = self.img[p]
            if r < self.n:
                out[r] = p
            elif self.N <= r < self.N + self.n:
                out[r - self.N] = p + self.N
        return self.totuple(out)

    def left_descents(self, key):
        cdef int k[MAXRANK]
        cdef int p, r
        self.load(key, k)
        self.c_images(k, self.img)
        res = []
        for p in range(self.N):
            r = self.img[p]
            if self.N <= r < self.N + self.n:
                res.append(r - self.N)
        res.sort()
        return res

    def inversions(self, key):
        cdef int k[MAXRANK]
        cdef int p
        self.load(key, k)
        self.c_images(k, self.img)
        return [p for p in range(self.N) if self.img[p] >= self.N]

    def covers(self, key):
        cdef int k[MAXRANK]
        cdef int out[MAXRANK]
        cdef int a, target
        self.load(key, k)
        target = self.c_length(k, self.img) - 1
        res = []
        for a in range(self.N):
            if self.img[a] >= self.N:
                self.c_reflect(k, a, self.img[a], out)
                if self.c_length(out, self.img2) == target:
                    res.append((self.totuple(out), a))
        return res

    def bruhat_leq(self, x, w):
        cdef int kx[MAXRANK]
        cdef int kw[MAXRANK]
        cdef int lx, lw, i, j
        self.load(x, kx)
        self.load(w, kw)
        lx = self.c_length(kx, self.img)
        lw = self.c_length(kw, self.img)
        while True:
            if lx > lw:
                return False
            if lx == lw:
                for j in range(self.n):
                    if kx[j] != kw[j]:
                        return False
                return True
            i = 0
            while kw[i] < self.N:
                i += 1
            if kx[i] >= self.N:
                self.c_right_simple(kx, i)
                lx -= 1
            self.c_right_simple(kw, i)
            lw -= 1

    cdef void c_ideal(self, word, vector[uint64_t] &out) except *:
        cdef unordered_set[uint64_t] seen
        cdef int k[MAXRANK]
        cdef int i, j
        cdef size_t t, m
        cdef uint64_t code
        if self.n * self.bits > 64:
            raise OverflowError("element does not fit in 64 bits")
        for j in range(self.n):
            k[j] = j
        code = self.pack(k)
        seen.insert(code)
        out.push_back(code)
        for i in word:
            m = out.size()
            with nogil:
                for t in range(m):
                    self.unpack(out[t], k)
                    self.c_right_simple(k, i)
                    code = self.pack(k)
                    if seen.find(code) == seen.end():
                        seen.insert(code)
                        out.push_back(code)

    def ideal(self, word):
        cdef vector[uint64_t] out
        cdef int k[MAXRANK]
        cdef size_t t
        self.c_ideal(word, out)
        res = []
        for t in range(out.size()):
            self.unpack(out[t], k)
            res.append(self.totuple(k))
        return res

    def ideal_size(self, word):
        cdef vector[uint64_t] out
        self.c_ideal(word, out)
        return out.size()
