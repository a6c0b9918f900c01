# cython: boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled F2 reduction kernel.

Mirrors psdef.groebner.f2core.F2Store with monomials packed into uint64:
one degree byte followed by up to seven complemented variable bytes, so the
packed integer order is graded reverse lex exactly as in the pure kernel.
Usable whenever the truncation degree is at most 8 (monomial degree <= 7).
"""

from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map
from cython.operator cimport dereference as deref

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil


cdef inline int _mono_degree(u64 m) nogil:
    cdef int bl
    if m == 0:
        return 0
    bl = 64 - __builtin_clzll(m)
    return <int>(m >> ((((bl - 1) >> 3)) << 3))


cdef inline int _decode(u64 m, unsigned char* out) nogil:
    """Write the complemented variable bytes (ascending) and return degree."""
    cdef int d = _mono_degree(m)
    cdef int i
    for i in range(d):
        out[i] = <unsigned char>((m >> (8 * (d - 1 - i))) & 0xFF)
    return d


cdef inline u64 _encode(unsigned char* bs, int d) nogil:
    cdef u64 m = <u64>d
    cdef int i
    for i in range(d):
        m = (m << 8) | bs[i]
    return m


cdef inline u64 _mono_mul(u64 a, u64 b) nogil:
    """Product of monomials; caller guarantees the degree fits 7."""
    cdef unsigned char ba[8]
    cdef unsigned char bb[8]
    cdef unsigned char bo[16]
    cdef int da, db, i, j, k
    if a == 0:
        return b
    if b == 0:
        return a
    da = _decode(a, ba)
    db = _decode(b, bb)
    i = 0
    j = 0
    k = 0
    while i < da and j < db:
        if ba[i] <= bb[j]:
            bo[k] = ba[i]; i += 1
        else:
            bo[k] = bb[j]; j += 1
        k += 1
    while i < da:
        bo[k] = ba[i]; i += 1; k += 1
    while j < db:
        bo[k] = bb[j]; j += 1; k += 1
    return _encode(bo, da + db)


cdef inline u64 _mono_div(u64 b, u64 a) nogil:
    """Quotient b / a assuming divisibility."""
    cdef unsigned char ba[8]
    cdef unsigned char bb[8]
    cdef unsigned char bo[8]
    cdef int da, db, i, j, k
    if a == 0:
        return b
    da = _decode(a, ba)
    db = _decode(b, bb)
    i = 0
    j = 0
    k = 0
    while j < db:
        if i < da and ba[i] == bb[j]:
            i += 1
            j += 1
        else:
            bo[k] = bb[j]
            j += 1
            k += 1
    return _encode(bo, k)


cdef class F2Store:
    """Working basis over F2 with a leading-term hash index."""

    cdef vector[vector[u64]] polys
    cdef unordered_map[u64, int] lt_map
    cdef public int trunc

    def __cinit__(self, int truncation=0):
        if truncation > 8:
            raise ValueError("compiled kernel supports truncation degrees up to 8")
        self.trunc = truncation

    def size(self):
        return <int>self.polys.size()

    def lt(self, int i):
        return self.polys[i][0]

    def get(self, int i):
        cdef vector[u64]* p = &self.polys[i]
        return tuple(deref(p))

    def add(self, terms):
        cdef vector[u64] v
        cdef u64 prev = 0
        cdef u64 m
        for t in terms:
            m = <u64>t
            v.push_back(m)
        if v.empty():
            raise ValueError("cannot add the zero polynomial")
        cdef int idx = <int>self.polys.size()
        self.polys.push_back(v)
        if self.lt_map.find(v[0]) == self.lt_map.end():
            self.lt_map[v[0]] = idx
        return idx

    cdef int _reducer(self, u64 m) nogil:
        """Smallest basis index whose leading monomial divides m; -1 if none."""
        cdef unsigned char bs[8]
        cdef unsigned char sub[8]
        cdef unsigned char vals[8]
        cdef int cnt[8]
        cdef int choice[8]
        cdef int d, nd, i, j, k, best, total
        cdef u64 key
        cdef unordered_map[u64, int].iterator it
        if self.lt_map.size() == 0:
            return -1
        d = _decode(m, bs)
        nd = 0
        for i in range(d):
            if nd > 0 and vals[nd - 1] == bs[i]:
                cnt[nd - 1] += 1
            else:
                vals[nd] = bs[i]
                cnt[nd] = 1
                nd += 1
        for i in range(nd):
            choice[i] = 0
        best = -1
        while True:
            # build the divisor for the current exponent choice
            k = 0
            total = 0
            for i in range(nd):
                for j in range(choice[i]):
                    sub[k] = vals[i]
                    k += 1
                total += choice[i]
            key = _encode(sub, total)
            it = self.lt_map.find(key)
            if it != self.lt_map.end():
                if best < 0 or deref(it).second < best:
                    best = deref(it).second
            # advance mixed-radix counter
            i = 0
            while i < nd:
                choice[i] += 1
                if choice[i] <= cnt[i]:
                    break
                choice[i] = 0
                i += 1
            if i == nd:
                break
        return best

    def reducer(self, m):
        return self._reducer(<u64>m)

    cdef void _reduce(self, vector[u64]& work, vector[u64]& out) nogil:
        """Full normal form of work (sorted descending) appended onto out."""
        cdef vector[u64] tmp
        cdef vector[u64] merged
        cdef size_t s = 0
        cdef size_t i, j
        cdef int idx, gdeg, cdeg
        cdef u64 m, cof, prod
        cdef vector[u64]* g
        cdef int k = self.trunc
        while s < work.size():
            m = work[s]
            idx = self._reducer(m)
            if idx < 0:
                out.push_back(m)
                s += 1
                continue
            g = &self.polys[idx]
            cof = _mono_div(m, deref(g)[0])
            cdeg = _mono_degree(cof)
            tmp.clear()
            for i in range(deref(g).size()):
                if k != 0 and cdeg + _mono_degree(deref(g)[i]) >= k:
                    continue
                tmp.push_back(_mono_mul(cof, deref(g)[i]))
            # symmetric difference of work[s:] and tmp, both descending
            merged.clear()
            i = s
            j = 0
            while i < work.size() and j < tmp.size():
                if work[i] == tmp[j]:
                    i += 1
                    j += 1
                elif work[i] > tmp[j]:
                    merged.push_back(work[i])
                    i += 1
                else:
                    merged.push_back(tmp[j])
                    j += 1
            while i < work.size():
                merged.push_back(work[i])
                i += 1
            while j < tmp.size():
                merged.push_back(tmp[j])
                j += 1
            work.swap(merged)
            s = 0

    cdef void _load_sorted(self, terms, vector[u64]& work, bint truncate_in):
        cdef u64 m
        cdef int k = self.trunc
        for t in terms:
            m = <u64>t
            if truncate_in and k != 0 and _mono_degree(m) >= k:
                continue
            work.push_back(m)

    def nf(self, terms):
        """Full normal form; input is a descending tuple of packed monomials."""
        cdef vector[u64] work
        cdef vector[u64] out
        self._load_sorted(terms, work, True)
        with nogil:
            self._reduce(work, out)
        return tuple(out)

    def spoly_nf(self, int i, int j):
        """Normal form of the S-polynomial of basis elements i and j."""
        cdef vector[u64]* f = &self.polys[i]
        cdef vector[u64]* g = &self.polys[j]
        cdef unsigned char bf[8]
        cdef unsigned char bg[8]
        cdef unsigned char bl[16]
        cdef int df, dg, a, b, c
        cdef u64 L, uf, ug
        cdef vector[u64] work
        cdef vector[u64] out
        df = _decode(deref(f)[0], bf)
        dg = _decode(deref(g)[0], bg)
        # lcm: union with maximal multiplicity (bytes ascending)
        a = 0
        b = 0
        c = 0
        while a < df and b < dg:
            if bf[a] == bg[b]:
                bl[c] = bf[a]; a += 1; b += 1
            elif bf[a] < bg[b]:
                bl[c] = bf[a]; a += 1
            else:
                bl[c] = bg[b]; b += 1
            c += 1
        while a < df:
            bl[c] = bf[a]; a += 1; c += 1
        while b < dg:
            bl[c] = bg[b]; b += 1; c += 1
        L = _encode(bl, c)
        uf = _mono_div(L, deref(f)[0])
        ug = _mono_div(L, deref(g)[0])
        cdef vector[u64] tf
        cdef vector[u64] tg
        with nogil:
            self._spoly_terms(f, uf, tf)
            self._spoly_terms(g, ug, tg)
            _merge_xor(tf, tg, work)
            self._reduce(work, out)
        return tuple(out)

    cdef void _spoly_terms(self, vector[u64]* f, u64 cof, vector[u64]& acc) nogil:
        cdef size_t i
        cdef int k = self.trunc
        cdef int cdeg = _mono_degree(cof)
        for i in range(deref(f).size()):
            if k != 0 and cdeg + _mono_degree(deref(f)[i]) >= k:
                continue
            acc.push_back(_mono_mul(cof, deref(f)[i]))

    def mul_mono_nf(self, terms, u):
        """Normal form of truncate(u * p) for p given as descending terms."""
        cdef u64 cof = <u64>u
        cdef int cdeg = _mono_degree(cof)
        cdef int k = self.trunc
        cdef vector[u64] work
        cdef vector[u64] out
        cdef u64 m
        for t in terms:
            m = <u64>t
            if k != 0 and cdeg + _mono_degree(m) >= k:
                continue
            work.push_back(_mono_mul(cof, m))
        with nogil:
            self._reduce(work, out)
        return tuple(out)


cdef void _merge_xor(vector[u64]& a, vector[u64]& b, vector[u64]& out) nogil:
    """Symmetric difference of two descending term vectors, descending."""
    cdef size_t i = 0
    cdef size_t j = 0
    out.clear()
    while i < a.size() and j < b.size():
        if a[i] == b[j]:
            i += 1
            j += 1
        elif a[i] > b[j]:
            out.push_back(a[i])
            i += 1
        else:
            out.push_back(b[j])
            j += 1
    while i < a.size():
        out.push_back(a[i])
        i += 1
    while j < b.size():
        out.push_back(b[j])
        j += 1
