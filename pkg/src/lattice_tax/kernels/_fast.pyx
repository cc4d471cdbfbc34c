# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend: multi-word bitset loops in C.

Same API and semantics as ``lattice_tax.kernels.pure``; Python int masks at
the boundary, fixed-width word arrays inside.  Parity with the pure backend
is enforced by tests.
"""

from cpython.long cimport PyLong_FromUnsignedLongLong
from libc.stdlib cimport calloc, free, malloc, realloc
from libc.string cimport memcpy, memset

ctypedef unsigned long long u64

cdef extern from *:
    """
    #define POPCNT64(x) __builtin_popcountll(x)
    """
    int POPCNT64(u64 x) nogil

cdef int PROGRESS_EVERY = 10000

cdef u64 _ONES = <u64>0xFFFFFFFFFFFFFFFFULL


# -- conversions ---------------------------------------------------------

cdef int _pack(object mask, u64 *out, int w) except -1:
    cdef int k
    for k in range(w):
        out[k] = <u64>(mask & 0xFFFFFFFFFFFFFFFF)
        mask >>= 64
    if mask != 0:
        raise ValueError("mask wider than the declared universe")
    return 0


cdef object _unpack(u64 *words, int w):
    cdef object out = 0
    cdef int k
    for k in range(w - 1, -1, -1):
        out = (out << 64) | PyLong_FromUnsignedLongLong(words[k])
    return out


cdef u64 *_pack_rows(object rows, int n_objs, int w) except NULL:
    cdef u64 *packed = <u64 *>malloc(<size_t>n_objs * w * sizeof(u64))
    if packed == NULL:
        raise MemoryError()
    cdef int g
    try:
        for g in range(n_objs):
            _pack(rows[g], packed + g * w, w)
    except BaseException:
        free(packed)
        raise
    return packed


cdef void _full_mask(u64 *out, int n_bits, int w) nogil:
    cdef int k
    for k in range(w):
        if (k + 1) * 64 <= n_bits:
            out[k] = _ONES
        elif k * 64 >= n_bits:
            out[k] = 0
        else:
            out[k] = (<u64>1 << (n_bits - k * 64)) - 1


cdef inline bint _superset(u64 *big, u64 *small, int w) nogil:
    cdef int k
    for k in range(w):
        if (big[k] & small[k]) != small[k]:
            return False
    return True


cdef inline bint _eq(u64 *a, u64 *b, int w) nogil:
    cdef int k
    for k in range(w):
        if a[k] != b[k]:
            return False
    return True


cdef void _close_intent_c(u64 *rows, int n_objs, u64 *b, u64 *out, int n_attrs, int w) nogil:
    cdef int g, k
    _full_mask(out, n_attrs, w)
    for g in range(n_objs):
        if _superset(rows + g * w, b, w):
            for k in range(w):
                out[k] &= rows[g * w + k]


# -- point operations ------------------------------------------------------

def extent_of(rows, b):
    """Object mask of B'."""
    cdef int n_objs = len(rows)
    cdef int w = 1
    cdef object m
    for m in rows:
        while m >> (64 * w):
            w += 1
    while b >> (64 * w):
        w += 1
    cdef u64 *packed = _pack_rows(rows, n_objs, w)
    cdef u64 *bw = <u64 *>malloc(w * sizeof(u64))
    cdef object out = 0
    cdef int g
    try:
        if bw == NULL:
            raise MemoryError()
        _pack(b, bw, w)
        for g in range(n_objs):
            if _superset(packed + g * w, bw, w):
                out |= 1 << g
        return out
    finally:
        free(bw)
        free(packed)


def intent_of(rows, n_attrs, a):
    """Attribute mask of A' (all attributes for empty A)."""
    cdef int n_objs = len(rows)
    cdef int n = n_attrs
    cdef int w = (n + 63) >> 6
    if w == 0:
        w = 1
    cdef u64 *packed = _pack_rows(rows, n_objs, w)
    cdef u64 *acc = <u64 *>malloc(w * sizeof(u64))
    cdef int g
    try:
        if acc == NULL:
            raise MemoryError()
        _full_mask(acc, n, w)
        for g in range(n_objs):
            if (a >> g) & 1:
                for k in range(w):
                    acc[k] &= packed[g * w + k]
        return _unpack(acc, w)
    finally:
        free(acc)
        free(packed)


def close_intent(rows, n_attrs, b):
    """B'' in one sweep."""
    cdef int n_objs = len(rows)
    cdef int n = n_attrs
    cdef int w = (n + 63) >> 6
    if w == 0:
        w = 1
    cdef u64 *packed = _pack_rows(rows, n_objs, w)
    cdef u64 *bw = <u64 *>malloc(w * sizeof(u64))
    cdef u64 *out = <u64 *>malloc(w * sizeof(u64))
    try:
        if bw == NULL or out == NULL:
            raise MemoryError()
        _pack(b, bw, w)
        _close_intent_c(packed, n_objs, bw, out, n, w)
        return _unpack(out, w)
    finally:
        free(out)
        free(bw)
        free(packed)


def close_extent(rows, n_attrs, a):
    """A'' as an object mask."""
    return extent_of(rows, intent_of(rows, n_attrs, a))


# -- lectic enumeration of closed intents -----------------------------------

cdef void _prefix_mask(u64 *out, int i, int w) nogil:
    # bits for attribute indices < i
    _full_mask(out, i, w)


def closed_intents(rows, n_attrs, cap=None, progress=None):
    """All closed attribute sets in lectic order; see the pure backend."""
    cdef int n_objs = len(rows)
    cdef int n = n_attrs
    cdef int w = (n + 63) >> 6
    if w == 0:
        w = 1
    cdef u64 *packed = _pack_rows(rows, n_objs, w)
    cdef u64 *a = <u64 *>calloc(w, sizeof(u64))
    cdef u64 *b = <u64 *>malloc(w * sizeof(u64))
    cdef u64 *cand = <u64 *>malloc(w * sizeof(u64))
    cdef u64 *full = <u64 *>malloc(w * sizeof(u64))
    cdef u64 *pref = <u64 *>malloc(w * sizeof(u64))
    cdef long long closures = 1
    cdef long long cap_v = -1
    cdef int i, k, wi
    cdef bint ok
    if cap is not None:
        cap_v = cap
    out = []
    try:
        if a == NULL or b == NULL or cand == NULL or full == NULL or pref == NULL:
            raise MemoryError()
        _full_mask(full, n, w)
        _close_intent_c(packed, n_objs, a, b, n, w)
        memcpy(a, b, w * sizeof(u64))
        out.append(_unpack(a, w))
        while not _eq(a, full, w):
            if cap_v >= 0 and len(out) >= cap_v:
                return out, False
            for i in range(n - 1, -1, -1):
                wi = i >> 6
                if (a[wi] >> (i & 63)) & 1:
                    continue
                _prefix_mask(pref, i, w)
                for k in range(w):
                    cand[k] = a[k] & pref[k]
                cand[wi] |= <u64>1 << (i & 63)
                _close_intent_c(packed, n_objs, cand, b, n, w)
                closures += 1
                if progress is not None and closures % PROGRESS_EVERY == 0:
                    progress(closures)
                ok = True
                for k in range(w):
                    if (b[k] & pref[k]) != (a[k] & pref[k]):
                        ok = False
                        break
                if ok:
                    memcpy(a, b, w * sizeof(u64))
                    break
            out.append(_unpack(a, w))
        return out, True
    finally:
        free(pref)
        free(full)
        free(cand)
        free(b)
        free(a)
        free(packed)


# -- covering relation -------------------------------------------------------

def cover_edges(extents, rows, n_attrs):
    """(child, parent) covering pairs via Lindig's counting criterion."""
    cdef int n_objs = len(rows)
    cdef int n = n_attrs
    cdef int w = (n + 63) >> 6
    cdef int wg = (n_objs + 63) >> 6
    if w == 0:
        w = 1
    if wg == 0:
        wg = 1
    cdef int n_concepts = len(extents)
    cdef u64 *packed = _pack_rows(rows, n_objs, w)
    cdef u64 *exts = NULL
    cdef u64 *intent = <u64 *>malloc(w * sizeof(u64))
    cdef u64 *ext = <u64 *>malloc(wg * sizeof(u64))
    cdef int k, g, j, eq_k
    index = {}
    for k in range(n_concepts):
        index[extents[k]] = k
    edges = []
    try:
        if intent == NULL or ext == NULL:
            raise MemoryError()
        exts = <u64 *>malloc(<size_t>n_concepts * wg * sizeof(u64))
        if exts == NULL:
            raise MemoryError()
        for k in range(n_concepts):
            _pack(extents[k], exts + k * wg, wg)
        for k in range(n_concepts):
            counts = {}
            for g in range(n_objs):
                if (exts[k * wg + (g >> 6)] >> (g & 63)) & 1:
                    continue
                # intent of extent+{g}
                _full_mask(intent, n, w)
                for j in range(n_objs):
                    if j == g or (exts[k * wg + (j >> 6)] >> (j & 63)) & 1:
                        for eq_k in range(w):
                            intent[eq_k] &= packed[j * w + eq_k]
                # re-derive the extent
                memset(ext, 0, wg * sizeof(u64))
                for j in range(n_objs):
                    if _superset(packed + j * w, intent, w):
                        ext[j >> 6] |= <u64>1 << (j & 63)
                e_int = _unpack(ext, wg)
                counts[e_int] = counts.get(e_int, 0) + 1
            a_int = extents[k]
            for e_int, c in counts.items():
                if c == (e_int & ~a_int).bit_count():
                    edges.append((k, index[e_int]))
        return edges
    finally:
        free(ext)
        free(intent)
        free(exts)
        free(packed)


# -- pseudo-intents / canonical base ------------------------------------------

cdef struct ImpList:
    u64 *premises
    u64 *closures
    int count
    int capacity


cdef int _imps_push(ImpList *L, u64 *premise, u64 *closure, int w) except -1:
    cdef u64 *np
    cdef u64 *nc
    if L.count == L.capacity:
        L.capacity = L.capacity * 2 if L.capacity else 16
        np = <u64 *>realloc(L.premises, <size_t>L.capacity * w * sizeof(u64))
        nc = <u64 *>realloc(L.closures, <size_t>L.capacity * w * sizeof(u64))
        if np == NULL or nc == NULL:
            free(np if np != NULL else L.premises)
            free(nc if nc != NULL else L.closures)
            L.premises = NULL
            L.closures = NULL
            raise MemoryError()
        L.premises = np
        L.closures = nc
    memcpy(L.premises + L.count * w, premise, w * sizeof(u64))
    memcpy(L.closures + L.count * w, closure, w * sizeof(u64))
    L.count += 1
    return 0


cdef void _lclose_proper(ImpList *L, u64 *x, int w) nogil:
    """Fixpoint of firing premise -> closure for premises properly contained in x."""
    cdef bint changed = True
    cdef bint fire
    cdef int t, k
    while changed:
        changed = False
        for t in range(L.count):
            if _superset(x, L.premises + t * w, w) and not _eq(x, L.premises + t * w, w):
                fire = False
                for k in range(w):
                    if (L.closures[t * w + k] | x[k]) != x[k]:
                        fire = True
                        break
                if fire:
                    for k in range(w):
                        x[k] |= L.closures[t * w + k]
                    changed = True


def dg_base(rows, n_attrs):
    """Pseudo-intents with closures, lectic premise order (Ganter's enumeration)."""
    cdef int n_objs = len(rows)
    cdef int n = n_attrs
    cdef int w = (n + 63) >> 6
    if w == 0:
        w = 1
    cdef u64 *packed = _pack_rows(rows, n_objs, w)
    cdef u64 *a = <u64 *>calloc(w, sizeof(u64))
    cdef u64 *c = <u64 *>malloc(w * sizeof(u64))
    cdef u64 *cand = <u64 *>malloc(w * sizeof(u64))
    cdef u64 *full = <u64 *>malloc(w * sizeof(u64))
    cdef u64 *pref = <u64 *>malloc(w * sizeof(u64))
    cdef ImpList L
    L.premises = NULL
    L.closures = NULL
    L.count = 0
    L.capacity = 0
    cdef int i, k, wi
    cdef bint ok
    base = []
    try:
        if a == NULL or c == NULL or cand == NULL or full == NULL or pref == NULL:
            raise MemoryError()
        _full_mask(full, n, w)
        while True:
            _close_intent_c(packed, n_objs, a, c, n, w)
            if not _eq(a, c, w):
                base.append((_unpack(a, w), _unpack(c, w)))
                _imps_push(&L, a, c, w)
            if _eq(a, full, w):
                return base
            for i in range(n - 1, -1, -1):
                wi = i >> 6
                if (a[wi] >> (i & 63)) & 1:
                    continue
                _prefix_mask(pref, i, w)
                for k in range(w):
                    cand[k] = a[k] & pref[k]
                cand[wi] |= <u64>1 << (i & 63)
                _lclose_proper(&L, cand, w)
                ok = True
                for k in range(w):
                    if (cand[k] & pref[k]) != (a[k] & pref[k]):
                        ok = False
                        break
                if ok:
                    memcpy(a, cand, w * sizeof(u64))
                    break
    finally:
        free(L.closures)
        free(L.premises)
        free(pref)
        free(full)
        free(cand)
        free(c)
        free(a)
        free(packed)
