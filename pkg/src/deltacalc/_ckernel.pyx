# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled leftmost-outermost normalizer; same encoding and results as `_pykernel`."""

from libc.stdlib cimport realloc, free

NAME = "cython"

cdef enum:
    APP = -1
    ABS = -2


cdef struct Buf:
    long* data
    Py_ssize_t len
    Py_ssize_t cap


cdef int reserve(Buf* b, Py_ssize_t need) except -1:
    cdef Py_ssize_t cap
    cdef long* p
    if need <= b.cap:
        return 0
    cap = b.cap * 2 if b.cap > 0 else 64
    while cap < need:
        cap *= 2
    p = <long*>realloc(b.data, cap * sizeof(long))
    if p == NULL:
        raise MemoryError()
    b.data = p
    b.cap = cap
    return 0


cdef inline int push(Buf* b, long v) except -1:
    if b.len == b.cap:
        reserve(b, b.len + 1)
    b.data[b.len] = v
    b.len += 1
    return 0


cdef void sizes(long* code, Py_ssize_t n, long* size) noexcept nogil:
    cdef Py_ssize_t i, j
    for i in range(n - 1, -1, -1):
        if code[i] == APP:
            j = i + 1
            size[i] = 1 + size[j] + size[j + size[j]]
        elif code[i] == ABS:
            size[i] = 2 + size[i + 2]
        else:
            size[i] = 1


cdef int emit_shifted(Buf* out, long* code, long* size, Py_ssize_t start, Py_ssize_t stop,
                      long d, Buf* ends) except -1:
    cdef Py_ssize_t p = start
    cdef long c
    cdef Py_ssize_t base = ends.len
    reserve(out, out.len + (stop - start))
    while p < stop:
        while ends.len > base and ends.data[ends.len - 1] <= p:
            ends.len -= 1
        c = code[p]
        if c == ABS:
            out.data[out.len] = ABS
            out.data[out.len + 1] = code[p + 1]
            out.len += 2
            push(ends, p + size[p])
            p += 2
            continue
        if c >= ends.len - base:
            c += d
        out.data[out.len] = c
        out.len += 1
        p += 1
    ends.len = base
    return 0


cdef int contract_beta(Buf* out, long* code, Py_ssize_t n, long* size, Py_ssize_t i,
                       Buf* ends, Buf* inner) except -1:
    cdef Py_ssize_t body = i + 3
    cdef Py_ssize_t arg = body + size[body]
    cdef Py_ssize_t arg_end = arg + size[arg]
    cdef Py_ssize_t p, k
    cdef long c, depth
    out.len = 0
    reserve(out, n)
    for k in range(i):
        out.data[k] = code[k]
    out.len = i
    ends.len = 0
    p = body
    while p < arg:
        while ends.len > 0 and ends.data[ends.len - 1] <= p:
            ends.len -= 1
        c = code[p]
        if c == ABS:
            push(out, ABS)
            push(out, code[p + 1])
            push(ends, p + size[p])
            p += 2
            continue
        if c >= 0:
            depth = ends.len
            if c == depth:
                emit_shifted(out, code, size, arg, arg_end, depth, inner)
            elif c > depth:
                push(out, c - 1)
            else:
                push(out, c)
        else:
            push(out, c)
        p += 1
    reserve(out, out.len + (n - arg_end))
    for k in range(arg_end, n):
        out.data[out.len] = code[k]
        out.len += 1
    return 0


cdef Py_ssize_t find_beta(long* code, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i
    for i in range(n - 1):
        if code[i] == APP and code[i + 1] == ABS:
            return i
    return -1


cdef bint mentions_outer(long* code, long* size, Py_ssize_t start, Py_ssize_t stop, Buf* ends) except -1:
    cdef Py_ssize_t p = start
    cdef long c
    ends.len = 0
    while p < stop:
        while ends.len > 0 and ends.data[ends.len - 1] <= p:
            ends.len -= 1
        c = code[p]
        if c == ABS:
            push(ends, p + size[p])
            p += 2
            continue
        if c >= 0 and c == ends.len:
            return True
        p += 1
    return False


cdef Py_ssize_t find_eta(long* code, Py_ssize_t n, long* size, Buf* ends) except -2:
    cdef Py_ssize_t i, fun, var
    for i in range(n - 2):
        if code[i] == ABS and code[i + 2] == APP:
            fun = i + 3
            var = fun + size[fun]
            if code[var] == 0 and not mentions_outer(code, size, fun, var, ends):
                return i
    return -1


cdef int contract_eta(Buf* out, long* code, Py_ssize_t n, long* size, Py_ssize_t i, Buf* ends) except -1:
    cdef Py_ssize_t fun = i + 3
    cdef Py_ssize_t stop = fun + size[fun]
    cdef Py_ssize_t k
    out.len = 0
    reserve(out, n)
    for k in range(i):
        out.data[k] = code[k]
    out.len = i
    ends.len = 0
    emit_shifted(out, code, size, fun, stop, -1, ends)
    for k in range(i + size[i], n):
        push(out, code[k])
    return 0


def normalize_code(code, bint eta, long fuel, Py_ssize_t max_len):
    """Return (normal form or None, steps taken)."""
    cdef Buf cur, nxt, ends, inner, sz
    cdef Buf tmp
    cdef Py_ssize_t i, k
    cdef long steps = 0
    cur.data = NULL; cur.len = 0; cur.cap = 0
    nxt.data = NULL; nxt.len = 0; nxt.cap = 0
    ends.data = NULL; ends.len = 0; ends.cap = 0
    inner.data = NULL; inner.len = 0; inner.cap = 0
    sz.data = NULL; sz.len = 0; sz.cap = 0
    try:
        reserve(&cur, len(code) + 1)
        for v in code:
            cur.data[cur.len] = v
            cur.len += 1
        while True:
            i = find_beta(cur.data, cur.len)
            if i < 0:
                break
            if steps >= fuel:
                return None, steps
            reserve(&sz, cur.len)
            sizes(cur.data, cur.len, sz.data)
            contract_beta(&nxt, cur.data, cur.len, sz.data, i, &ends, &inner)
            tmp = cur; cur = nxt; nxt = tmp
            steps += 1
            if cur.len > max_len:
                return None, steps
        if eta:
            while True:
                reserve(&sz, cur.len)
                sizes(cur.data, cur.len, sz.data)
                i = find_eta(cur.data, cur.len, sz.data, &ends)
                if i < 0:
                    break
                if steps >= fuel:
                    return None, steps
                contract_eta(&nxt, cur.data, cur.len, sz.data, i, &ends)
                tmp = cur; cur = nxt; nxt = tmp
                steps += 1
        return [cur.data[k] for k in range(cur.len)], steps
    finally:
        free(cur.data)
        free(nxt.data)
        free(ends.data)
        free(inner.data)
        free(sz.data)
