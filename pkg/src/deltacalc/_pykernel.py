"""Leftmost-outermost normalizer over prefix-encoded de Bruijn terms.

Encoding, one int per slot:
  -1         application, followed by function then argument
  -2, h      abstraction with binder-hint id h >= 0, followed by its body
  k >= 0     bound variable with de Bruijn index k
  -3 - j     free variable number j

Mirrors `_ckernel.pyx` slot for slot; both must return identical results.
"""

NAME = "python"

APP = -1
ABS = -2


def _sizes(code):
    n = len(code)
    size = [1] * n
    for i in range(n - 1, -1, -1):
        c = code[i]
        if c == APP:
            j = i + 1
            size[i] = 1 + size[j] + size[j + size[j]]
        elif c == ABS:
            size[i] = 2 + size[i + 2]
    return size


def _emit_shifted(out, code, size, start, stop, d):
    if d == 0:
        out.extend(code[start:stop])
        return
    ends = []
    p = start
    while p < stop:
        while ends and ends[-1] <= p:
            ends.pop()
        c = code[p]
        if c == ABS:
            out.append(ABS)
            out.append(code[p + 1])
            ends.append(p + size[p])
            p += 2
            continue
        if c >= len(ends):
            c += d
        out.append(c)
        p += 1


def _contract_beta(code, size, i):
    body = i + 3
    arg = body + size[body]
    arg_end = arg + size[arg]
    out = code[:i]
    ends = []
    p = body
    while p < arg:
        while ends and ends[-1] <= p:
            ends.pop()
        c = code[p]
        if c == ABS:
            out.append(ABS)
            out.append(code[p + 1])
            ends.append(p + size[p])
            p += 2
            continue
        if c >= 0:
            depth = len(ends)
            if c == depth:
                _emit_shifted(out, code, size, arg, arg_end, depth)
            elif c > depth:
                out.append(c - 1)
            else:
                out.append(c)
        else:
            out.append(c)
        p += 1
    out.extend(code[arg_end:])
    return out


def _find_beta(code):
    for i in range(len(code) - 1):
        if code[i] == APP and code[i + 1] == ABS:
            return i
    return -1


def _mentions_outer(code, size, start, stop):
    # does the subterm refer to the binder just outside it?
    ends = []
    p = start
    while p < stop:
        while ends and ends[-1] <= p:
            ends.pop()
        c = code[p]
        if c == ABS:
            ends.append(p + size[p])
            p += 2
            continue
        if c >= 0 and c == len(ends):
            return True
        p += 1
    return False


def _find_eta(code, size):
    n = len(code)
    for i in range(n - 2):
        if code[i] == ABS and code[i + 2] == APP:
            fun = i + 3
            var = fun + size[fun]
            if code[var] == 0 and not _mentions_outer(code, size, fun, var):
                return i
    return -1


def _contract_eta(code, size, i):
    fun = i + 3
    stop = fun + size[fun]
    out = code[:i]
    _emit_shifted(out, code, size, fun, stop, -1)
    out.extend(code[i + size[i]:])
    return out


def normalize_code(code, eta, fuel, max_len):
    """Return (normal form or None, steps taken)."""
    code = list(code)
    steps = 0
    while True:
        i = _find_beta(code)
        if i < 0:
            break
        if steps >= fuel:
            return None, steps
        code = _contract_beta(code, _sizes(code), i)
        steps += 1
        if len(code) > max_len:
            return None, steps
    if eta:
        # eta steps keep a beta-normal term beta-normal
        while True:
            size = _sizes(code)
            i = _find_eta(code, size)
            if i < 0:
                break
            if steps >= fuel:
                return None, steps
            code = _contract_eta(code, size, i)
            steps += 1
    return code, steps
