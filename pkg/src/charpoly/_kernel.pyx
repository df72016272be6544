# cython: language_level=3
"""Compiled polynomial kernel.

Same contract as ``_kernel_py``: dicts from packed exponent keys to exact
int/Fraction coefficients, zero coefficients dropped.  Coefficient arithmetic
stays in Python object space (exactness first); the win over the pure kernel
is the loop and dict machinery.
"""

BACKEND = "compiled"


def poly_mul(dict a, dict b):
    cdef dict out = {}
    if len(a) > len(b):
        a, b = b, a
    cdef list b_items = list(b.items())
    cdef object ka, va, kb, vb, k, cur, prod
    cdef Py_ssize_t i, nb = len(b_items)
    for ka, va in a.items():
        for i in range(nb):
            kb, vb = <tuple>b_items[i]
            k = ka + kb
            prod = va * vb
            cur = out.get(k)
            if cur is None:
                out[k] = prod
            else:
                cur = cur + prod
                if cur:
                    out[k] = cur
                else:
                    del out[k]
    return out


def poly_addmul_into(dict acc, dict a, dict b):
    if len(a) > len(b):
        a, b = b, a
    cdef list b_items = list(b.items())
    cdef object ka, va, kb, vb, k, cur, prod
    cdef Py_ssize_t i, nb = len(b_items)
    for ka, va in a.items():
        for i in range(nb):
            kb, vb = <tuple>b_items[i]
            k = ka + kb
            prod = va * vb
            cur = acc.get(k)
            if cur is None:
                acc[k] = prod
            else:
                cur = cur + prod
                if cur:
                    acc[k] = cur
                else:
                    del acc[k]
    return None


def poly_add(dict a, dict b):
    cdef dict out = dict(a)
    cdef object k, v, cur
    for k, v in b.items():
        cur = out.get(k)
        if cur is None:
            out[k] = v
        else:
            cur = cur + v
            if cur:
                out[k] = cur
            else:
                del out[k]
    return out


def poly_sub(dict a, dict b):
    cdef dict out = dict(a)
    cdef object k, v, cur
    for k, v in b.items():
        cur = out.get(k)
        if cur is None:
            out[k] = -v
        else:
            cur = cur - v
            if cur:
                out[k] = cur
            else:
                del out[k]
    return out


def poly_neg(dict a):
    cdef dict out = {}
    cdef object k, v
    for k, v in a.items():
        out[k] = -v
    return out


def poly_scale(dict a, c):
    cdef dict out = {}
    cdef object k, v
    if not c:
        return out
    for k, v in a.items():
        out[k] = v * c
    return out
