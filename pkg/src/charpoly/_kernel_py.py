"""Pure-Python polynomial kernel.

Polynomials are raw dicts mapping packed exponent keys (ints; 16 bits per
variable, so adding keys adds exponent vectors) to exact coefficients
(int or Fraction).  Zero coefficients are never stored.

Semantics here are the reference; the compiled kernel in ``_kernel.pyx``
must match them exactly.
"""

from __future__ import annotations

BACKEND = "pure"


def poly_mul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    b_items = list(b.items())
    for ka, va in a.items():
        for kb, vb in b_items:
            k = ka + kb
            cur = get(k)
            if cur is None:
                out[k] = va * vb
            else:
                cur = cur + va * vb
                if cur:
                    out[k] = cur
                else:
                    del out[k]
    return out


def poly_addmul_into(acc: dict, a: dict, b: dict) -> None:
    """acc += a * b, in place."""
    if len(a) > len(b):
        a, b = b, a
    get = acc.get
    b_items = list(b.items())
    for ka, va in a.items():
        for kb, vb in b_items:
            k = ka + kb
            cur = get(k)
            if cur is None:
                acc[k] = va * vb
            else:
                cur = cur + va * vb
                if cur:
                    acc[k] = cur
                else:
                    del acc[k]


def poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    get = out.get
    for k, v in b.items():
        cur = get(k)
        if cur is None:
            out[k] = v
        else:
            cur = cur + v
            if cur:
                out[k] = cur
            else:
                del out[k]
    return out


def poly_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    get = out.get
    for k, v in b.items():
        cur = get(k)
        if cur is None:
            out[k] = -v
        else:
            cur = cur - v
            if cur:
                out[k] = cur
            else:
                del out[k]
    return out


def poly_neg(a: dict) -> dict:
    return {k: -v for k, v in a.items()}


def poly_scale(a: dict, c) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}
