"""Dense univariate polynomial helpers over an exact field.

Polynomials are lists of coefficients, lowest degree first.  The functions
are generic: they work for ``fractions.Fraction`` as well as for
``CycloElem`` scalars, requiring only field arithmetic and truthiness.
The zero polynomial is the empty list.
"""

from __future__ import annotations


def trim(p):
    """Drop trailing zero coefficients."""
    d = len(p) - 1
    while d >= 0 and not p[d]:
        d -= 1
    return list(p[: d + 1])


def degree(p):
    """Degree of p, or -1 for the zero polynomial."""
    return len(trim(p)) - 1


def add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return trim(out)


def neg(p):
    return [-c for c in p]


def scale(p, c):
    if not c:
        return []
    return [ci * c for ci in p]


def mul(p, q):
    p, q = trim(p), trim(q)
    if not p or not q:
        return []
    zero = p[0] - p[0]
    out = [zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_poly(p, q):
    """Division with remainder over a field; q must be nonzero."""
    rem = list(trim(p))
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    dq = len(q) - 1
    lead = q[dq]
    zero = lead - lead
    quot = [zero] * max(0, len(rem) - dq)
    while rem and len(rem) - 1 >= dq:
        dp = len(rem) - 1
        c = rem[dp] / lead
        quot[dp - dq] = c
        for i in range(dq + 1):
            rem[dp - dq + i] = rem[dp - dq + i] - c * q[i]
        rem = trim(rem)
    return trim(quot), rem


def monic(p):
    p = trim(p)
    if not p:
        return p
    lead = p[-1]
    return [c / lead for c in p]


def gcd(p, q):
    """Monic gcd via the Euclidean algorithm."""
    p, q = trim(p), trim(q)
    while q:
        p, q = q, divmod_poly(p, q)[1]
    return monic(p)


def ext_gcd(p, q):
    """Return (g, s, t) with s*p + t*q = g, g monic (or zero)."""
    one = _unit_of(p, q)
    r0, r1 = trim(p), trim(q)
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        quot, rem = divmod_poly(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, add(s0, neg(mul(quot, s1)))
        t0, t1 = t1, add(t0, neg(mul(quot, t1)))
    if not r0:
        return [], s0, t0
    lead = r0[-1]
    return ([c / lead for c in r0], [c / lead for c in s0], [c / lead for c in t0])


def _unit_of(p, q):
    for c in list(p) + list(q):
        if c:
            return c / c
    return 1


def derivative(p):
    return trim([p[i] * i for i in range(1, len(p))])


def eval_at(p, x):
    acc = None
    for c in reversed(trim(p)):
        acc = c if acc is None else acc * x + c
    return 0 if acc is None else acc


def squarefree_degree(p):
    """Number of distinct roots of p in the algebraic closure."""
    p = trim(p)
    if degree(p) <= 0:
        return 0
    g = gcd(p, derivative(p))
    return degree(p) - degree(g)
