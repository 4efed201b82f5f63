# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels. Arithmetic runs on gmpy2 ``mpq``; results come back as
``fractions.Fraction`` so callers cannot tell the backends apart."""

from fractions import Fraction

from gmpy2 import mpq

CONVERGED = 0
EXHAUSTED = 1
BLOWUP = 2


cdef object _new = object.__new__


cdef inline object _to_frac(object q):
    # mpq is already reduced with a positive denominator; skip Fraction's gcd
    cdef object f = _new(Fraction)
    f._numerator = int(q.numerator)
    f._denominator = int(q.denominator)
    return f


cdef list _to_mpq(seq):
    return [mpq(x.numerator, x.denominator) for x in seq]


def convolve(a, b, Py_ssize_t n):
    cdef list qa = _to_mpq(a)
    cdef list qb = _to_mpq(b)
    cdef Py_ssize_t la = len(qa), lb = len(qb)
    cdef Py_ssize_t k, i, lo, hi
    cdef list out = []
    cdef object acc, x, y
    for k in range(n):
        acc = mpq(0)
        lo = k - lb + 1
        if lo < 0:
            lo = 0
        hi = k if k < la - 1 else la - 1
        for i in range(lo, hi + 1):
            x = qa[i]
            if x:
                y = qb[k - i]
                if y:
                    acc += x * y
        out.append(_to_frac(acc))
    return out


cdef object _eval(list exponents, list coeffs, list window):
    cdef Py_ssize_t t, k, nterms = len(coeffs), order = len(window)
    cdef tuple exps
    cdef long e
    cdef object total = mpq(0), prod, c
    for t in range(nterms):
        c = coeffs[t]
        if not c:
            continue
        prod = c
        exps = <tuple>exponents[t]
        for k in range(order):
            e = exps[k]
            if e:
                prod *= window[k] ** e
        total += prod
    return total


def eval_terms(exponents, coeffs, window):
    return _to_frac(_eval(list(exponents), _to_mpq(coeffs), _to_mpq(window)))


cdef inline long _bits(object q):
    cdef long nb = q.numerator.bit_length()
    cdef long db = q.denominator.bit_length()
    return nb if nb > db else db


def iterate(exponents, coeffs, initials, target, bint certify,
            long max_steps, long max_bits):
    cdef list ex = list(exponents)
    cdef list cq = _to_mpq(coeffs)
    cdef list traj = _to_mpq(initials)
    cdef Py_ssize_t order = len(traj), run = 0, k
    cdef long step, b
    cdef object kq = mpq(target.numerator, target.denominator), v
    cdef list window
    for v in traj:
        b = _bits(v)
        if b > max_bits:
            return BLOWUP, [_to_frac(x) for x in traj], 0, b
    for v in traj:
        run = run + 1 if v == kq else 0
    if certify and run >= order:
        return CONVERGED, [_to_frac(x) for x in traj], 0, 0
    n = len(traj)
    for step in range(1, max_steps + 1):
        window = [traj[n - 1 - k] for k in range(order)]
        v = _eval(ex, cq, window)
        traj.append(v)
        n += 1
        b = _bits(v)
        if b > max_bits:
            return BLOWUP, [_to_frac(x) for x in traj], step, b
        run = run + 1 if v == kq else 0
        if certify and run >= order:
            return CONVERGED, [_to_frac(x) for x in traj], step, 0
    return EXHAUSTED, [_to_frac(x) for x in traj], max_steps, 0
