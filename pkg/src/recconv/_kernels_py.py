"""Pure-Python kernels. Same API and results as the compiled ``_kernels_c``."""

from fractions import Fraction

CONVERGED = 0
EXHAUSTED = 1
BLOWUP = 2


def convolve(a, b, n):
    """Cauchy product of coefficient lists ``a`` and ``b`` truncated to ``n`` terms."""
    out = []
    la = len(a)
    lb = len(b)
    for k in range(n):
        acc = Fraction(0)
        lo = max(0, k - lb + 1)
        hi = min(k, la - 1)
        for i in range(lo, hi + 1):
            x = a[i]
            if x:
                y = b[k - i]
                if y:
                    acc += x * y
        out.append(acc)
    return out


def eval_terms(exponents, coeffs, window):
    """Evaluate sum(coeff * prod(window[k] ** e[k])) over all terms."""
    total = Fraction(0)
    for exps, c in zip(exponents, coeffs):
        if not c:
            continue
        prod = c
        for w, e in zip(window, exps):
            if e:
                prod *= w ** e
        total += prod
    return total


def _too_big(v, max_bits):
    return v.numerator.bit_length() > max_bits or v.denominator.bit_length() > max_bits


def iterate(exponents, coeffs, initials, target, certify, max_steps, max_bits):
    """Forward-iterate a recurrence until a run of ``len(initials)`` copies of
    ``target`` appears (only checked when ``certify`` is true), ``max_steps``
    new terms have been produced, or a term exceeds ``max_bits``.

    Returns ``(status, trajectory, steps, bits)``.
    """
    order = len(initials)
    traj = list(initials)
    for v in traj:
        if _too_big(v, max_bits):
            return BLOWUP, traj, 0, max(v.numerator.bit_length(), v.denominator.bit_length())
    run = 0
    for v in traj:
        run = run + 1 if v == target else 0
    if certify and run >= order:
        return CONVERGED, traj, 0, 0
    for step in range(1, max_steps + 1):
        # window is most-recent first
        window = traj[-1:-order - 1:-1]
        v = eval_terms(exponents, coeffs, window)
        traj.append(v)
        if _too_big(v, max_bits):
            return BLOWUP, traj, step, max(v.numerator.bit_length(), v.denominator.bit_length())
        run = run + 1 if v == target else 0
        if certify and run >= order:
            return CONVERGED, traj, step, 0
    return EXHAUSTED, traj, max_steps, 0
