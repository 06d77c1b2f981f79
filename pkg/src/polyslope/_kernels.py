"""Compiled inner loops for the brute-force exponential sums.

Everything works on discrete logs base a fixed generator g of F_Q^*, with
``order = Q - 1``.  A point x in (F_Q^*)^n is a vector of exponents e_l.  For
block i the term a_i / prod x^b has log ``c_i - sum_l b_l e_l``.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _add_log(acc_zero, acc_log, t, order, zech):
    # (acc) + g^t, where acc is zero or g^acc_log
    if acc_zero:
        return False, t
    z = zech[(t - acc_log) % order]
    if z < 0:
        return True, 0
    return False, (acc_log + z) % order


@njit(cache=True, nogil=True)
def count_chunk(lo, hi, order, p, block_of, bmod, coeff_log, trace_log, zech, log_m1):
    """Trace histogram of the solutions whose leading exponent lies in [lo, hi).

    The innermost variable is solved for by scanning its exponent with a
    decrementing log, so the constraint test is one integer comparison.
    """
    n = block_of.shape[0]
    r = coeff_log.shape[0]
    counts = np.zeros(p, np.int64)
    last = n - 1
    lb = block_of[last]
    bl = bmod[last]

    if n == 1:
        for e in range(lo, hi):
            if (coeff_log[0] - bl * e) % order == 0:
                counts[trace_log[e]] += 1
        return counts

    digits = np.zeros(n, np.int64)
    bsum = np.zeros(r, np.int64)
    for e0 in range(lo, hi):
        for j in range(n):
            digits[j] = 0
        for i in range(r):
            bsum[i] = 0
        digits[0] = e0
        bsum[block_of[0]] = (bmod[0] * e0) % order
        tpre = trace_log[e0]
        for j in range(1, last):
            tpre += trace_log[0]
        while True:
            # sum of the block terms other than the innermost block
            acc_zero = True
            acc_log = 0
            for i in range(r):
                if i != lb:
                    acc_zero, acc_log = _add_log(acc_zero, acc_log, (coeff_log[i] - bsum[i]) % order,
                                                 order, zech)
            # innermost block term must equal 1 - acc
            ok = True
            if acc_zero:
                target = 0
            else:
                z = zech[(acc_log + log_m1) % order]
                if z < 0:
                    ok = False
                    target = 0
                else:
                    target = z
            if ok:
                x = (coeff_log[lb] - bsum[lb] - target) % order
                for e in range(order):
                    if x == 0:
                        counts[(tpre + trace_log[e]) % p] += 1
                    x -= bl
                    if x < 0:
                        x += order
            # odometer over the middle digits 1..last-1
            j = last - 1
            while j >= 1:
                old = digits[j]
                blk = block_of[j]
                if old + 1 < order:
                    digits[j] = old + 1
                    bsum[blk] = (bsum[blk] + bmod[j]) % order
                    tpre += trace_log[old + 1] - trace_log[old]
                    break
                digits[j] = 0
                bsum[blk] = (bsum[blk] - bmod[j] * old) % order
                tpre += trace_log[0] - trace_log[old]
                j -= 1
            if j < 1:
                break
    return counts


def warm_up() -> None:
    """Compile the kernel on a trivial input."""
    z = np.array([-1], np.int64)
    count_chunk(0, 1, 1, 2, np.array([0, 0], np.int64), np.array([1, 1], np.int64),
                np.array([0], np.int64), np.array([1], np.int64), z, 0)
