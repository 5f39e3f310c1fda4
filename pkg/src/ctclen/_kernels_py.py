"""Pure-Python kernels. Semantics must stay identical to ``_kernels.pyx``."""
import math

import numpy as np

NEG_INF = -math.inf

SEPARATOR, APPENDED, UNIT = 0, 1, 2


def fill_table(logp, widths, blank, cand, alpha, n_buckets, merge, weights_code):
    """Fill the (slot, bucket) table.

    Returns ``(score, length, last, prev)`` arrays of shape (S, n_buckets + 1).
    ``last[s, l]`` is the token emitted at slot ``s`` by the cell's
    hypothesis and ``prev[s, l]`` the bucket it extends at slot ``s - 1``
    (-1 at slot 0 and for unreachable cells).
    """
    S = logp.shape[0]
    nb = n_buckets + 1
    lp = logp.tolist()
    wd = [int(w) for w in widths]
    cands = cand.tolist()
    blank = int(blank)

    score = [[NEG_INF] * nb for _ in range(S)]
    length = [[0] * nb for _ in range(S)]
    last = [[-1] * nb for _ in range(S)]
    prev = [[-1] * nb for _ in range(S)]

    for s in range(S):
        row = lp[s]
        sc, ln, la, pv = score[s], length[s], last[s], prev[s]
        if s == 0:
            # a virtual empty prefix at bucket 0 is extended like any other cell
            srcs = [(0, 0.0, 0, -1)]
        else:
            psc, pln, pla = score[s - 1], length[s - 1], last[s - 1]
            srcs = [(l, psc[l], pln[l], pla[l]) for l in range(nb) if psc[l] != NEG_INF]

        # blank, then merged repeat; both keep the bucket
        for l, src, plen, plast in srcs:
            c = src + row[blank]
            if c > sc[l]:
                sc[l], ln[l], la[l], pv[l] = c, plen, blank, (l if s else -1)
            if merge and s > 0 and plast != blank:
                c = src + row[plast]
                if c > sc[l]:
                    sc[l], ln[l], la[l], pv[l] = c, plen, plast, l

        # a new word moves the hypothesis into the bucket of its new length
        words = cands[s]
        for l, src, plen, plast in srcs:
            for w in words:
                if merge and w == plast:
                    continue
                v = row[w]
                if v == NEG_INF:
                    continue
                if weights_code == SEPARATOR:
                    nlen = plen + wd[w] + (1 if plen > 0 else 0)
                elif weights_code == APPENDED:
                    nlen = plen + wd[w] + 1
                else:
                    nlen = plen + 1
                tb = (nlen + alpha - 1) // alpha
                if tb >= nb:
                    continue
                c = src + v
                if c > sc[tb]:
                    sc[tb], ln[tb], la[tb], pv[tb] = c, nlen, w, (l if s else -1)

    return (
        np.array(score, dtype=np.float64),
        np.array(length, dtype=np.int64),
        np.array(last, dtype=np.int64),
        np.array(prev, dtype=np.int64),
    )


def _logaddexp(a, b):
    if a == NEG_INF:
        return b
    if b == NEG_INF:
        return a
    if a > b:
        return a + math.log1p(math.exp(b - a))
    return b + math.log1p(math.exp(a - b))


def ctc_forward(logp, ext, blank):
    """Log marginal of the blank-interleaved label sequence ``ext``."""
    S = logp.shape[0]
    n = len(ext)
    lp = logp.tolist()
    ext = [int(e) for e in ext]
    alpha = [NEG_INF] * n
    alpha[0] = lp[0][ext[0]]
    if n > 1:
        alpha[1] = lp[0][ext[1]]
    for s in range(1, S):
        row = lp[s]
        new = [NEG_INF] * n
        for i in range(n):
            a = alpha[i]
            if i >= 1:
                a = _logaddexp(a, alpha[i - 1])
            if i >= 2 and ext[i] != blank and ext[i] != ext[i - 2]:
                a = _logaddexp(a, alpha[i - 2])
            if a != NEG_INF:
                new[i] = a + row[ext[i]]
        alpha = new
    if n == 1:
        return alpha[0]
    return _logaddexp(alpha[n - 1], alpha[n - 2])
