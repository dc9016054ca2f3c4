"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Same signatures and results; used when the extension is not built.
"""

import numpy as np


def bilinear_isotropic_mask(bases, forms, p):
    """1 where every form vanishes on every pair of basis rows, else 0."""
    out = np.zeros(len(bases), dtype=np.uint8)
    forms = [f.tolist() for f in forms]
    for b, rows in enumerate(bases.tolist()):
        ok = True
        for f in forms:
            for uj in rows:
                w = [sum(fa[c] * uj[c] for c in range(len(uj))) % p for fa in f]
                if any(sum(x * y for x, y in zip(ui, w)) % p for ui in rows):
                    ok = False
                    break
            if not ok:
                break
        out[b] = ok
    return out


def quadratic_isotropic_mask(bases, qmat, p):
    """1 where q(x) = sum_{a<=c} Q[a,c] x_a x_c vanishes on the whole row span."""
    m = qmat.shape[0]
    q = qmat.tolist()
    upper = [[q[a][c] if c >= a else 0 for c in range(m)] for a in range(m)]
    polar = [[upper[a][c] + upper[c][a] for c in range(m)] for a in range(m)]
    out = np.zeros(len(bases), dtype=np.uint8)
    for b, rows in enumerate(bases.tolist()):
        ok = True
        for j, uj in enumerate(rows):
            if sum(uj[a] * upper[a][c] * uj[c] for a in range(m) for c in range(m)) % p:
                ok = False
                break
            w = [sum(pa[c] * uj[c] for c in range(m)) for pa in polar]
            if any(sum(x * y for x, y in zip(rows[i], w)) % p for i in range(j)):
                ok = False
                break
        out[b] = ok
    return out


def scalar_product_fibers(mats, p):
    """For each i, the number of j with mats[i] @ mats[j] a scalar matrix mod p."""
    ms = mats.tolist()
    out = np.zeros(len(ms), dtype=np.int64)
    for i, a in enumerate(ms):
        cnt = 0
        for b in ms:
            prod = [[sum(a[r][t] * b[t][c] for t in range(3)) % p for c in range(3)] for r in range(3)]
            d = prod[0][0]
            if (
                prod[1][1] == d
                and prod[2][2] == d
                and not (prod[0][1] or prod[0][2] or prod[1][0] or prod[1][2] or prod[2][0] or prod[2][1])
            ):
                cnt += 1
        out[i] = cnt
    return out
