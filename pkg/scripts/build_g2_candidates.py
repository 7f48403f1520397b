"""Generate the default g=2 determinant-test candidate family.

Enumerates words in standard Sp(2, Z) generators, collects the distinct
bottom-row classes (C, D) modulo left GL(2, Z) with C != 0 and entries
bounded by --keep-bound, and writes one full symplectic representative per
class to src/siegeljacobi/data/candidates_g2.json.

A membership region cut out by ANY family of true symplectic elements
contains the true fundamental domain, so a larger family is never wrong,
only slower.  To check the shipped family is not too small, --check samples
points from the Monte Carlo proposal, keeps those accepted by the shipped
family, and counts how many violate the det condition for a strictly larger
family (entries up to --check-bound).  Zero violations over millions of
samples is the evidence the shipped set is adequate for volume work.
"""

import argparse
import itertools
import json
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from siegeljacobi.group_core import SymplecticInt  # noqa: E402
from siegeljacobi.intmat import to_float  # noqa: E402
from siegeljacobi.jsonio import encode_symplectic  # noqa: E402


def hnf_rows(mat):
    """Canonical row Hermite form (left GL_n(Z) action), as a hashable tuple."""
    m = [list(map(int, row)) for row in mat]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            while m[i][c] != 0:
                q = m[r][c] // m[i][c]
                m[r] = [x - q * y for x, y in zip(m[r], m[i])]
                m[r], m[i] = m[i], m[r]
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return tuple(tuple(row) for row in m)


def generators():
    gens = [SymplecticInt.inversion(2)]
    for s11, s22, s12 in itertools.product((-1, 0, 1), repeat=3):
        if (s11, s22, s12) == (0, 0, 0):
            continue
        gens.append(SymplecticInt.translation([[s11, s12], [s12, s22]]))
    for u in ([[1, 1], [0, 1]], [[1, -1], [0, 1]], [[1, 0], [1, 1]],
              [[1, 0], [-1, 1]], [[0, 1], [1, 0]], [[1, 0], [0, -1]],
              [[-1, 0], [0, 1]]):
        gens.append(SymplecticInt.gl_embed(u))
    return gens


def key_of(m: SymplecticInt):
    return tuple(int(v) for v in m.matrix.ravel())


def cd_class(m: SymplecticInt):
    cd = np.concatenate([m.C, m.D], axis=1)
    return hnf_rows(cd)


def bfs_pool(depth: int, entry_cap: int):
    gens = generators()
    seen = {key_of(SymplecticInt.identity(2))}
    frontier = [SymplecticInt.identity(2)]
    pool = {}
    for level in range(depth):
        nxt = []
        for m in frontier:
            for g in gens:
                prod = m * g
                if max(abs(int(v)) for v in prod.matrix.ravel()) > entry_cap:
                    continue
                k = key_of(prod)
                if k in seen:
                    continue
                seen.add(k)
                nxt.append(prod)
                if np.any(np.asarray(prod.C) != 0):
                    cls = cd_class(prod)
                    if cls not in pool:
                        pool[cls] = prod
        frontier = nxt
        print("depth %d: frontier %d, classes %d" % (level + 1, len(frontier), len(pool)))
    return pool


def cd_entry_bound(m: SymplecticInt):
    return max(abs(int(v)) for v in np.concatenate([m.C, m.D], axis=1).ravel())


def proposal_samples(rng, n, a=0.8):
    t1 = a * rng.random(n) ** (-1.0 / 3.0)
    t2 = t1 * rng.random(n) ** (-1.0 / 2.0)
    s = rng.random(n)
    y12 = 0.5 * s * t1
    ys = np.zeros((n, 2, 2))
    ys[:, 0, 0], ys[:, 1, 1] = t1, t2
    ys[:, 0, 1] = ys[:, 1, 0] = y12
    xs = rng.uniform(-0.5, 0.5, size=(n, 3))
    xmat = np.zeros((n, 2, 2))
    xmat[:, 0, 0], xmat[:, 1, 1] = xs[:, 0], xs[:, 1]
    xmat[:, 0, 1] = xmat[:, 1, 0] = xs[:, 2]
    return xmat, ys


def det_ok_mask(cands, omega, eps=1e-9):
    ok = np.ones(omega.shape[0], dtype=bool)
    for m in cands:
        c, d = to_float(m.C), to_float(m.D)
        k = np.matmul(c, omega) + d
        det = k[:, 0, 0] * k[:, 1, 1] - k[:, 0, 1] * k[:, 1, 0]
        ok &= (det.real ** 2 + det.imag ** 2) >= 1.0 - eps
    return ok


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=6)
    ap.add_argument("--entry-cap", type=int, default=4)
    ap.add_argument("--keep-bound", type=int, default=1)
    ap.add_argument("--check-bound", type=int, default=2)
    ap.add_argument("--check", type=int, default=0, help="number of proposal samples")
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1]
                                         / "src/siegeljacobi/data/candidates_g2.json"))
    args = ap.parse_args()

    pool = bfs_pool(args.depth, args.entry_cap)
    keep = [m for m in pool.values() if cd_entry_bound(m) <= args.keep_bound]
    extra = [m for m in pool.values()
             if args.keep_bound < cd_entry_bound(m) <= args.check_bound]
    print("kept classes (bound %d): %d" % (args.keep_bound, len(keep)))
    print("check classes (bound %d): %d" % (args.check_bound, len(extra)))

    if args.check:
        from siegeljacobi.minkowski import membership_mask
        rng = np.random.default_rng(20240817)
        total = viol = accepted = 0
        chunk = 200_000
        worst = []
        while total < args.check:
            n = min(chunk, args.check - total)
            xs, ys = proposal_samples(rng, n)
            omega = xs + 1j * ys
            acc = membership_mask(ys) & det_ok_mask(keep, omega)
            idx = np.nonzero(acc)[0]
            accepted += idx.size
            if idx.size:
                bad = ~det_ok_mask(extra, omega[idx])
                viol += int(bad.sum())
                for i in idx[bad][:3]:
                    worst.append(omega[i])
            total += n
        print("checked %d proposal samples: accepted %d, violations vs larger family: %d"
              % (total, accepted, viol))
        for w in worst[:5]:
            print("violating omega:", w)

    keep.sort(key=lambda m: (cd_entry_bound(m),
                             tuple(int(v) for v in m.matrix.ravel())))
    obj = {"g": 2, "elements": [encode_symplectic(m) for m in keep]}
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    with open(args.out, "w") as fh:
        json.dump(obj, fh)
    print("wrote %d candidates to %s" % (len(keep), args.out))


if __name__ == "__main__":
    main()
