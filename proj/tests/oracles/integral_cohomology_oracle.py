"""Integral cohomology of g with coefficients in S^s(g*), computed from the
Chevalley-Eilenberg formula on alternating maps and Smith normal form.

Shares no code with the C++ library: cochains are alternating maps
Λ^t g → S^s(g*) stored as dicts, the module action is the coadjoint action
extended to polynomials, and torsion is read off the Smith form of the
incoming differential (torsion of H^t equals torsion of coker d^{t-1}).

Usage: integral_cohomology_oracle.py OUT.json [max_hodge]
"""

import itertools
import json
import sys
from collections import defaultdict

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

# [e_i, e_j] = sum_k C[(i, j)][k] e_k
ALGEBRAS = {
    # h, e, f
    "sl2": (3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}),
    # h, e with [e, h] = e
    "nonabelian2": (2, {(1, 0): {1: 1}}),
}


def bracket_table(n, consts):
    br = defaultdict(dict)
    for (i, j), img in consts.items():
        for k, v in img.items():
            br[(i, j)][k] = br[(i, j)].get(k, 0) + v
            br[(j, i)][k] = br[(j, i)].get(k, 0) - v
    return br


def monomials(n, s):
    return [m for m in itertools.combinations_with_replacement(range(n), s)]


def coadjoint(n, br, x, mono):
    """x · m for a monomial m (sorted index tuple) in S(g*), as a dict.

    On generators (x·y_k)(z) = -y_k([x, z]) = -sum_z c_{x z}^k y_z.
    """
    out = defaultdict(int)
    for pos, k in enumerate(mono):
        rest = mono[:pos] + mono[pos + 1:]
        for z in range(n):
            c = br[(x, z)].get(k, 0)
            if c:
                out[tuple(sorted(rest + (z,)))] -= c
    return out


def differential(n, br, s, t):
    """Matrix of d: C^t → C^{t+1}, C^t = Hom(Λ^t g, S^s(g*))."""
    src_wedges = list(itertools.combinations(range(n), t))
    dst_wedges = list(itertools.combinations(range(n), t + 1))
    monos = monomials(n, s)
    m_index = {m: i for i, m in enumerate(monos)}
    src = [(w, m) for w in src_wedges for m in monos]
    dst = [(w, m) for w in dst_wedges for m in monos]
    d_index = {b: i for i, b in enumerate(dst)}
    s_index = {b: i for i, b in enumerate(src)}

    def omega_value(basis_wedge, args):
        # value of the basis cochain (basis_wedge, ·) on a sorted-or-not tuple args
        if len(set(args)) < len(args):
            return 0
        perm = sorted(range(len(args)), key=lambda i: args[i])
        if tuple(args[i] for i in perm) != basis_wedge:
            return 0
        inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
        return -1 if inv % 2 else 1

    rows, cols = len(dst), len(src)
    mat = [[0] * cols for _ in range(rows)]
    for c, (w, m) in enumerate(src):
        for dw in dst_wedges:
            xs = dw
            acc = defaultdict(int)
            # sum_i (-1)^i x_i · ω(x_0..x̂_i..x_t)
            for i in range(t + 1):
                rest = xs[:i] + xs[i + 1:]
                v = omega_value(w, rest)
                if v:
                    for mm, cc in coadjoint(n, br, xs[i], m).items():
                        acc[mm] += ((-1) ** i) * v * cc
            # sum_{i<j} (-1)^{i+j} ω([x_i, x_j], x_0..x̂_i..x̂_j..x_t)
            for i in range(t + 1):
                for j in range(i + 1, t + 1):
                    rest = tuple(xs[k] for k in range(t + 1) if k not in (i, j))
                    for z, cz in br[(xs[i], xs[j])].items():
                        v = omega_value(w, (z,) + rest)
                        if v:
                            acc[m] += ((-1) ** (i + j)) * cz * v
            for mm, val in acc.items():
                if val:
                    mat[d_index[(dw, mm)]][c] += val
    return rows, cols, mat


def invariants(rows, cols, mat):
    if rows == 0 or cols == 0:
        return []
    snf = smith_normal_form(Matrix(mat), domain=ZZ)
    return [abs(int(snf[i, i])) for i in range(min(rows, cols)) if snf[i, i] != 0]


def rank(rows, cols, mat):
    if rows == 0 or cols == 0:
        return 0
    return Matrix(mat).rank()


def prime_powers(values):
    out = []
    for v in values:
        q = 2
        while q * q <= v:
            k = 0
            while v % q == 0:
                v //= q
                k += 1
            if k:
                out.append((q, k))
            q += 1
        if v > 1:
            out.append((v, 1))
    return sorted(out)


def cohomology(name, max_hodge):
    n, consts = ALGEBRAS[name]
    br = bracket_table(n, consts)
    table = []
    for s in range(max_hodge + 1):
        maps = {t: differential(n, br, s, t) for t in range(-1, n + 1) if t >= 0}
        dims = {t: len(list(itertools.combinations(range(n), t))) * len(monomials(n, s)) for t in range(n + 1)}
        ranks = {t: rank(*maps[t]) for t in range(n + 1)}
        for t in range(n + 1):
            incoming = ranks[t - 1] if t > 0 else 0
            free = dims[t] - ranks[t] - incoming
            tors = [f for f in invariants(*maps[t - 1]) if f > 1] if t > 0 else []
            table.append({
                "s": s,
                "t": t,
                "free_rank": free,
                "torsion": [f"{p}^{k}" if k > 1 else str(p) for p, k in prime_powers(tors)],
            })
    return table


def main():
    out = sys.argv[1]
    max_hodge = int(sys.argv[2]) if len(sys.argv) > 2 else 4
    result = {}
    for name in ALGEBRAS:
        table = cohomology(name, max_hodge)
        first = {}
        for row in table:
            for q in row["torsion"]:
                p = int(q.split("^")[0])
                first.setdefault(p, row["s"])
        result[name] = {
            "max_hodge": max_hodge,
            "table": table,
            "first_hodge": {str(p): s for p, s in sorted(first.items())},
        }
    with open(out, "w") as f:
        json.dump(result, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main()
