"""Independent brute-force oracle for the frozen values in the test suite.

Nothing here imports skan. Chain complexes are built directly from small
combinatorial descriptions and reduced with sympy's Smith normal form; group
data comes from raw permutation tuples. Run ``python3 tests/oracle.py`` to
print the values the tests freeze.
"""
import json
from itertools import permutations, product

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form


def homology_from_boundaries(sizes, boundary):
    """Integral homology from chain ranks and ``boundary(n) -> matrix C_n -> C_{n-1}``."""
    mats = {n: boundary(n) for n in range(1, len(sizes))}
    out = []
    for n in range(len(sizes) - 1):
        # kernel of d_n has rank sizes[n] - rank d_n
        rk_out = _rank(mats.get(n)) if n >= 1 else 0
        rk_in = _rank(mats[n + 1])
        diag = _invariants(mats[n + 1])
        free = sizes[n] - rk_out - rk_in
        torsion = [d for d in diag if d > 1]
        out.append(_name(free, torsion))
    return out


def _rank(M):
    return 0 if M is None or M.rows == 0 or M.cols == 0 else M.rank()


def _invariants(M):
    if M.rows == 0 or M.cols == 0:
        return []
    S = smith_normal_form(M, domain=ZZ)
    return [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]


def _name(free, torsion):
    parts = (["Z"] if free == 1 else [f"Z^{free}"] if free else []) + [f"Z/{t}" for t in torsion]
    return " + ".join(parts) or "0"


def ordered_complex(top_simplices, upto):
    """Homology of the ordered simplicial complex spanned by vertex tuples."""
    simplices = [set() for _ in range(upto + 2)]
    for s in top_simplices:
        k = len(s)
        for m in range(1, k + 1):
            for sub in _subsets(s, m):
                if m - 1 <= upto + 1:
                    simplices[m - 1].add(sub)
    cells = [sorted(level) for level in simplices]
    index = [{c: i for i, c in enumerate(level)} for level in cells]

    def d(n):
        M = Matrix.zeros(len(cells[n - 1]), len(cells[n]))
        for j, c in enumerate(cells[n]):
            for i in range(n + 1):
                M[index[n - 1][c[:i] + c[i + 1:]], j] += (-1) ** i
        return M
    return homology_from_boundaries([len(level) for level in cells], d)


def _subsets(s, m):
    from itertools import combinations
    return [tuple(c) for c in combinations(s, m)]


def bar_homology(elements, mul, e, upto):
    """Normalized bar complex of a finite group, integral homology through ``upto``."""
    nonid = [g for g in elements if g != e]
    cells = [list(product(nonid, repeat=n)) for n in range(upto + 2)]
    index = [{c: i for i, c in enumerate(level)} for level in cells]

    def d(n):
        M = Matrix.zeros(len(cells[n - 1]), len(cells[n]))
        for j, c in enumerate(cells[n]):
            for i in range(n + 1):
                if i == 0:
                    face = c[1:]
                elif i == n:
                    face = c[:-1]
                else:
                    g = mul(c[i - 1], c[i])
                    if g == e:
                        continue
                    face = c[:i - 1] + (g,) + c[i + 1:]
                M[index[n - 1][face], j] += (-1) ** i
        return M
    return homology_from_boundaries([len(level) for level in cells], d)


def cyclic(n):
    return list(range(n)), (lambda a, b: (a + b) % n), 0


def sym3():
    els = list(permutations(range(3)))
    return els, (lambda p, q: tuple(p[q[i]] for i in range(3))), (0, 1, 2)


def conjugacy_classes(group):
    els, mul, e = group
    inv = {g: next(h for h in els if mul(g, h) == e) for g in els}
    seen, count = set(), 0
    for g in els:
        if g in seen:
            continue
        count += 1
        seen |= {mul(mul(h, g), inv[h]) for h in els}
    return count


def f2_cohomology_size(top_simplices, n):
    """``|H^n(K; Z/2)|`` of an ordered simplicial complex by ranks over F_2."""
    levels = {m: sorted({sub for s in top_simplices for sub in _subsets(s, m + 1)})
              for m in range(n + 2)}

    def rank2(rows):
        rows = [int("".join(map(str, r)), 2) for r in rows if any(r)]
        piv = {}
        for r in rows:
            while r:
                h = r.bit_length() - 1
                if h not in piv:
                    piv[h] = r
                    break
                r ^= piv[h]
        return len(piv)

    def dmat(m):
        # rows = (m)-simplices, cols = (m-1)-simplices, mod 2
        return [[1 if f in _subsets(c, m) else 0 for f in levels[m - 1]] for c in levels[m]]
    r_in = rank2(dmat(n)) if n >= 1 else 0
    r_out = rank2(dmat(n + 1)) if levels.get(n + 1) else 0
    return 2 ** (len(levels[n]) - r_out - r_in)


def main():
    out = {}
    z2, z3, s3 = cyclic(2), cyclic(3), sym3()
    out["wbar_sizes"] = {name: [len(g[0]) ** n for n in range(5)]
                         for name, g in (("1", cyclic(1)), ("Z/2", z2), ("Z/3", z3), ("S3", s3))}
    out["bar_homology_Z2"] = bar_homology(*z2, 3)
    out["bar_homology_Z3"] = bar_homology(*z3, 3)
    out["bar_homology_S3"] = bar_homology(*s3, 3)
    out["boundary2"] = ordered_complex([(0, 1), (0, 2), (1, 2)], 2)
    out["boundary3"] = ordered_complex([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)], 3)
    out["octagon"] = ordered_complex([tuple(sorted((i, (i + 1) % 8))) for i in range(8)], 1)
    out["four_cycle_nerve"] = ordered_complex([(0, 1), (1, 2), (2, 3), (0, 3)], 2)
    out["h1_circle"] = {name: conjugacy_classes(g) for name, g in
                        (("Z/2", z2), ("Z/3", z3), ("S3", s3))}
    out["twistings_circle"] = {name: len(g[0]) for name, g in
                               (("Z/2", z2), ("Z/3", z3), ("S3", s3))}
    out["twistings_boundary2"] = {name: len(g[0]) ** 3 for name, g in
                                  (("Z/2", z2), ("Z/3", z3), ("S3", s3))}
    out["cech_h1_boundary2_Z2"] = f2_cohomology_size([(0, 1), (0, 2), (1, 2)], 1)
    out["cech_h2_boundary3_Z2"] = f2_cohomology_size(
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)], 2)
    # simplicial sets with explicit level sizes
    out["dec0_interval"] = [n + 3 for n in range(4)]
    out["interval_squared"] = [(n + 2) ** 2 for n in range(4)]
    out["double_cover_levels"] = [2 * (n + 1) for n in range(4)]
    out["double_cover_hquot"] = [2 * (n + 1) * 2 ** n for n in range(4)]
    out["simplex_levels"] = {k: [len(list(_monotone(n, k))) for n in range(4)] for k in range(3)}
    print(json.dumps(out, indent=2, sort_keys=True))


def _monotone(n, k):
    return [t for t in product(range(k + 1), repeat=n + 1) if list(t) == sorted(t)]


if __name__ == "__main__":
    main()
