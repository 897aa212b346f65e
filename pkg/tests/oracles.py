"""Independent reference computations for the test suite.

Nothing here calls the enumeration or structure-constant code under test;
inputs are Cartan matrices, lambdas and simple-root sets only.
"""

import itertools
from fractions import Fraction


def weyl_closure(cartan):
    """Roots and coroots by reflecting simple (co)roots, entry (i, j) = alpha_j(H_i).

    Returns {root: coroot}, both as integer coordinate tuples.
    """
    n = len(cartan)
    simple = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    start = {s: s for s in simple}
    frontier = list(start.items())
    seen = dict(start)
    while frontier:
        nxt = []
        for beta, cob in frontier:
            for i in range(n):
                # s_i(beta) = beta - beta(H_i) alpha_i; s_i(h) = h - alpha_i(h) H_i
                b_on_hi = sum(beta[j] * cartan[i][j] for j in range(n))
                ai_on_h = sum(cob[j] * cartan[j][i] for j in range(n))
                r = tuple(beta[j] - (b_on_hi if j == i else 0) for j in range(n))
                c = tuple(cob[j] - (ai_on_h if j == i else 0) for j in range(n))
                if r not in seen:
                    seen[r] = c
                    nxt.append((r, c))
        frontier = nxt
    out = dict(seen)
    for r, c in seen.items():
        out[tuple(-x for x in r)] = tuple(-x for x in c)
    return out


def root_value(cartan, beta, h):
    n = len(cartan)
    return sum(h[i] * sum(beta[j] * cartan[i][j] for j in range(n)) for i in range(n))


def trace_form_on_cartan(cartan, roots, h1, h2):
    """tr(ad h1 ad h2) restricted to j0: sum over roots of beta(h1) beta(h2)."""
    return sum(root_value(cartan, b, h1) * root_value(cartan, b, h2) for b in roots)


def block_cartan(cartans):
    n = sum(len(c) for c in cartans)
    out = [[0] * n for _ in range(n)]
    off = 0
    blocks = []
    for c in cartans:
        k = len(c)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = c[i][j]
        blocks.append(range(off, off + k))
        off += k
    return out, blocks


def in_c_plus(lam):
    re, im = lam
    return re < 0 or (re == 0 and im > 0)


class FormOracle:
    """B(H_a, H_b) for B = sum lambda_k K_k, from the root list alone."""

    def __init__(self, cartans, lambdas, flips=None):
        self.cartan, self.blocks = block_cartan(cartans)
        self.lambdas = [lam if isinstance(lam, tuple) else (Fraction(lam), Fraction(0))
                        for lam in lambdas]
        self.flips = flips or [False] * len(cartans)
        self.coroots = weyl_closure(self.cartan)
        self.roots = list(self.coroots)
        self.n = len(self.cartan)

    def ideal(self, beta):
        k = next(i for i, c in enumerate(beta) if c)
        return next(b for b, r in enumerate(self.blocks) if k in r)

    def pairing(self, a, b):
        """Complex value B(H_a, H_b) as a (re, im) pair."""
        if self.ideal(a) != self.ideal(b):
            return (Fraction(0), Fraction(0))
        k = self.ideal(a)
        rs = [r for r in self.roots if self.ideal(r) == k]
        kv = trace_form_on_cartan(self.cartan, rs, self.coroots[a], self.coroots[b])
        re, im = self.lambdas[k]
        return (re * kv, im * kv)

    def sigma(self):
        plus, minus = [], []
        for k, rng in enumerate(self.blocks):
            for i in rng:
                s = tuple(int(j == i) for j in range(self.n))
                b0 = tuple(-x for x in s) if self.flips[k] else s
                if in_c_plus(self.lambdas[k]):
                    plus.append(b0)
                else:
                    minus.append(tuple(-x for x in b0))
        return plus, minus

    def compatible(self, amap):
        for (a, aa), (b, ab) in itertools.combinations_with_replacement(amap, 2):
            lhs = self.pairing(aa, ab)
            rhs = self.pairing(a, b)
            if lhs != (-rhs[0], -rhs[1]):
                return False
        return True


def partial_maps(src, dst):
    for k in range(min(len(src), len(dst)) + 1):
        for dom in itertools.combinations(src, k):
            for img in itertools.permutations(dst, k):
                yield tuple(zip(dom, img))


def has_cycle(succ):
    """Naive: follow every start for len(succ) + 1 steps."""
    for start in succ:
        cur = start
        for _ in range(len(succ) + 1):
            if cur not in succ:
                break
            cur = succ[cur]
        else:
            return True
    return False


def chain_successor(amap, amap_p):
    inv = {b: a for a, b in amap}
    return {x: inv[y] for x, y in amap_p if y in inv}


def skeleton_oracle(oracle, fixed_A=None):
    """All (A, A') with form compatibility and no cycle of A^-1 A', as sorted tuples."""
    plus, minus = oracle.sigma()
    maps = [m for m in partial_maps(plus, minus) if oracle.compatible(m)]
    firsts = [fixed_A] if fixed_A is not None else maps
    out = []
    for a in firsts:
        for ap in maps:
            if not has_cycle(chain_successor(a, ap)):
                out.append((tuple(sorted(a)), tuple(sorted(ap))))
    return sorted(out)


def dynkin_bd_classes(cartan):
    """Admissible (Gamma_1, Gamma_2, T) of a simple Dynkin diagram, naive filter.

    T must be an isometry for the symmetrized form and have no cycles.
    """
    n = len(cartan)
    roots = weyl_closure(cartan)
    simple = [tuple(int(j == i) for j in range(n)) for i in range(n)]

    def ip(i, j):
        # (alpha_i, alpha_j) proportional to K(H_i, H_j) / scale; use trace form on coroots
        # converted through alpha(H) values: (a_i, a_j) ~ a_j(H_i) / K(H_i, H_i)
        kii = trace_form_on_cartan(cartan, roots, roots[simple[i]], roots[simple[i]])
        return Fraction(cartan[i][j], 1) / kii

    out = []
    for dom_img in partial_maps(list(range(n)), list(range(n))):
        t = dict(dom_img)
        if any(ip(t[a], t[b]) != ip(a, b) for a in t for b in t):
            continue
        if has_cycle(t):
            continue
        out.append(tuple(sorted(t.items())))
    return sorted(out)
