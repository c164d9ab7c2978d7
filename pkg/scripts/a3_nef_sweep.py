"""Nef cone of the A3 quiver  f(m) -> v2(d2) =n=> v1(d1)  across parameters.

For each parameter set, prints the minimal sets, the extremal nef modules
and the chosen coefficients, and tests the three candidate modules
E1 = std(v1), E2 = std(v2), H = Hom(E2, E1) against every minimal-set cone
with an exact solver that is independent of the cone library.

    python3 scripts/a3_nef_sweep.py
"""
from fractions import Fraction
from itertools import combinations

from strongseq.nefcone import nef_data
from strongseq.quiver import Quiver, anticanonical, rep_weights


def solve(cols, x):
    n, k = len(x), len(cols)
    M = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(x[i])] for i in range(n)]
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if M[i][c]), None)
        if p is None:
            return None
        M[r], M[p] = M[p], M[r]
        M[r] = [v / M[r][c] for v in M[r]]
        for i in range(n):
            if i != r and M[i][c]:
                M[i] = [a - M[i][c] * b for a, b in zip(M[i], M[r])]
        r += 1
    if any(M[i][k] for i in range(r, n)):
        return None
    return [M[i][k] for i in range(k)]


def in_cone(gens, x):
    if not any(x):
        return True
    return any((c := solve(S, x)) is not None and all(v >= 0 for v in c)
               for k in range(1, len(x) + 1) for S in combinations(gens, k))


def a3(m, n, d2, d1):
    return Quiver.build([("f", m, True), ("v1", d1), ("v2", d2)], [("f", "v2"), ("v2", "v1", n)])


def main():
    cases = [(7, 2, 2, 1), (3, 4, 2, 1), (5, 4, 2, 1), (4, 3, 3, 2), (5, 3, 2, 1), (2, 5, 2, 1)]
    for m, n, d2, d1 in cases:
        Q = a3(m, n, d2, d1)
        r = m - n * d1
        theta = anticanonical(Q)
        ws = [w.coords for w in rep_weights(Q).weights()]
        nd = nef_data(Q)
        print(f"(m,n,d2,d1)=({m},{n},{d2},{d1})  r={r} ({'r>d1' if r > d1 else 'r<d1' if r < d1 else 'r=d1'})"
              f"  chi_ac={list(theta.coords)}")
        for S in nd.minimal_sets:
            print("   minimal set", [list(w.coords) for w in S])
        print("   VB+", [M.label() for M in nd.vb_plus],
              " m_E", {M.label(): str(c) for M, c in nd.coefficients.items()})
        e1 = [1 if i == 0 else 0 for i in range(d1)] + [0] * d2
        e2 = [0] * d1 + [1 if i == 0 else 0 for i in range(d2)]
        h = [1 if i == 0 else 0 for i in range(d1)] + [0] * (d2 - 1) + [-1]
        for name, x in (("E1", e1), ("E2", e2), ("H", h)):
            member = [in_cone([w.coords for w in S], x) for S in nd.minimal_sets]
            print(f"   {name} {x} in each minimal cone: {member}")
        # sanity: brute-force minimal sets agree
        hits = [set(S) for k in range(1, len(ws) + 1) for S in combinations(ws, k) if in_cone(list(S), theta.coords)]
        brute = sorted(tuple(sorted(S)) for S in hits if not any(T < S for T in hits))
        print("   brute-force minimal sets agree:", brute == sorted(tuple(w.coords for w in S) for S in nd.minimal_sets))


if __name__ == "__main__":
    main()
