"""Independent reference computations.

Nothing here imports the package: each function re-derives a value from
first principles (plain lists, tuples and ``Fraction``), so tests can pin
frozen constants against both the oracle and the library.
"""
from itertools import product


# -- 2x2 matrices as nested lists --------------------------------------------

def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def col_sums(A):
    return A[0][0] + A[1][0], A[0][1] + A[1][1]


def matrix_member(A) -> bool:
    zero = all(x == 0 for row in A for x in row)
    ident = A == [[1, 0], [0, 1]]
    s, t = col_sums(A)
    return zero or ident or (s == t and 0 < s < 1)


def complement(A):
    return [[int(i == j) - A[i][j] for j in range(2)] for i in range(2)]


# -- the horizontal sum of two intervals, as (lam, side) pairs ------------------
# side is "L" or "R"; 0 and 1 are the strings "0" and "1".

def hs_norm(lam, side):
    if lam == 0:
        return "0"
    if lam == 1:
        return "1"
    return (lam, side)


def hs_product(x, y):
    """``(λ, A) ∘ (μ, B) = (λμ, A)``; 1 is a unit and 0 absorbs."""
    if x == "1":
        return y
    if y == "1":
        return x
    if x == "0" or y == "0":
        return "0"
    return hs_norm(x[0] * y[0], x[1])


def hs_sum(x, y):
    """Sums exist only inside one branch (or with 0)."""
    if x == "0":
        return y
    if y == "0":
        return x
    if x == "1" or y == "1" or x[1] != y[1] or x[0] + y[0] > 1:
        return None
    return hs_norm(x[0] + y[0], x[1])


# -- finite effect algebras: naive EA-axiom check -----------------------------------

def ea_valid(n, one, S, perp) -> bool:
    """``S`` is a dense symmetric table with ``None`` for undefined sums."""
    r = range(n)
    for i in r:
        if S[i][0] != i or S[0][i] != i:
            return False
        if S[i][perp[i]] != one or [j for j in r if S[i][j] == one] != [perp[i]]:
            return False
        if i != 0 and S[i][one] is not None:
            return False
    for i, j, k in product(r, r, r):
        if S[i][j] is None or S[S[i][j]][k] is None:
            continue
        if S[j][k] is None or S[i][S[j][k]] != S[S[i][j]][k]:
            return False
    return all(S[i][j] == S[j][i] for i in r for j in r)


def meet_table(n, S):
    """Meets of the order ``i ≤ j ⇔ ∃k: S[i][k] = j`` (``None`` if absent)."""
    leq = [[any(S[i][k] == j for k in range(n)) for j in range(n)] for i in range(n)]
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            lows = [x for x in range(n) if leq[x][a] and leq[x][b]]
            top = [x for x in lows if all(leq[y][x] for y in lows)]
            row.append(top[0] if len(top) == 1 else None)
        out.append(row)
    return out
