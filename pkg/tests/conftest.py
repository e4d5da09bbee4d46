import itertools
from importlib.resources import files

import pytest

from twistsub.fpgroup import parse_presentation


def data_text(name):
    return files("twistsub").joinpath("data", name).read_text()


@pytest.fixture
def mn3():
    return parse_presentation(data_text("mn3.pres"))


@pytest.fixture
def tn3():
    return parse_presentation(data_text("tn3.pres"))


@pytest.fixture
def n3_config():
    return data_text("n3.rep")


def cofactor_det(rows):
    """Laplace expansion; independent of the elimination code under test."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def brute_quotient(rows, k, limit=None):
    """Order and element-order profile of Z^k / rowspan(rows), by enumeration.

    Returns None when the quotient is infinite, False when the search space
    M^k exceeds ``limit``.  Otherwise returns
    ``(order, counts)`` with ``counts[d]`` the number of elements killed by d,
    for every divisor d of the exponent bound used.
    """
    bound = 0
    for sub in itertools.combinations(rows, k):
        d = abs(cofactor_det([list(r) for r in sub]))
        if d and (bound == 0 or d < bound):
            bound = d
    if bound == 0:
        return None
    M = bound  # M * Z^k lies in the lattice
    if limit is not None and M ** k > limit:
        return False
    gens = [tuple(x % M for x in r) for r in rows]
    zero = (0,) * k
    H = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for h in frontier:
            for gvec in gens:
                s = tuple((a + b) % M for a, b in zip(h, gvec))
                if s not in H:
                    H.add(s)
                    nxt.append(s)
        frontier = nxt
    order = M ** k // len(H)
    counts = {}
    for d in range(1, M + 1):
        if M % d:
            continue
        killed = sum(
            1 for x in itertools.product(range(M), repeat=k)
            if tuple((d * a) % M for a in x) in H
        )
        counts[d] = killed // len(H)
    return order, counts
