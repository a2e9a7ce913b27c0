"""Closed forms and recursions for the sizes of G_l^{n,m}.

Everything here is pure integer arithmetic; `build_graph` provides the
enumeration that these formulas are checked against.
"""
from functools import lru_cache
from math import comb


def cell_count(n, level):
    """Number of cell maps N_l^n = C(n + l - 1, n)."""
    return comb(n + level - 1, n)


def vertices_at_level_one(n, level):
    """M_l^{n,1} = C(n + l, n).

    Also covers the base cases M_l^{1,1} = l + 1, M_0^{n,1} = 1 and M_1^{n,1} = n + 1.
    """
    if level < 0:
        return 0
    return comb(n + level, n)


def junction_correction(n, level):
    """Number of identifications made when the N level-1 copies are glued.

    sum_{k=2}^{min(n+1, l)} C(n+1, k) (k-1) M_{l-k}^{k-1,1}; it does not depend on m.
    """
    total = 0
    for k in range(2, min(n + 1, level) + 1):
        total += comb(n + 1, k) * (k - 1) * vertices_at_level_one(k - 1, level - k)
    return total


@lru_cache(maxsize=None)
def count_vertices(n, level, generation):
    """M_l^{n,m} by the gluing recursion, with M_l^{n,0} = n + 1."""
    if generation < 0:
        raise ValueError(f"generation must be >= 0, got {generation}")
    if generation == 0:
        return n + 1
    return cell_count(n, level) * count_vertices(n, level, generation - 1) - junction_correction(n, level)


def count_vertices_closed_form_n2(level):
    """M_l^{2,1} by residue class of l modulo 3."""
    a, r = divmod(level, 3)
    if r == 0:
        return (2 + 9 * a + 9 * a * a) // 2
    if r == 1:
        return 3 * (2 + 5 * a + 3 * a * a) // 2
    return 3 * (4 + 7 * a + 3 * a * a) // 2


def junction_count(n, level, k, generation):
    """|V_{l,k}^{n,m}|: vertices shared by exactly k cells (the corners for k = 1)."""
    if generation == 0:
        return n + 1 if k == 1 else 0
    if k == 1:
        return n + 1
    if k < 1 or k > min(n + 1, level):
        return 0
    # a level-1 lattice point with exactly k positive coordinates is a corner of k cells
    at_one = comb(n + 1, k) * vertices_at_level_one(k - 1, level - k)
    return cell_count(n, level) * junction_count(n, level, k, generation - 1) + at_one


def simplex_count(n, level, generation):
    """Total number of simplices of all degrees of G_l^{n,m}."""
    faces_per_cell = sum(comb(n + 1, k + 1) for k in range(1, n + 1))
    return count_vertices(n, level, generation) + cell_count(n, level) ** generation * faces_per_cell
