"""Koszul sign helpers shared by every construction.

The normative description lives in ``docs/signs.md``.
"""
from fractions import Fraction


def koszul(a: int, b: int) -> int:
    """Sign (-1)^(a*b) for moving an element of degree ``a`` past one of degree ``b``."""
    return -1 if (a & 1) and (b & 1) else 1


def parity(n: int) -> int:
    return -1 if n & 1 else 1


def permutation_sign(degrees, perm) -> int:
    """Koszul sign of reordering a word.

    ``perm[i]`` is the position in the original word of the i-th output letter.
    Only pairs of odd letters that change relative order contribute.
    """
    sign = 1
    n = len(perm)
    for i in range(n):
        di = degrees[perm[i]]
        if not di & 1:
            continue
        for j in range(i + 1, n):
            if perm[j] < perm[i] and degrees[perm[j]] & 1:
                sign = -sign
    return sign


def rotation_sign(degrees, k: int) -> int:
    """Sign of moving the last ``k`` letters of a word to the front."""
    n = len(degrees)
    head = sum(degrees[: n - k])
    tail = sum(degrees[n - k:])
    return koszul(head, tail)


def exact(c):
    """Exact scalar: a plain int when integral, otherwise a Fraction."""
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c
