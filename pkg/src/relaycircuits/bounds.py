"""Worst-case pswitch counts for the synthesis constructions.

``complexity_bound`` is the closed form for dyadic N-state targets with
denominator ``2^n``; ``complexity_bound_recursive`` evaluates the recursion
it came from, so the two can be checked against each other. The rational
variant covers the denominator-reduction construction over base ``q``.
"""

from __future__ import annotations

from functools import lru_cache


def ceil_log2(n: int) -> int:
    """Smallest c with 2**c >= n (n >= 1)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return (n - 1).bit_length()


def ceil_log(base: int, n: int) -> int:
    """Smallest c with base**c >= n."""
    if base < 2 or n < 1:
        raise ValueError(f"need base >= 2 and n >= 1, got base={base}, n={n}")
    c, power = 0, 1
    while power < n:
        power *= base
        c += 1
    return c


def complexity_bound(n: int, states: int) -> int:
    """Closed-form maximum pswitch count f(n, N) for targets x_i / 2^n.

    f(n, N) = 2^n - 1 while n <= ceil(log2 N); past that border it grows
    linearly, adding N - 1 pswitches per extra bit of denominator.
    """
    if n < 0 or states < 1:
        raise ValueError(f"need n >= 0 and N >= 1, got n={n}, N={states}")
    border = ceil_log2(states)
    if n <= border:
        return 2 ** n - 1
    return 2 ** border - 1 + (states - 1) * (n - border)


@lru_cache(maxsize=None)
def complexity_bound_recursive(n: int, states: int) -> int:
    """f(n, N) by the recursion: split at the half cut, recurse both sides.

    f(n, 1) = 0 and f(0, N) = 0; otherwise one pswitch plus the worst split
    of the N active states into i and N - i + 1 across the cut.
    """
    if n < 0 or states < 1:
        raise ValueError(f"need n >= 0 and N >= 1, got n={n}, N={states}")
    if states == 1 or n == 0:
        return 0
    best = max(complexity_bound_recursive(n - 1, i)
               + complexity_bound_recursive(n - 1, states - i + 1)
               for i in range(1, (states + 1) // 2 + 1))
    return best + 1


def rational_bound(q: int, n: int, states: int) -> int:
    """Maximum pswitch count for denominator reduction of x_i / q^n targets.

    Mirrors the dyadic closed form with q intervals per round: q^n - 1 up to
    the ceil(log_q N) border, then (N-1)(q-1) extra pswitches per round.
    """
    if q < 2 or n < 0 or states < 1:
        raise ValueError(f"need q >= 2, n >= 0, N >= 1, got q={q}, n={n}, N={states}")
    border = ceil_log(q, states)
    if n <= border:
        return q ** n - 1
    return q ** border - 1 + (states - 1) * (q - 1) * (n - border)
