"""Seeded sampling of ordinals for probes and test generators."""

from __future__ import annotations

import functools
import random

from .ordcore import ZERO, Ordinal, add, as_ordinal, compare, nat, omega_power

__all__ = ["random_below", "probe_points", "random_ordinal", "sort_ordinals", "ord_key"]

ord_key = functools.cmp_to_key(compare)


def sort_ordinals(xs) -> list:
    return sorted(set(xs), key=ord_key)


def _random_below_power(e: Ordinal, rng: random.Random, cmax: int, depth: int) -> Ordinal:
    """A random ordinal below ``w^e``."""
    if e.is_zero:
        return ZERO
    if e.is_finite and depth > 6:
        return nat(rng.randrange(cmax + 1))
    f = random_below(e, rng, cmax, depth + 1)
    head = omega_power(f, rng.randint(1, cmax)) if not f.is_zero else nat(rng.randint(0, cmax))
    if f.is_zero or rng.random() < 0.4:
        return head
    return add(head, _random_below_power(f, rng, cmax, depth + 1))


def random_below(bound, rng: random.Random, cmax: int = 6, depth: int = 0) -> Ordinal:
    """A random ordinal ``< bound`` sharing a random prefix with ``bound``."""
    bound = as_ordinal(bound)
    if bound.is_zero:
        raise ValueError("nothing lies below 0")
    terms = bound.terms
    i = rng.randrange(len(terms))
    prefix = Ordinal(terms[:i])
    e, c = terms[i]
    k = rng.randrange(c)
    base = add(prefix, omega_power(e, k)) if k else prefix
    return add(base, _random_below_power(e, rng, cmax, depth))


def random_ordinal(rng: random.Random, max_exp: int = 3, cmax: int = 4) -> Ordinal:
    """A random ordinal below ``w^(max_exp+1)`` with natural exponents."""
    out = ZERO
    for e in range(max_exp, -1, -1):
        if rng.random() < 0.5:
            out = add(out, omega_power(e, rng.randint(1, cmax)) if e else nat(rng.randint(1, cmax)))
    return out


def probe_points(bound, count: int, seed: int = 0, extra=()) -> list:
    """``count`` distinct-ish ordinals below ``bound``: small naturals, ``extra``
    points and their neighbours, then seeded random samples."""
    bound = as_ordinal(bound)
    if bound.is_zero:
        return []
    rng = random.Random(seed)
    pts = set()
    for k in range(min(count // 4, 16)):
        x = nat(k)
        if compare(x, bound) < 0:
            pts.add(x)
    for x in extra:
        x = as_ordinal(x)
        for y in (x, add(x, nat(1)), add(x, nat(2))):
            if compare(y, bound) < 0:
                pts.add(y)
    tries = 0
    while len(pts) < count and tries < 20 * count:
        pts.add(random_below(bound, rng))
        tries += 1
    return sort_ordinals(pts)[:max(count, len(pts))]
