"""Enumerations of group specs for sweeps.

Family descriptors::

    abelian-p:<p>:<maxorder>        non-cyclic abelian p-groups of order <= maxorder
    abelian:<maxorder>              every abelian group of order <= maxorder
    pool:<atom,atom,...>:<maxorder> products of pool atoms (with repetition)
"""

from __future__ import annotations

from itertools import combinations_with_replacement, product

from .errors import SpecSyntaxError
from .groups import GroupSpec, parse_group_spec
from .numtheory import factorize, is_prime


def partitions(k: int, largest: int | None = None):
    """Partitions of ``k`` as non-increasing tuples, in reverse lexicographic order."""
    if k == 0:
        yield ()
        return
    largest = k if largest is None else largest
    for first in range(min(k, largest), 0, -1):
        for rest in partitions(k - first, first):
            yield (first,) + rest


def _p_factor_text(p: int, parts) -> list[str]:
    return [f"Z{p ** e}" for e in sorted(parts)]


def abelian_p_groups(p: int, max_order: int, include_cyclic: bool = False) -> list[str]:
    out = []
    k = 1
    while p ** k <= max_order:
        for part in partitions(k):
            if len(part) == 1 and not include_cyclic:
                continue
            out.append("x".join(_p_factor_text(p, part)))
        k += 1
    return out


def abelian_groups_of_order(n: int) -> list[str]:
    """All abelian groups of order ``n`` as primary-decomposition specs."""
    if n == 1:
        return ["Z1"]
    fac = sorted(factorize(n).items())
    choices = [[_p_factor_text(p, part) for part in partitions(e)] for p, e in fac]
    return ["x".join(sum(combo, [])) for combo in product(*choices)]


def abelian_groups(max_order: int) -> list[str]:
    out = []
    for n in range(1, max_order + 1):
        out.extend(abelian_groups_of_order(n))
    return out


def pool_products(atoms: list[str], max_order: int) -> list[str]:
    specs = [parse_group_spec(a).factors[0] for a in atoms]
    seen = set()
    out = []
    # every atom except Z1 has order >= 2, so products have at most log2(N) factors
    for size in range(1, max(1, max_order).bit_length() + 1):
        grew = False
        for combo in combinations_with_replacement(range(len(specs)), size):
            gs = GroupSpec(tuple(specs[i] for i in combo))
            if gs.order > max_order:
                continue
            grew = True
            s = str(gs)
            if s not in seen:
                seen.add(s)
                out.append(s)
        if not grew:
            break
    return out


def parse_family(desc: str) -> list[str]:
    parts = desc.split(":")
    try:
        if parts[0] == "abelian-p" and len(parts) == 3:
            p, n = int(parts[1]), int(parts[2])
            if not is_prime(p):
                raise SpecSyntaxError(f"{p} is not prime", desc)
            return abelian_p_groups(p, n)
        if parts[0] == "abelian" and len(parts) == 2:
            return abelian_groups(int(parts[1]))
        if parts[0] == "pool" and len(parts) == 3:
            return pool_products([a for a in parts[1].split(",") if a], int(parts[2]))
    except ValueError as exc:
        if isinstance(exc, SpecSyntaxError):
            raise
        raise SpecSyntaxError(f"bad family descriptor {desc!r}: {exc}", desc) from exc
    raise SpecSyntaxError(
        f"bad family descriptor {desc!r}; expected abelian-p:<p>:<N>, abelian:<N> "
        "or pool:<atom,...>:<N>", desc)
