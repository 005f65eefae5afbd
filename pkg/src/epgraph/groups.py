"""Finite groups as direct products of small atoms, or raw Cayley tables.

Elements are integer indices ``0 .. |G|-1`` with ``0`` the identity.  A
product group stores each element as a mixed-radix digit vector (one digit
per factor, first factor most significant); multiplication, inverses,
orders and powers are all done componentwise.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from .errors import (EpgError, InvalidGroupError, NotNilpotentError,
                     OrderLimitExceeded, SpecSyntaxError)
from .numtheory import factorize, gcd, lcm, prime_divisors

DEFAULT_MAX_ORDER = 20000

GRAMMAR_HELP = (
    'group spec grammar:  spec := atom ("x" atom)* ;  '
    'atom := "Z" int | "Q" int | "D" int ;  int := [1-9][0-9]*\n'
    "  Zn  cyclic group of order n (n >= 1)\n"
    "  Qn  generalized quaternion group of order n = 2^k, k >= 3\n"
    "  Dn  dihedral group of order n (n even, n >= 6)\n"
    "examples: Z6, Z2xZ4, Z3xZ9xQ16, D8xZ3"
)


# ---------------------------------------------------------------------------
# Specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cyclic:
    n: int

    def __str__(self):
        return f"Z{self.n}"

    @property
    def order(self):
        return self.n


@dataclass(frozen=True)
class GeneralizedQuaternion:
    order: int

    def __str__(self):
        return f"Q{self.order}"


@dataclass(frozen=True)
class Dihedral:
    order: int

    def __str__(self):
        return f"D{self.order}"


@dataclass(frozen=True)
class CayleyTableRef:
    path: str

    def __str__(self):
        return f"table:{self.path}"


Atom = Union[Cyclic, GeneralizedQuaternion, Dihedral]


@dataclass(frozen=True)
class GroupSpec:
    factors: tuple = ()
    table: CayleyTableRef | None = None

    def __str__(self):
        if self.table is not None:
            return str(self.table)
        return "x".join(str(f) for f in self.factors)

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f.order
        return out

    @property
    def is_abelian_spec(self) -> bool:
        return self.table is None and all(isinstance(f, Cyclic) for f in self.factors)


_ATOM_RE = re.compile(r"([ZQD])([1-9][0-9]*)")


def _check_atom(kind: str, n: int, pos: int, text: str) -> Atom:
    if kind == "Z":
        return Cyclic(n)
    if kind == "Q":
        if n < 8 or n & (n - 1):
            raise SpecSyntaxError(
                f"Q{n}: generalized quaternion order must be a power of 2 and >= 8",
                text, pos)
        return GeneralizedQuaternion(n)
    if n % 2 or n < 6:
        raise SpecSyntaxError(
            f"D{n}: dihedral order must be even and >= 6", text, pos)
    return Dihedral(n)


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``"Z3xZ9xQ16"`` style product specs.

    Factor order is preserved.  Errors carry the 0-based character position
    of the offending token.
    """
    s = text.strip()
    if not s:
        raise SpecSyntaxError("empty group spec", text, 0)
    factors = []
    pos = 0
    while True:
        m = _ATOM_RE.match(s, pos)
        if m is None:
            raise SpecSyntaxError(
                f"expected an atom like Z6, Q8 or D10, found {s[pos:pos + 6]!r}",
                text, pos)
        factors.append(_check_atom(m.group(1), int(m.group(2)), pos, text))
        pos = m.end()
        if pos == len(s):
            break
        if s[pos] != "x":
            raise SpecSyntaxError(f"expected 'x' between atoms, found {s[pos]!r}",
                                  text, pos)
        pos += 1
        if pos == len(s):
            raise SpecSyntaxError("dangling 'x' at end of spec", text, pos)
    return GroupSpec(tuple(factors))


# ---------------------------------------------------------------------------
# Atoms: the building blocks of product groups
# ---------------------------------------------------------------------------

class _Atom:
    """One direct factor, with vectorised multiplication on index arrays."""

    order: int
    label: str

    def mul(self, x, y):
        raise NotImplementedError

    def name(self, i: int) -> str:
        raise NotImplementedError

    @cached_property
    def orders(self) -> np.ndarray:
        return _orders_by_iteration(self)

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.zeros(self.order, dtype=np.int64)
        for g in range(self.order):
            seq = self.power_seq(g)
            inv[g] = seq[-1] if len(seq) > 1 else 0
        return inv

    def power_seq(self, g: int) -> np.ndarray:
        cache = self.__dict__.setdefault("_pow_cache", {})
        seq = cache.get(g)
        if seq is None:
            out = [0]
            cur = int(g)
            while cur != 0:
                out.append(cur)
                cur = int(self.mul(np.int64(cur), np.int64(g)))
            seq = np.asarray(out, dtype=np.int64)
            cache[g] = seq
        return seq


def _orders_by_iteration(atom: _Atom) -> np.ndarray:
    """Element orders by repeated multiplication (reference path)."""
    n = atom.order
    base = np.arange(n, dtype=np.int64)
    cur = base.copy()
    orders = np.zeros(n, dtype=np.int64)
    t = 1
    while True:
        hit = (cur == 0) & (orders == 0)
        orders[hit] = t
        if orders.all():
            return orders
        cur = atom.mul(cur, base)
        t += 1
        if t > n:
            raise InvalidGroupError("element order exceeds group order",
                                    axiom="finite order")


class _CyclicAtom(_Atom):
    def __init__(self, n: int):
        self.order = n
        self.label = f"Z{n}"

    def mul(self, x, y):
        return (x + y) % self.order

    def name(self, i):
        return str(i)

    @cached_property
    def orders(self):
        i = np.arange(self.order, dtype=np.int64)
        return self.order // np.gcd(i, self.order)

    @cached_property
    def inverses(self):
        return (-np.arange(self.order, dtype=np.int64)) % self.order

    def power_seq(self, g):
        o = self.order // gcd(int(g), self.order)
        return (np.arange(o, dtype=np.int64) * int(g)) % self.order


class _DihedralAtom(_Atom):
    """``D_{2m} = <r, s | r^m = s^2 = e, s r s = r^-1>``; index ``i + m*j`` is ``r^i s^j``."""

    def __init__(self, order: int):
        self.order = order
        self.m = order // 2
        self.label = f"D{order}"

    def mul(self, x, y):
        m = self.m
        i, j = x % m, x // m
        k, l = y % m, y // m
        sign = 1 - 2 * j
        return (i + sign * k) % m + m * ((j + l) % 2)

    def name(self, idx):
        i, j = idx % self.m, idx // self.m
        if i == 0 and j == 0:
            return "e"
        r = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
        return r + ("s" if j else "")

    @cached_property
    def orders(self):
        m = self.m
        i = np.arange(m, dtype=np.int64)
        return np.concatenate([m // np.gcd(i, m), np.full(m, 2, dtype=np.int64)])


class _QuaternionAtom(_Atom):
    """``Q_{2^k} = <a, b | a^N = e, b^2 = a^(N/2), b a b^-1 = a^-1>`` with ``N = 2^(k-1)``.

    Index ``i + N*j`` is ``a^i b^j``.
    """

    def __init__(self, order: int):
        self.order = order
        self.N = order // 2
        self.label = f"Q{order}"

    def mul(self, x, y):
        N = self.N
        i, j = x % N, x // N
        k, l = y % N, y // N
        sign = 1 - 2 * j
        return (i + sign * k + (j * l) * (N // 2)) % N + N * ((j + l) % 2)

    def name(self, idx):
        i, j = idx % self.N, idx // self.N
        if i == 0 and j == 0:
            return "e"
        a = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
        return a + ("b" if j else "")

    @cached_property
    def orders(self):
        N = self.N
        i = np.arange(N, dtype=np.int64)
        return np.concatenate([N // np.gcd(i, N), np.full(N, 4, dtype=np.int64)])


class _TableAtom(_Atom):
    def __init__(self, table: np.ndarray, names=None, label="G"):
        self.table = table
        self.order = table.shape[0]
        self.label = label
        self._names = names

    def mul(self, x, y):
        return self.table[x, y]

    def name(self, i):
        return self._names[i] if self._names else str(i)

    def power_seq(self, g):
        cache = self.__dict__.setdefault("_pow_cache", {})
        seq = cache.get(g)
        if seq is None:
            rows = self.table
            out = [0]
            cur = int(g)
            while cur != 0:
                out.append(cur)
                cur = int(rows[cur, g])
            seq = np.asarray(out, dtype=np.int64)
            cache[g] = seq
        return seq


def _make_atom(atom: Atom) -> _Atom:
    if isinstance(atom, Cyclic):
        return _CyclicAtom(atom.n)
    if isinstance(atom, Dihedral):
        return _DihedralAtom(atom.order)
    if isinstance(atom, GeneralizedQuaternion):
        return _QuaternionAtom(atom.order)
    raise TypeError(f"not an atom: {atom!r}")


# ---------------------------------------------------------------------------
# Group
# ---------------------------------------------------------------------------

class Group:
    """A concrete finite group on indices ``0..order-1`` (``0`` is the identity).

    Immutable after construction.  Use :func:`build_group` or
    :func:`load_cayley_table` rather than calling this directly.
    """

    def __init__(self, atoms: list[_Atom], display_name: str, spec: GroupSpec | None = None):
        self._atoms = atoms
        self.display_name = display_name
        self.spec = spec
        radices = [a.order for a in atoms]
        self.order = int(np.prod(radices, dtype=object)) if radices else 1
        strides = []
        acc = 1
        for r in reversed(radices):
            strides.append(acc)
            acc *= r
        self._strides = np.asarray(strides[::-1], dtype=np.int64)
        idx = np.arange(self.order, dtype=np.int64)
        self._digits = np.stack(
            [(idx // s) % r for s, r in zip(self._strides, radices)], axis=1
        ) if atoms else np.zeros((1, 0), dtype=np.int64)

    def __repr__(self):
        return f"Group({self.display_name!r}, order={self.order})"

    def __len__(self):
        return self.order

    @property
    def factor_count(self) -> int:
        return len(self._atoms)

    @property
    def elements(self) -> range:
        return range(self.order)

    # -- arithmetic ---------------------------------------------------------

    def mul_vec(self, x, y) -> np.ndarray:
        """Elementwise product of index arrays ``x`` and ``y`` (broadcasting)."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if len(self._atoms) == 1:
            return self._atoms[0].mul(x, y)
        dx = self._digits[x]
        dy = self._digits[y]
        out = np.zeros(np.broadcast_shapes(x.shape, y.shape), dtype=np.int64)
        for i, atom in enumerate(self._atoms):
            out = out + self._strides[i] * atom.mul(dx[..., i], dy[..., i])
        return out

    def multiply(self, a: int, b: int) -> int:
        return int(self.mul_vec(a, b))

    @cached_property
    def inverses(self) -> np.ndarray:
        out = np.zeros(self.order, dtype=np.int64)
        for i, atom in enumerate(self._atoms):
            out += self._strides[i] * atom.inverses[self._digits[:, i]]
        return out

    def inverse(self, g: int) -> int:
        return int(self.inverses[g])

    @cached_property
    def order_of(self) -> np.ndarray:
        """Cached element orders; lcm of the component orders."""
        out = np.ones(self.order, dtype=np.int64)
        for i, atom in enumerate(self._atoms):
            out = np.lcm(out, atom.orders[self._digits[:, i]])
        out.setflags(write=False)
        return out

    def powers(self, g: int) -> np.ndarray:
        """``[g^0, g^1, ..., g^(o(g)-1)]`` as an index array."""
        o = int(self.order_of[g])
        t = np.arange(o, dtype=np.int64)
        out = np.zeros(o, dtype=np.int64)
        d = self._digits[g]
        for i, atom in enumerate(self._atoms):
            seq = atom.power_seq(int(d[i]))
            out += self._strides[i] * seq[t % len(seq)]
        return out

    def name(self, g: int) -> str:
        if len(self._atoms) == 1:
            return self._atoms[0].name(g)
        d = self._digits[g]
        return "(" + ",".join(a.name(int(x)) for a, x in zip(self._atoms, d)) + ")"

    @cached_property
    def names(self) -> list[str]:
        return [self.name(g) for g in range(self.order)]

    def is_abelian(self) -> bool:
        idx = np.arange(self.order, dtype=np.int64)
        for g in range(self.order):
            if not np.array_equal(self.mul_vec(g, idx), self.mul_vec(idx, g)):
                return False
        return True

    def factor_projection(self, i: int) -> np.ndarray:
        """Digit of every element in factor ``i`` (product groups only)."""
        return self._digits[:, i]

    def factor_group(self, i: int) -> "Group":
        atom = self._atoms[i]
        spec = None
        if self.spec is not None and self.spec.table is None:
            spec = GroupSpec((self.spec.factors[i],))
        return Group([atom], atom.label, spec)

    def cayley_table(self) -> np.ndarray:
        idx = np.arange(self.order, dtype=np.int64)
        return self.mul_vec(idx[:, None], idx[None, :])


def build_group(spec: GroupSpec | str, max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Build the direct product described by ``spec``."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    if spec.table is not None:
        return load_cayley_table(spec.table.path, max_order=max_order)
    if spec.order > max_order:
        raise OrderLimitExceeded(
            f"|{spec}| = {spec.order} exceeds the order limit {max_order}")
    return Group([_make_atom(a) for a in spec.factors], str(spec), spec)


def group_from_table(table, names=None, name="G", check_associativity=False,
                     max_order: int = DEFAULT_MAX_ORDER) -> Group:
    try:
        t = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise InvalidGroupError(f"malformed table: {exc}", axiom="shape") from exc
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise InvalidGroupError(f"table must be a non-empty square array, got shape {t.shape}",
                                axiom="shape")
    n = t.shape[0]
    if n > max_order:
        raise OrderLimitExceeded(f"table order {n} exceeds the order limit {max_order}")
    if names is not None and len(names) != n:
        raise InvalidGroupError(f"{len(names)} names for a table of order {n}", axiom="shape")
    if t.min() < 0 or t.max() >= n:
        bad = np.argwhere((t < 0) | (t >= n))[0]
        raise InvalidGroupError(f"entry table[{bad[0]}][{bad[1]}] is out of range",
                                axiom="closure", witness=bad.tolist())
    ident = np.arange(n)
    for r in range(n):
        if len(np.unique(t[r])) != n:
            raise InvalidGroupError(f"row {r} is not a permutation", axiom="latin square",
                                    witness=(r,))
    for c in range(n):
        if len(np.unique(t[:, c])) != n:
            raise InvalidGroupError(f"column {c} is not a permutation", axiom="latin square",
                                    witness=(c,))
    if not np.array_equal(t[0], ident):
        j = int(np.flatnonzero(t[0] != ident)[0])
        raise InvalidGroupError(f"index 0 is not a left identity: 0*{j} != {j}",
                                axiom="identity", witness=(0, j))
    if not np.array_equal(t[:, 0], ident):
        j = int(np.flatnonzero(t[:, 0] != ident)[0])
        raise InvalidGroupError(f"index 0 is not a right identity: {j}*0 != {j}",
                                axiom="identity", witness=(j, 0))
    right_inv = np.argmax(t == 0, axis=1)
    bad = np.flatnonzero(t[right_inv, ident] != 0)
    if bad.size:
        g = int(bad[0])
        raise InvalidGroupError(f"element {g} has no two-sided inverse",
                                axiom="inverse", witness=(g, int(right_inv[g])))
    if check_associativity:
        for a in range(n):
            lhs = t[t[a]]          # (a*b)*c  indexed [b, c]
            rhs = t[a][t]          # a*(b*c)
            diff = np.argwhere(lhs != rhs)
            if diff.size:
                b, c = diff[0]
                raise InvalidGroupError(
                    f"not associative: ({a}*{b})*{c} != {a}*({b}*{c})",
                    axiom="associativity", witness=(a, int(b), int(c)))
    return Group([_TableAtom(t, list(names) if names else None, name)], name, None)


def load_cayley_table(path, check_associativity: bool = False,
                      max_order: int = DEFAULT_MAX_ORDER) -> Group:
    """Load ``{"order": n, "table": [[...]], "names": [...]}`` from a JSON file."""
    p = Path(path)
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise InvalidGroupError(f"{p}: not valid JSON ({exc})", axiom="format") from exc
    if not isinstance(data, dict) or "table" not in data or "order" not in data:
        raise InvalidGroupError(f"{p}: expected an object with 'order' and 'table'",
                                axiom="format")
    table = data["table"]
    n = data["order"]
    if not isinstance(n, int) or not isinstance(table, list) or len(table) != n or any(
            not isinstance(row, list) or len(row) != n for row in table):
        raise InvalidGroupError(f"{p}: 'table' must be an {n}x{n} array", axiom="shape")
    g = group_from_table(table, data.get("names"), name=p.stem,
                         check_associativity=check_associativity, max_order=max_order)
    g.spec = GroupSpec(table=CayleyTableRef(str(path)))
    return g


# ---------------------------------------------------------------------------
# Elementwise queries
# ---------------------------------------------------------------------------

def element_order(g: int, G: Group) -> int:
    return int(G.order_of[g])


def cyclic_subgroup(g: int, G: Group) -> frozenset[int]:
    return frozenset(int(x) for x in G.powers(g))


def _p_elements(G: Group, p: int) -> np.ndarray:
    """Indices of elements whose order is a power of ``p`` (identity included)."""
    o = G.order_of.copy()
    while True:
        div = (o % p == 0)
        if not div.any():
            break
        o[div] //= p
    return np.flatnonzero(o == 1)


def _closed(G: Group, members: np.ndarray, chunk: int = 1 << 20) -> bool:
    mask = np.zeros(G.order, dtype=bool)
    mask[members] = True
    rows = max(1, chunk // max(1, len(members)))
    for start in range(0, len(members), rows):
        xs = members[start:start + rows]
        prod = G.mul_vec(xs[:, None], members[None, :])
        if not mask[prod].all():
            return False
    return True


def is_nilpotent(G: Group) -> bool:
    """True iff for every prime ``p`` the ``p``-elements are closed under products."""
    for p in prime_divisors(G.order):
        if not _closed(G, _p_elements(G, p)):
            return False
    return True


def sylow_decomposition(G: Group) -> dict[int, np.ndarray]:
    """Map each prime ``p`` dividing ``|G|`` to its (unique) Sylow ``p``-subgroup."""
    out = {}
    for p, t in factorize(G.order).items() if G.order > 1 else []:
        members = _p_elements(G, p)
        if len(members) != p ** t or not _closed(G, members):
            raise NotNilpotentError(
                f"{G.display_name}: the {p}-elements do not form a Sylow subgroup")
        out[p] = members
    return out


CYCLIC = "Cyclic"
QUATERNION = "GeneralizedQuaternion"
OTHER = "Other"


def classify_sylow(H: Iterable[int], G: Group) -> str:
    members = np.fromiter(H, dtype=np.int64)
    size = len(members)
    orders = G.order_of[members]
    if (orders == size).any():
        return CYCLIC
    if size >= 8 and not size & (size - 1) and int((orders == 2).sum()) == 1:
        return QUATERNION
    return OTHER


def count_prime_order_subgroups(G: Group, p: int) -> int:
    """Number of subgroups of order ``p``: (#elements of order p) / (p - 1)."""
    k = int((G.order_of == p).sum())
    q, r = divmod(k, p - 1)
    if r:
        raise EpgError(f"{k} elements of order {p} is not a multiple of {p - 1}; "
                       "the group is broken")
    return q


# ---------------------------------------------------------------------------
# Nilpotent classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SylowInfo:
    order: int
    kind: str | None
    s_p: int
    max_element_order: int


@dataclass(frozen=True)
class NilpotentProfile:
    """Structure of a nilpotent group ``G1 x Z_n x Q_{2^k}``.

    ``case`` is 1..4 following which of the cyclic / quaternion Sylow kinds
    occur, or ``None`` when the group is not nilpotent.  ``G1`` is the
    product of the Sylows that are neither cyclic nor quaternion.
    """

    is_nilpotent: bool
    sylows: dict = field(default_factory=dict)
    case: int | None = None
    odd_noncyclic_part_order: int = 1
    cyclic_part_order: int = 1
    quaternion_order: int | None = None
    group_order: int = 1

    @property
    def noncyclic_primes(self) -> list[int]:
        return [p for p, s in sorted(self.sylows.items()) if s.kind == OTHER]

    @property
    def g1_is_p_group(self) -> bool:
        return len(self.noncyclic_primes) == 1

    @property
    def g1_trivial(self) -> bool:
        return self.odd_noncyclic_part_order == 1

    @property
    def is_cyclic(self) -> bool:
        return self.is_nilpotent and all(s.kind == CYCLIC for s in self.sylows.values())

    def as_dict(self) -> dict:
        return {
            "is_nilpotent": self.is_nilpotent,
            "case": self.case if self.case is not None else "NotNilpotent",
            "G1_order": self.odd_noncyclic_part_order,
            "n": self.cyclic_part_order,
            "quaternion_order": self.quaternion_order,
            "sylows": {
                str(p): {"order": s.order, "kind": s.kind, "s_p": s.s_p,
                         "max_element_order": s.max_element_order}
                for p, s in sorted(self.sylows.items())
            },
        }


def nilpotent_profile(G: Group) -> NilpotentProfile:
    primes = factorize(G.order) if G.order > 1 else {}
    nil = is_nilpotent(G)
    sylows = {}
    for p, t in primes.items():
        members = _p_elements(G, p)
        kind = classify_sylow(members, G) if nil else None
        sylows[p] = SylowInfo(order=p ** t, kind=kind,
                              s_p=count_prime_order_subgroups(G, p),
                              max_element_order=int(G.order_of[members].max()))
    if not nil:
        return NilpotentProfile(False, sylows, None, group_order=G.order)
    kinds = {s.kind for s in sylows.values()}
    has_c = CYCLIC in kinds
    has_q = QUATERNION in kinds
    case = {(False, False): 1, (True, False): 2, (False, True): 3, (True, True): 4}[(has_c, has_q)]
    g1 = n = 1
    q = None
    for s in sylows.values():
        if s.kind == OTHER:
            g1 *= s.order
        elif s.kind == CYCLIC:
            n *= s.order
        else:
            q = s.order
    return NilpotentProfile(True, sylows, case, g1, n, q, G.order)


def p_part_orders(G: Group, primes: Iterable[int]) -> np.ndarray:
    """For each element, the product of the ``p``-parts of its order over ``primes``."""
    o = G.order_of
    out = np.ones_like(o)
    for p in primes:
        rem = o.copy()
        part = np.ones_like(o)
        while True:
            div = rem % p == 0
            if not div.any():
                break
            rem[div] //= p
            part[div] *= p
        out *= part
    return out
