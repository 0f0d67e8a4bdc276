"""Permutations, cycle notation, and constructors for the groups we survey.

Points are 1-based in all external notation (cycle strings, CLI input).
Internally a permutation is a tuple ``images`` of 0-based points where
``images[a]`` is the image of ``a``.  Composition is left-to-right:
``compose(p, q)`` applies ``p`` first, then ``q`` (right action, as in
most computer algebra systems).
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field

Perm = tuple[int, ...]


class PermError(ValueError):
    """Malformed permutation input or degree mismatch."""


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def is_identity(p: Perm) -> bool:
    return all(p[i] == i for i in range(len(p)))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply ``p`` first, then ``q``."""
    if len(p) != len(q):
        raise PermError(f"degree mismatch: {len(p)} vs {len(q)}")
    return tuple(q[p[a]] for a in range(len(p)))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for a, b in enumerate(p):
        inv[b] = a
    return tuple(inv)


def conjugate(p: Perm, g: Perm) -> Perm:
    """g^-1 * p * g (image of p under relabelling points by g)."""
    if len(p) != len(g):
        raise PermError(f"degree mismatch: {len(p)} vs {len(g)}")
    out = [0] * len(p)
    for a in range(len(p)):
        out[g[a]] = g[p[a]]
    return tuple(out)


def cycles(p: Perm) -> list[list[int]]:
    """Nontrivial cycles, each starting at its smallest point, 0-based."""
    seen = [False] * len(p)
    out = []
    for a in range(len(p)):
        if seen[a] or p[a] == a:
            seen[a] = True
            continue
        cyc = [a]
        seen[a] = True
        b = p[a]
        while b != a:
            cyc.append(b)
            seen[b] = True
            b = p[b]
        out.append(cyc)
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Sorted cycle lengths including fixed points."""
    lens = [len(c) for c in cycles(p)]
    lens += [1] * (len(p) - sum(lens))
    return tuple(sorted(lens))


def element_order(p: Perm) -> int:
    return math.lcm(*(len(c) for c in cycles(p)), 1)


_TOKEN = re.compile(r"\(|\)|[0-9]+|,|\s+")


def parse_perm(text: str, degree: int) -> Perm:
    """Parse disjoint-cycle notation like ``(1 2)(3 4 5)`` on 1..degree.

    ``()`` and ``id`` denote the identity.  Commas and whitespace are both
    accepted as separators inside a cycle.
    """
    if degree < 0:
        raise PermError("degree must be non-negative")
    s = text.strip()
    if s in ("", "id", "()"):
        return identity(degree)
    pos = 0
    images = list(range(degree))
    used: set[int] = set()
    depth = 0
    cur: list[int] = []
    for m in _TOKEN.finditer(s):
        if m.start() != pos:
            raise PermError(f"bad character at position {pos} in {text!r}")
        pos = m.end()
        tok = m.group()
        if tok.isspace() or tok == ",":
            continue
        if tok == "(":
            if depth:
                raise PermError(f"nested '(' in {text!r}")
            depth, cur = 1, []
        elif tok == ")":
            if not depth:
                raise PermError(f"unbalanced ')' in {text!r}")
            depth = 0
            for a, b in zip(cur, cur[1:] + cur[:1]):
                images[a] = b
            cur = []
        else:
            if not depth:
                raise PermError(f"point outside cycle in {text!r}")
            pt = int(tok)
            if not 1 <= pt <= degree:
                raise PermError(f"point {pt} out of range 1..{degree}")
            if pt - 1 in used:
                raise PermError(f"repeated point {pt} in {text!r}")
            used.add(pt - 1)
            cur.append(pt - 1)
    if pos != len(s):
        raise PermError(f"bad character at position {pos} in {text!r}")
    if depth:
        raise PermError(f"unbalanced '(' in {text!r}")
    return tuple(images)


def format_perm(p: Perm) -> str:
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(str(a + 1) for a in c) + ")" for c in cs)


@dataclass(frozen=True)
class PermGroup:
    """A permutation group given by degree and generators.

    The empty generator list denotes the trivial group.  Immutable; safe to
    share between threads.
    """

    degree: int
    generators: tuple[Perm, ...] = field(default=())

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.degree:
                raise PermError(
                    f"generator of degree {len(g)} in group of degree {self.degree}"
                )

    @staticmethod
    def from_gens(degree: int, gens) -> "PermGroup":
        # drop identity generators so the trivial group is canonical
        kept = tuple(g for g in (tuple(x) for x in gens) if not is_identity(g))
        return PermGroup(degree, kept)

    @staticmethod
    def parse(degree: int, gen_texts) -> "PermGroup":
        return PermGroup.from_gens(degree, (parse_perm(t, degree) for t in gen_texts))

    def gen_strings(self) -> list[str]:
        return [format_perm(g) for g in self.generators]

    def is_trivial(self) -> bool:
        return not self.generators

    def moved_points(self) -> list[int]:
        return [a for a in range(self.degree) if any(g[a] != a for g in self.generators)]

    def fixed_points(self) -> list[int]:
        moved = set(self.moved_points())
        return [a for a in range(self.degree) if a not in moved]


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, ())


def make_named(kind: str, n: int) -> PermGroup:
    """Standard copies of Sym(n), Alt(n), and C_n on n points."""
    if n < 1:
        raise PermError(f"n must be >= 1, got {n}")
    if kind == "symmetric":
        if n == 1:
            return trivial_group(1)
        cyc = tuple(list(range(1, n)) + [0])
        if n == 2:
            return PermGroup(2, (cyc,))
        swap = tuple([1, 0] + list(range(2, n)))
        return PermGroup(n, (swap, cyc))
    if kind == "alternating":
        if n <= 2:
            return trivial_group(n)
        if n == 3:
            return PermGroup(3, ((1, 2, 0),))
        # (1 2 3) and (1 2 ... n) for odd n, (2 3 ... n) for even n
        three = tuple([1, 2, 0] + list(range(3, n)))
        if n % 2:
            big = tuple(list(range(1, n)) + [0])
        else:
            big = tuple([0] + list(range(2, n)) + [1])
        return PermGroup(n, (three, big))
    if kind == "cyclic":
        if n == 1:
            return trivial_group(1)
        return PermGroup(n, (tuple(list(range(1, n)) + [0]),))
    raise PermError(f"unknown group kind {kind!r}")


def make_gppq(p: int, q: int) -> PermGroup:
    """The imprimitive reflection group G(p,p,q) on p*q points.

    Points are arranged in q blocks of size p; block j is
    {(j-1)p+1, ..., jp} in 1-based notation.  Generators: the q-1 adjacent
    block swaps (position-wise), and one element translating block 1 by +1
    and block 2 by -1 mod p.  The result is (C_p)^(q-1) : Sym(q) of order
    p^(q-1) * q!.
    """
    if p < 2 or q < 2:
        raise PermError("G(p,p,q) requires p >= 2 and q >= 2")
    n = p * q
    gens = []
    for j in range(q - 1):
        g = list(range(n))
        for i in range(p):
            a, b = j * p + i, (j + 1) * p + i
            g[a], g[b] = g[b], g[a]
        gens.append(tuple(g))
    u = list(range(n))
    for i in range(p):
        u[i] = (i + 1) % p
        u[p + i] = p + (i - 1) % p
    gens.append(tuple(u))
    return PermGroup(n, tuple(gens))


def gppq_blocks(p: int, q: int) -> list[list[int]]:
    return [list(range(j * p, (j + 1) * p)) for j in range(q)]


def direct_product_disjoint(G: PermGroup, H: PermGroup) -> PermGroup:
    """G x H acting on deg(G) + deg(H) points, H shifted up."""
    n, m = G.degree, H.degree
    gens = [tuple(list(g) + list(range(n, n + m))) for g in G.generators]
    gens += [tuple(list(range(n)) + [n + h[a] for a in range(m)]) for h in H.generators]
    return PermGroup(n + m, tuple(gens))


def shift_group(G: PermGroup, degree: int) -> PermGroup:
    """Re-embed G in Sym(degree) fixing the new points (degree >= deg(G))."""
    if degree < G.degree:
        raise PermError("cannot shrink degree")
    pad = list(range(G.degree, degree))
    return PermGroup(degree, tuple(tuple(list(g) + pad) for g in G.generators))


def random_perm(rng, degree: int) -> Perm:
    images = list(range(degree))
    rng.shuffle(images)
    return tuple(images)


def all_perms(degree: int):
    """All permutations of the given degree in lexicographic order."""
    return itertools.permutations(range(degree))
