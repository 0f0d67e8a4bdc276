"""Base-and-strong-generating-set machinery (deterministic Schreier-Sims).

A chain gives group order, membership, element iteration, and point
stabilizers.  Construction is deterministic: the same generator list always
produces the same base, transversals, and iteration order.  Chains are
immutable after build.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .perm import (
    Perm,
    PermGroup,
    compose,
    element_order,
    identity,
    inverse,
    is_identity,
)


class StabChainError(ValueError):
    pass


@dataclass
class _Level:
    point: int
    gens: list[Perm] = field(default_factory=list)
    # transversal[x] = u with u[point] = x
    transversal: dict[int, Perm] = field(default_factory=dict)

    def recompute_orbit(self, degree: int) -> None:
        b = self.point
        self.transversal = {b: identity(degree)}
        queue = [b]
        while queue:
            x = queue.pop(0)
            u = self.transversal[x]
            for s in self.gens:
                y = s[x]
                if y not in self.transversal:
                    self.transversal[y] = compose(u, s)
                    queue.append(y)


@dataclass
class StabChain:
    degree: int
    generators: tuple[Perm, ...]
    base: list[int] = field(default_factory=list)
    levels: list[_Level] = field(default_factory=list)

    @property
    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.transversal)
        return n

    def sift(self, p: Perm, start: int = 0) -> tuple[Perm, int]:
        """Strip ``p`` through levels ``start..``; returns (residue, level).

        The residue is the identity iff p factors through the chain from
        ``start``.  ``level`` is where stripping stopped (== len(levels) on
        success or on a nonidentity residue fixing every base point).
        """
        if len(p) != self.degree:
            raise StabChainError(f"degree mismatch: {len(p)} vs {self.degree}")
        g = p
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            x = g[lv.point]
            if x not in lv.transversal:
                return g, i
            g = compose(g, inverse(lv.transversal[x]))
        return g, len(self.levels)

    def contains(self, p: Perm) -> bool:
        residue, _ = self.sift(p)
        return is_identity(residue)

    def strong_gens(self, level: int = 0) -> list[Perm]:
        return list(self.levels[level].gens) if level < len(self.levels) else []

    def elements(self):
        """Yield every group element exactly once, deterministically.

        Order: depth-first over levels, transversal points ascending; the
        identity comes first.
        """
        yield from self._elements_below(0, identity(self.degree))

    def _elements_below(self, level: int, outer: Perm):
        # outer = accumulated transversal product of shallower levels;
        # elements of this subtree are compose(h, u_x, ..., outer)-style
        if level == len(self.levels):
            yield outer
            return
        lv = self.levels[level]
        for x in sorted(lv.transversal):
            yield from self._elements_below(level + 1, compose(lv.transversal[x], outer))

    def element_array(self) -> np.ndarray:
        """All elements as an (order, degree) uint8/uint16 array, lex-sorted."""
        dt = np.uint8 if self.degree <= 255 else np.uint16
        out = np.array([identity(self.degree)], dtype=dt)
        for lv in reversed(self.levels):
            trans = np.array([lv.transversal[x] for x in sorted(lv.transversal)], dtype=dt)
            # compose(h, u): a -> u[h[a]]; h ranges over `out`, u over trans
            k, t = out.shape[0], trans.shape[0]
            new = trans[:, out.reshape(-1)].reshape(t * k, self.degree)
            out = new
        order = np.lexsort(out.T[::-1])
        return out[order]

    def elements_of_order(self, k: int):
        """Lazily yield every element of order exactly k, each once.

        Deterministic given the chain; supports early termination.  Prunes
        subtrees whose decided base-point cycles already rule out order k.
        """
        if k < 1:
            raise StabChainError("k must be >= 1")
        if k == 1:
            yield identity(self.degree)
            return
        decided = self.base
        yield from self._order_dfs(0, identity(self.degree), k, decided)

    def _order_dfs(self, level: int, partial: Perm, k: int, decided: list[int]):
        if level == len(self.levels):
            if element_order(partial) == k:
                yield partial
            return
        lv = self.levels[level]
        prefix = set(decided[: level + 1])
        for x in sorted(lv.transversal):
            nxt = compose(lv.transversal[x], partial)
            # every element of this subtree agrees with nxt on decided points;
            # closed cycles through decided points must divide k
            if self._closed_cycles_ok(nxt, prefix, k):
                yield from self._order_dfs(level + 1, nxt, k, decided)

    def _closed_cycles_ok(self, g: Perm, prefix: set[int], k: int) -> bool:
        seen: set[int] = set()
        for b in prefix:
            if b in seen:
                continue
            length, x, closed = 0, b, False
            while True:
                if x not in prefix:
                    break
                if length and x == b:
                    closed = True
                    break
                seen.add(x)
                x = g[x]
                length += 1
                if length > len(g):
                    break
            if closed and (length == 0 or k % length != 0):
                return False
        return True


def build_chain(G: PermGroup, initial_base: list[int] | None = None) -> StabChain:
    """Deterministic Schreier-Sims with a final verification pass."""
    degree = G.degree
    gens = [g for g in G.generators if not is_identity(g)]
    chain = StabChain(degree=degree, generators=tuple(gens))
    if initial_base:
        for b in initial_base:
            if not 0 <= b < degree:
                raise StabChainError(f"base point {b} out of range")
            chain.base.append(b)
            chain.levels.append(_Level(point=b))
    if not gens:
        for lv in chain.levels:
            lv.recompute_orbit(degree)
        return chain

    def moved_point(p: Perm) -> int:
        for a in range(degree):
            if p[a] != a:
                return a
        raise AssertionError("identity has no moved point")

    def ensure_level_for(p: Perm) -> None:
        if all(p[b] == b for b in chain.base):
            chain.base.append(moved_point(p))
            chain.levels.append(_Level(point=chain.base[-1]))

    for g in gens:
        ensure_level_for(g)
        for i, b in enumerate(chain.base):
            chain.levels[i].gens.append(g)
            if g[b] != b:
                break
    for lv in chain.levels:
        lv.recompute_orbit(degree)

    i = len(chain.levels) - 1
    while i >= 0:
        restart = False
        lv = chain.levels[i]
        for x in sorted(lv.transversal):
            u = lv.transversal[x]
            for s in lv.gens:
                g = compose(u, s)
                y = g[lv.point]
                sg = compose(g, inverse(lv.transversal[y]))
                if is_identity(sg):
                    continue
                h, j = chain.sift(sg, i + 1)
                if is_identity(h):
                    continue
                if j == len(chain.levels):
                    chain.base.append(moved_point(h))
                    chain.levels.append(_Level(point=chain.base[-1]))
                for l in range(i + 1, j + 1):
                    chain.levels[l].gens.append(h)
                    chain.levels[l].recompute_orbit(degree)
                i = j
                restart = True
                break
            if restart:
                break
        if restart:
            continue
        i -= 1

    _verify(chain)
    return chain


def _verify(chain: StabChain) -> None:
    """Check every Schreier generator sifts to the identity."""
    for i, lv in enumerate(chain.levels):
        for x in lv.transversal:
            u = lv.transversal[x]
            for s in lv.gens:
                g = compose(u, s)
                sg = compose(g, inverse(lv.transversal[g[lv.point]]))
                residue, _ = chain.sift(sg, i + 1)
                if not is_identity(residue):
                    raise StabChainError("Schreier-Sims verification failed")


def group_order(obj) -> int:
    """Order of a PermGroup or StabChain."""
    if isinstance(obj, StabChain):
        return obj.order
    return build_chain(obj).order


def point_stabilizer(chain: StabChain, a: int) -> PermGroup:
    """Stabilizer of point ``a`` (0-based) in the chain's group."""
    if not 0 <= a < chain.degree:
        raise StabChainError(f"point {a} out of range 0..{chain.degree - 1}")
    rebased = build_chain(
        PermGroup(chain.degree, chain.generators), initial_base=[a]
    )
    if len(rebased.levels) <= 1:
        return PermGroup(chain.degree, ())
    return PermGroup.from_gens(chain.degree, rebased.levels[1].gens)
