"""Abstract isomorphism testing for small permutation groups.

Strategy: cheap invariant profiles first (order, element-order histogram,
abelianness, center order, derived series, conjugacy class sizes); if the
profiles agree, a backtrack search maps a short generating tuple of one
group onto candidate tuples of the other.  A candidate assignment is
certified through the graph subgroup in the direct product: the partial
tuple ((g_1,h_1),...,(g_j,h_j)) generates a subgroup of G x H whose order
equals |<g_1..g_j>| exactly when the partial map extends to a homomorphism
on that subgroup, so mismatching orders prune the branch immediately.

A brute-force oracle (multiplication-table closure over all generator image
tuples) is included for cross-checking at tiny orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .perm import Perm, PermGroup, compose, inverse
from .stabchain import build_chain
from .group_ops import element_orders_array, rows_view, derived_subgroup
from .dense import dense_context


ISO_ORDER_CAP = 400_000


class IsoError(ValueError):
    pass


@dataclass(frozen=True)
class IsoProfile:
    """Isomorphism invariants; equal profiles are necessary for isomorphism."""

    order: int
    order_hist: tuple[tuple[int, int], ...]     # (element order, count)
    abelian: bool
    center_order: int
    derived_orders: tuple[int, ...]             # orders along the derived series
    class_sizes: tuple[tuple[int, int], ...]    # (class size, multiplicity)


class _GroupData:
    """Element table, orders, and conjugacy classes of one group."""

    def __init__(self, G: PermGroup):
        self.group = G
        self.chain = build_chain(G)
        self.order = self.chain.order
        if self.order > ISO_ORDER_CAP:
            raise IsoError(f"group order {self.order} beyond isomorphism-test range")
        self.elements = self.chain.element_array()
        self.view = rows_view(self.elements)
        self.orders = element_orders_array(self.elements)
        self.identity_idx = int(
            np.searchsorted(self.view, rows_view(
                np.arange(G.degree, dtype=self.elements.dtype)[None, :]))[0]
        )
        self._classify()

    def rank(self, rows: np.ndarray) -> np.ndarray:
        return np.searchsorted(self.view, rows_view(rows))

    def _conj_map(self, g: Perm) -> np.ndarray:
        gi = np.array(inverse(g))
        ga = np.array(g, dtype=self.elements.dtype)
        return self.rank(ga[self.elements[:, gi]])

    def _classify(self) -> None:
        maps = [self._conj_map(g) for g in self.group.generators]
        class_id = np.full(self.order, -1, dtype=np.int64)
        sizes: list[int] = []
        for x in range(self.order):
            if class_id[x] >= 0:
                continue
            cid = len(sizes)
            stack = [x]
            class_id[x] = cid
            count = 0
            while stack:
                y = stack.pop()
                count += 1
                for cm in maps:
                    z = int(cm[y])
                    if class_id[z] < 0:
                        class_id[z] = cid
                        stack.append(z)
            sizes.append(count)
        self.class_id = class_id
        self.class_sizes = np.array(sizes, dtype=np.int64)

    def element_profile(self, x: int) -> tuple[int, int]:
        return int(self.orders[x]), int(self.class_sizes[self.class_id[x]])

    def center_order(self) -> int:
        mask = np.ones(self.order, dtype=bool)
        E = self.elements
        for g in self.group.generators:
            ga = np.array(g, dtype=E.dtype)
            # e*g: a -> g[e[a]];  g*e: a -> e[g[a]]
            mask &= (ga[E] == E[:, ga]).all(axis=1)
        return int(mask.sum())

    def generating_tuple(self) -> list[int]:
        """Short generating tuple, rarest (order, class size) profile first."""
        profiles: dict[tuple[int, int], int] = {}
        for x in range(self.order):
            p = self.element_profile(x)
            profiles[p] = profiles.get(p, 0) + 1
        ranked = sorted(
            (x for x in range(self.order) if x != self.identity_idx),
            key=lambda x: (profiles[self.element_profile(x)],
                           -int(self.orders[x]), x),
        )
        gens: list[int] = []
        chain = build_chain(PermGroup(self.group.degree, ()))
        for x in ranked:
            if chain.order == self.order:
                break
            p = self.perm(x)
            if not chain.contains(p):
                gens.append(x)
                chain = build_chain(
                    PermGroup.from_gens(self.group.degree, [self.perm(g) for g in gens])
                )
        if chain.order != self.order:
            raise IsoError("failed to build a generating tuple")
        return gens

    def perm(self, x: int) -> Perm:
        return tuple(int(v) for v in self.elements[x])


@lru_cache(maxsize=4096)
def _data(G: PermGroup) -> _GroupData:
    return _GroupData(G)


@lru_cache(maxsize=4096)
def iso_profile(G: PermGroup) -> IsoProfile:
    d = _data(G)
    vals, counts = np.unique(d.orders, return_counts=True)
    hist = tuple((int(v), int(c)) for v, c in zip(vals, counts))
    svals, scounts = np.unique(d.class_sizes, return_counts=True)
    csizes = tuple((int(v), int(c)) for v, c in zip(svals, scounts))
    derived = [d.order]
    cur = G
    while True:
        nxt = derived_subgroup(cur)
        o = build_chain(nxt).order
        if o == derived[-1]:
            break
        derived.append(o)
        cur = nxt
        if o == 1:
            break
    return IsoProfile(
        order=d.order,
        order_hist=hist,
        abelian=bool(d.order == d.center_order()),
        center_order=d.center_order(),
        derived_orders=tuple(derived),
        class_sizes=csizes,
    )


def _pair_perm(g: Perm, h: Perm, n: int, m: int) -> Perm:
    return tuple(list(g) + [n + v for v in h])


def is_isomorphic(G: PermGroup, H: PermGroup) -> bool:
    """Abstract isomorphism of two permutation groups (possibly of different
    degrees)."""
    if iso_profile(G) != iso_profile(H):
        return False
    dG, dH = _data(G), _data(H)
    if dG.order == 1:
        return True
    gens = dG.generating_tuple()
    n, m = G.degree, H.degree

    # orders of the subgroups generated by prefixes of the source tuple
    prefix_orders = []
    for j in range(1, len(gens) + 1):
        prefix_orders.append(
            build_chain(PermGroup.from_gens(n, [dG.perm(x) for x in gens[:j]])).order
        )

    src_profiles = [dG.element_profile(x) for x in gens]
    candidates_by_profile: dict[tuple[int, int], list[int]] = {}
    for y in range(dH.order):
        candidates_by_profile.setdefault(dH.element_profile(y), []).append(y)
    for p in src_profiles:
        if p not in candidates_by_profile:
            return False

    src_perms = [dG.perm(x) for x in gens]

    def extend(j: int, images: list[int]) -> bool:
        if j == len(gens):
            htuple = [dH.perm(y) for y in images]
            return build_chain(PermGroup.from_gens(m, htuple)).order == dH.order
        # first slot: one candidate per conjugacy class of H is enough,
        # since composing with an inner automorphism fixes nothing yet
        seen_classes: set[int] = set()
        for y in candidates_by_profile[src_profiles[j]]:
            if j == 0:
                cid = int(dH.class_id[y])
                if cid in seen_classes:
                    continue
                seen_classes.add(cid)
            pair_gens = [
                _pair_perm(src_perms[i], dH.perm(images[i]), n, m)
                for i in range(j)
            ] + [_pair_perm(src_perms[j], dH.perm(y), n, m)]
            graph_order = build_chain(PermGroup.from_gens(n + m, pair_gens)).order
            if graph_order != prefix_orders[j]:
                continue
            if extend(j + 1, images + [y]):
                return True
        return False

    return extend(0, [])


# ---------------------------------------------------------------------------
# brute-force oracle


def brute_force_isomorphic(G: PermGroup, H: PermGroup) -> bool:
    """Multiplication-table closure over every generator image tuple.

    Independent of the graph-certificate machinery; intended for orders up
    to a few dozen.
    """
    cg = dense_context(G, cap=200)
    ch = dense_context(H, cap=200)
    if cg.order != ch.order:
        return False
    if cg.order == 1:
        return True
    # greedy generating tuple of G (first element outside the running closure)
    gens: list[int] = []
    have = np.zeros(cg.order, dtype=bool)
    have[cg.closure([])] = True
    for x in range(cg.order):
        if not have[x]:
            gens.append(x)
            have[:] = False
            have[cg.closure(gens)] = True
    k = len(gens)

    def try_images(images: list[int]) -> bool:
        # grow the map over G by table closure; reject on any inconsistency
        phi = np.full(cg.order, -1, dtype=np.int64)
        phi[cg.identity_idx] = ch.identity_idx
        queue = [cg.identity_idx]
        qi = 0
        while qi < len(queue):
            a = queue[qi]
            qi += 1
            for g, h in zip(gens, images):
                a2 = int(cg.table[a, g])
                b2 = int(ch.table[phi[a], h])
                if phi[a2] < 0:
                    phi[a2] = b2
                    queue.append(a2)
                elif phi[a2] != b2:
                    return False
        if (phi < 0).any():
            return False
        return len(set(int(v) for v in phi)) == cg.order

    def search(j: int, images: list[int]) -> bool:
        if j == k:
            return try_images(images)
        want = int(cg.orders[gens[j]])
        for y in range(ch.order):
            if int(ch.orders[y]) == want and search(j + 1, images + [y]):
                return True
        return False

    return search(0, [])
