"""Minimal faithful permutation degree.

mu(G) is the least n such that G embeds in Sym(n).  Every faithful action
is a disjoint union of coset actions, so

    mu(G) = min { sum_i [G : H_i] : subgroups H_i with
                  intersection of core_G(H_i) trivial }.

Cores are invariant under conjugation of H, so the search runs over
conjugacy classes of subgroups.  The solver is a branch-and-bound over
classes ordered by index, with dominance pruning and a lower bound from the
minimal normal subgroups (each one must be excluded from some core).  An
exhaustive variant without the heuristics serves as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .perm import PermGroup
from .stabchain import build_chain
from .dense import DenseGroup, dense_context, dense_subgroup_classes
from .iso import is_isomorphic


class MinDegError(ValueError):
    pass


@dataclass
class MuResult:
    """Optimal faithful degree with a witnessing collection of subgroups."""

    value: int
    indices: tuple[int, ...]            # coset-space sizes, ascending
    collection: tuple[PermGroup, ...]   # the point stabilizers H_i


@dataclass
class _Option:
    index: int
    core: np.ndarray                    # element mask of core_G(H)
    gens: list[int]


def _options(ctx: DenseGroup) -> list[_Option]:
    out = []
    for cls in dense_subgroup_classes(ctx):
        mask = np.zeros(ctx.order, dtype=bool)
        mask[cls.elems] = True
        out.append(_Option(ctx.order // cls.order, ctx.core_mask(mask), cls.gens))
    out.sort(key=lambda o: (o.index, -int(o.core.sum())))
    return out


def _prune_dominated(options: list[_Option]) -> list[_Option]:
    """Drop H when some K has index <= and core a subset: K is never worse."""
    kept: list[_Option] = []
    for o in options:
        dominated = False
        for k in kept:
            if k.index <= o.index and not (k.core & ~o.core).any():
                dominated = True
                break
        if not dominated:
            kept.append(o)
    return kept


def _solve(ctx: DenseGroup, options: list[_Option], upper: int,
           use_min_normal_bound: bool) -> tuple[int, list[_Option]]:
    N = ctx.order
    full = np.ones(N, dtype=bool)
    best = upper
    best_pick: list[_Option] = []

    if use_min_normal_bound:
        min_normals = ctx.minimal_normal_subgroups()
        mn_masks = []
        mn_excl_cost = []
        for elems in min_normals:
            mask = np.zeros(N, dtype=bool)
            mask[elems] = True
            mn_masks.append(mask)
            costs = [o.index for o in options if (mask & ~o.core).any()]
            if not costs:
                raise MinDegError("no subgroup excludes a minimal normal subgroup")
            mn_excl_cost.append(min(costs))
    else:
        mn_masks, mn_excl_cost = [], []

    def lower_bound(kernel: np.ndarray) -> int:
        lb = 0
        for mask, c in zip(mn_masks, mn_excl_cost):
            if not (mask & ~kernel).any():     # M still inside the kernel
                lb = max(lb, c)
        return lb

    def dfs(start: int, kernel: np.ndarray, cost: int, picked: list[_Option]) -> None:
        nonlocal best, best_pick
        if int(kernel.sum()) == 1:
            if cost < best:
                best = cost
                best_pick = list(picked)
            return
        if cost + (lower_bound(kernel) if use_min_normal_bound else 1) >= best:
            return
        for i in range(start, len(options)):
            o = options[i]
            if cost + o.index >= best:
                break                           # options sorted by index
            k2 = kernel & o.core
            if int(k2.sum()) == int(kernel.sum()):
                continue                        # no progress
            picked.append(o)
            dfs(i + 1, k2, cost + o.index, picked)
            picked.pop()

    dfs(0, full, 0, [])
    return best, best_pick


def _orbit_of(G: PermGroup, a: int) -> set[int]:
    orb = {a}
    queue = [a]
    while queue:
        x = queue.pop()
        for g in G.generators:
            if g[x] not in orb:
                orb.add(g[x])
                queue.append(g[x])
    return orb


def _lagrange_lower(order: int) -> int:
    """Least n with order dividing n! (an embedding in Sym(n) needs this)."""
    n, f = 1, 1
    while f % order:
        n += 1
        f *= n
    return n


def mu(G: PermGroup) -> MuResult:
    """Minimal faithful permutation degree, with a witnessing collection."""
    if G.is_trivial():
        return MuResult(0, (), ())
    moved = G.moved_points()
    order = build_chain(G).order
    if _lagrange_lower(order) == len(moved):
        # the action at hand is already optimal: |G| divides no smaller
        # factorial, so no smaller faithful degree exists
        from .stabchain import point_stabilizer
        orbs = []
        seen: set[int] = set()
        for a in moved:
            if a not in seen:
                orb = sorted({g_img for g_img in _orbit_of(G, a)})
                seen.update(orb)
                orbs.append(orb)
        chain = build_chain(G)
        collection = tuple(point_stabilizer(chain, o[0]) for o in orbs)
        return MuResult(len(moved), tuple(sorted(len(o) for o in orbs)), collection)
    ctx = dense_context(G)
    options = _prune_dominated(_options(ctx))
    # the action we were handed is faithful on its moved points
    upper = len(G.moved_points()) + 1
    best, pick = _solve(ctx, options, upper, use_min_normal_bound=True)
    if best >= upper:
        raise MinDegError("search failed to match the natural-degree bound")
    subs = tuple(
        PermGroup.from_gens(G.degree, (ctx.perm(i) for i in o.gens)) for o in pick
    )
    indices = tuple(sorted(o.index for o in pick))
    # certify: the chosen cores intersect trivially and the sizes add up
    kernel = np.ones(ctx.order, dtype=bool)
    for o in pick:
        kernel &= o.core
    if int(kernel.sum()) != 1 or sum(indices) != best:
        raise MinDegError("witness collection failed certification")
    return MuResult(best, indices, subs)


def mu_exhaustive(G: PermGroup) -> int:
    """Plain exhaustive search over subgroup classes (oracle; small orders)."""
    ctx = dense_context(G, cap=1000)
    if ctx.order == 1:
        return 0
    options = _options(ctx)
    upper = len(G.moved_points()) + 1
    best, _ = _solve(ctx, options, upper, use_min_normal_bound=False)
    return best


def is_minimally_embedded(
    G: PermGroup,
    method: str = "iso_filter",
    smaller_classes: list[PermGroup] | None = None,
) -> bool:
    """Is mu(G) equal to the degree G is currently written on?

    iso_filter: G moves every point and is isomorphic to no subgroup of the
    symmetric group of degree one less (checked against its class list).
    direct_mu: compute mu(G) outright (dense-order groups only).
    """
    m = G.degree
    if G.is_trivial():
        return m == 0          # mu(1) = 0 by convention
    if len(G.fixed_points()) > 0:
        return False
    if method == "direct_mu":
        return mu(G).value == m
    if method != "iso_filter":
        raise MinDegError(f"unknown method {method!r}")
    if smaller_classes is None:
        from .subgroup_enum import subgroup_classes
        from .perm import make_named
        smaller_classes = [
            c.representative for c in subgroup_classes(make_named("symmetric", m - 1))
        ]
    order = build_chain(G).order
    for H in smaller_classes:
        if build_chain(H).order == order and is_isomorphic(G, H):
            return False
    return True
