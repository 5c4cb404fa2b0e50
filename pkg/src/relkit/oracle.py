"""Brute-force reference implementations used as test oracles.

Everything here works from explicit element enumeration or plain
breadth-first closure over tuples; nothing touches stabilizer chains, so
these routines stay independent of the fast paths they validate.
"""

from __future__ import annotations

import itertools

from .errors import GroupTooLarge, TooLarge
from .perm import Permutation


def mulclose(generators, degree, cap=None):
    """All elements of <generators> as image tuples, by closure."""
    identity = tuple(range(degree))
    gens = [g.images for g in generators]
    els = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = tuple(g[x] for x in a)
                if c not in els:
                    els.add(c)
                    new.append(c)
                    if cap is not None and len(els) > cap:
                        raise GroupTooLarge(f"closure exceeded cap {cap}")
        frontier = new
    return sorted(els)


def brute_order(group, cap=10**6) -> int:
    return len(mulclose(group.generators, group.degree, cap))


def brute_transporter(group, src, dst, cap=10**6):
    """Scan all elements for one mapping src -> dst pointwise."""
    for images in mulclose(group.generators, group.degree, cap):
        if all(images[a] == b for a, b in zip(src, dst)):
            return Permutation(images)
    return None


def brute_automorphism_count(structure) -> int:
    """Count bijections of the vertex set preserving every relation."""
    if structure.vertices > 8:
        raise TooLarge("brute automorphism count capped at 8 vertices")
    count = 0
    verts = range(structure.vertices)
    for images in itertools.permutations(verts):
        ok = True
        for _, tuples in structure.relations:
            mapped = {tuple(images[v] for v in t) for t in tuples}
            if mapped != tuples:
                ok = False
                break
        if ok:
            count += 1
    return count


def _tuple_orbit_labels(gens, degree, length):
    """Orbit index for every distinct-entry tuple of the given length."""
    labels = {}
    next_label = 0
    for start in itertools.permutations(range(degree), length):
        if start in labels:
            continue
        orbit = {start}
        stack = [start]
        while stack:
            t = stack.pop()
            for g in gens:
                u = tuple(g[x] for x in t)
                if u not in orbit:
                    orbit.add(u)
                    stack.append(u)
        for t in orbit:
            labels[t] = next_label
        next_label += 1
    return labels


def naive_relational_complexity(group, max_degree=8, max_order=10**4) -> int:
    """RC from the definition, over all pairs of distinct-entry tuples.

    Two tuples of length L are (L-1)-subtuple complete exactly when all
    their one-point deletions are G-equivalent, and equivalence of tuples
    is constant on orbit pairs, so it suffices to compare, per orbit, the
    vector of deletion-orbit labels: a label collision between distinct
    orbits is a witness at level L-1.  Orbits are grown by plain closure
    under the generators.
    """
    n = group.degree
    if n > max_degree:
        raise TooLarge(f"naive oracle capped at degree {max_degree}")
    mulclose(group.generators, n, max_order)  # raises GroupTooLarge beyond cap
    gens = [g.images for g in group.generators]
    if not gens:
        return 2
    labels = {length: _tuple_orbit_labels(gens, n, length) for length in range(1, n + 1)}
    best = 1
    for length in range(n, 2, -1):
        if length - 1 <= best:
            break
        lab = labels[length]
        reps = {}
        for t, o in lab.items():
            if o not in reps:
                reps[o] = t
        signatures = {}
        collision = False
        for o, t in reps.items():
            sig = tuple(labels[length - 1][t[:i] + t[i + 1:]] for i in range(length))
            if sig in signatures:
                collision = True
                break
            signatures[sig] = o
        if collision:
            best = length - 1
            break
    return max(2, best + 1)


def literal_relational_complexity(group, max_degree=4, max_length=None) -> int:
    """RC by the raw definition: scan every pair of tuples, repeats included.

    Exponential; used only to validate the naive oracle on tiny groups.
    The default length cap of degree is exact for degree <= 4, where every
    witness normalizes to length at most height + 1 <= degree.
    """
    n = group.degree
    if n > max_degree:
        raise TooLarge(f"literal oracle capped at degree {max_degree}")
    elements = mulclose(group.generators, n)
    if max_length is None:
        max_length = n

    def transports(src, dst):
        return any(all(e[a] == b for a, b in zip(src, dst)) for e in elements)

    def stc(src, dst, k):
        size = min(k, len(src))
        return all(
            transports([src[i] for i in subset], [dst[i] for i in subset])
            for subset in itertools.combinations(range(len(src)), size)
        )

    best = 1
    for length in range(2, max_length + 1):
        for src in itertools.product(range(n), repeat=length):
            for dst in itertools.product(range(n), repeat=length):
                if transports(src, dst):
                    continue
                for level in range(length - 1, best, -1):
                    if stc(src, dst, level):
                        best = max(best, level)
                        break
    return max(2, best + 1)
