"""Relational structures: induced substructures, isomorphism and
automorphism backtracking, homogeneity, the orbit structure of a group,
and structural relational complexity.

A structure is (vertex count, ordered list of relations); a relation is
(arity >= 2, frozenset of tuples).  Isomorphisms are positional: the
i-th relation must map onto the i-th relation.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import ArityTooLarge, CapExceeded, ParseError, TooLarge, VertexOutOfRange
from .group import PermutationGroup
from .perm import Permutation

HOMOGENEITY_VERTEX_CAP = 10
STRUCTURAL_RC_DEGREE_CAP = 8
STRUCTURAL_RC_ARITY_CAP = 4


@dataclass(frozen=True)
class RelationalStructure:
    vertices: int
    relations: tuple  # of (arity, frozenset of tuples)

    @staticmethod
    def build(vertices, relations):
        cleaned = []
        for arity, tuples in relations:
            if arity < 2:
                raise ArityTooLarge("relations must have arity >= 2")
            tupleset = frozenset(tuple(t) for t in tuples)
            for t in tupleset:
                if len(t) != arity:
                    raise ParseError(f"tuple {t} does not match arity {arity}")
                for v in t:
                    if not 0 <= v < vertices:
                        raise VertexOutOfRange(f"vertex {v} outside 0..{vertices - 1}")
            cleaned.append((arity, tupleset))
        return RelationalStructure(vertices, tuple(cleaned))

    @property
    def arity(self) -> int:
        return max((a for a, _ in self.relations), default=2)

    def arity_sequence(self):
        return tuple(a for a, _ in self.relations)

    def to_json(self) -> dict:
        return {
            "vertices": self.vertices,
            "relations": [
                {"arity": a, "tuples": sorted(list(t) for t in tuples)}
                for a, tuples in self.relations
            ],
        }

    @staticmethod
    def from_json(data) -> "RelationalStructure":
        if not isinstance(data, dict) or "vertices" not in data:
            raise ParseError("structure file needs a 'vertices' field")
        if "edges" in data:  # digraph shorthand
            edges = [tuple(e) for e in data["edges"]]
            return RelationalStructure.build(data["vertices"], [(2, edges)])
        rels = []
        for rel in data.get("relations", []):
            rels.append((rel["arity"], [tuple(t) for t in rel["tuples"]]))
        return RelationalStructure.build(data["vertices"], rels)


def load_structure(path) -> RelationalStructure:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read structure file {path}: {exc}") from exc
    return RelationalStructure.from_json(data)


def induced_substructure(structure, subset) -> RelationalStructure:
    """Relations restricted to the subset, relabeled 0..k-1 ascending."""
    subset = sorted(set(subset))
    for v in subset:
        if not 0 <= v < structure.vertices:
            raise VertexOutOfRange(f"vertex {v} outside the structure")
    index = {v: i for i, v in enumerate(subset)}
    inside = set(subset)
    relations = []
    for arity, tuples in structure.relations:
        kept = frozenset(
            tuple(index[v] for v in t) for t in tuples if all(v in inside for v in t)
        )
        relations.append((arity, kept))
    return RelationalStructure(len(subset), tuple(relations))


def _incidence(structure):
    """Per relation: vertex -> tuples containing it.  Speeds up extension checks."""
    out = []
    for arity, tuples in structure.relations:
        by_vertex = {}
        for t in tuples:
            for v in set(t):
                by_vertex.setdefault(v, []).append(t)
        out.append((arity, tuples, by_vertex))
    return out


def _extension_consistent(source, target, domain, images, v, c):
    """Can v -> c extend the partial map?  Both directions are checked on
    every tuple over the assigned vertices that involves v."""
    assigned = dict(zip(domain, images))
    assigned[v] = c
    pool = list(assigned)
    for (arity, src_tuples), (_, dst_tuples) in zip(source.relations, target.relations):
        for t in itertools.product(pool, repeat=arity):
            if v not in t:
                continue
            mapped = tuple(assigned[x] for x in t)
            if (t in src_tuples) != (mapped in dst_tuples):
                return False
    return True


def structure_isomorphisms(source, target):
    """All isomorphisms source -> target as image tuples (streaming).

    Empty when the arity sequences disagree, by definition.
    """
    if source.vertices != target.vertices:
        return
    if source.arity_sequence() != target.arity_sequence():
        return
    n = source.vertices

    def rec(domain, images, used):
        if len(domain) == n:
            yield tuple(images)
            return
        v = len(domain)
        for c in range(n):
            if c in used:
                continue
            if not _extension_consistent(source, target, domain, images, v, c):
                continue
            yield from rec(domain + [v], images + [c], used | {c})

    yield from rec([], [], set())


def automorphism_group(structure) -> PermutationGroup:
    """Aut as a permutation group, by transversal harvesting: for each level
    d, find one automorphism fixing 0..d-1 per new orbit point of d."""
    n = structure.vertices
    if n == 0:
        raise VertexOutOfRange("empty structure has no automorphism group")

    def extend_one(domain, images, used):
        if len(domain) == n:
            return Permutation(images)
        v = len(domain)
        for c in range(n):
            if c in used:
                continue
            if not _extension_consistent(structure, structure, domain, images, v, c):
                continue
            result = extend_one(domain + [v], images + [c], used | {c})
            if result is not None:
                return result
        return None

    known = PermutationGroup(n, [])
    for d in range(n - 1, -1, -1):
        prefix = list(range(d))
        stab = known.pointwise_stabilizer(prefix) if d else known
        reached = set(stab.orbit(d))
        for c in range(d, n):
            if c in reached:
                continue
            if not _extension_consistent(structure, structure, prefix, prefix, d, c):
                continue
            sigma = extend_one(prefix + [d], prefix + [c], set(prefix) | {c})
            if sigma is not None:
                known = PermutationGroup(n, list(known.generators) + [sigma])
                stab = known.pointwise_stabilizer(prefix) if d else known
                reached = set(stab.orbit(d))
    return known


def is_homogeneous(structure, vertex_cap=HOMOGENEITY_VERTEX_CAP):
    """Does every isomorphism of induced substructures extend to an
    automorphism?  Returns (True, None) or (False, failing map).

    Source subsets range over Aut-orbit representatives (a pure symmetry
    reduction); targets range over all subsets of the same size.
    """
    n = structure.vertices
    if n > vertex_cap:
        raise TooLarge(f"homogeneity test capped at {vertex_cap} vertices")
    aut = automorphism_group(structure)
    aut_chain_cache = {}

    def extends(src_tuple, dst_tuple):
        key = src_tuple
        if key not in aut_chain_cache:
            aut_chain_cache[key] = aut.rebased(src_tuple).chain
        return aut_chain_cache[key].descend(list(dst_tuple)) is not None

    for size in range(1, n):
        subsets = [frozenset(c) for c in itertools.combinations(range(n), size)]
        seen = set()
        reps = []
        for s in subsets:
            if s in seen:
                continue
            reps.append(s)
            stack = [s]
            orbit = {s}
            while stack:
                cur = stack.pop()
                for g in aut.generators:
                    img = frozenset(g(v) for v in cur)
                    if img not in orbit:
                        orbit.add(img)
                        stack.append(img)
            seen |= orbit
        for src in reps:
            src_sorted = tuple(sorted(src))
            sub_src = induced_substructure(structure, src_sorted)
            for dst in subsets:
                dst_sorted = tuple(sorted(dst))
                sub_dst = induced_substructure(structure, dst_sorted)
                for iso in structure_isomorphisms(sub_src, sub_dst):
                    image = tuple(dst_sorted[iso[i]] for i in range(size))
                    if not extends(src_sorted, image):
                        failing = dict(zip(src_sorted, image))
                        return False, failing
    return True, None


def canonical_structure(group, s) -> RelationalStructure:
    """Relations = all G-orbits on Omega^i for i = 2..s (repeats included),
    each orbit listed by its lexicographic minimum."""
    if s < 2:
        raise ArityTooLarge("arity must be at least 2")
    if s > STRUCTURAL_RC_ARITY_CAP:
        raise ArityTooLarge(f"arity capped at {STRUCTURAL_RC_ARITY_CAP}")
    n = group.degree
    if n ** s > 10**6:
        raise TooLarge(f"orbit enumeration over {n}^{s} tuples is too large")
    gens = [g.images for g in group.generators]
    relations = []
    for arity in range(2, s + 1):
        seen = set()
        orbits = []
        for start in itertools.product(range(n), repeat=arity):
            if start in seen:
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
            seen |= orbit
            orbits.append((min(orbit), orbit))
        orbits.sort(key=lambda pair: pair[0])
        relations.extend((arity, frozenset(orbit)) for _, orbit in orbits)
    return RelationalStructure(n, tuple(relations))


def structural_rc(group, degree_cap=STRUCTURAL_RC_DEGREE_CAP,
                  arity_cap=STRUCTURAL_RC_ARITY_CAP):
    """Smallest s with the orbit structure of arity s homogeneous and
    rigidly recovering the group; equals the tuple relational complexity.

    Raises CapExceeded (carrying the tuple value) when the answer exceeds
    the arity cap.
    """
    from .relcomp import relational_complexity

    if group.degree > degree_cap:
        raise TooLarge(f"structural RC capped at degree {degree_cap}")
    for s in range(2, arity_cap + 1):
        structure = canonical_structure(group, s)
        aut = automorphism_group(structure)
        if aut.order() != group.order():
            continue
        homogeneous, _ = is_homogeneous(structure)
        if homogeneous:
            return s
    rc, _ = relational_complexity(group)
    raise CapExceeded(
        f"no homogeneous orbit structure of arity <= {arity_cap}; tuple RC is {rc}",
        fallback=rc,
    )
