"""Relational complexity: subtuple completeness, witnesses, exact RC.

The witness search normal form: a pair of (m+1)-tuples that is
m-subtuple complete but not equivalent can always be brought, by acting
with one transporter, to the shape

    I = (x_1, ..., x_m, a),   J = (x_1, ..., x_m, b)

with all entries distinct.  Writing H_i for the pointwise stabilizer of
{x_1..x_m} minus x_i and K for the pointwise stabilizer of all of them,
such a pair exists for the prefix {x_1..x_m} exactly when some orbit
intersection  (a^{H_1} & ... & a^{H_m}) \\ a^K  is nonempty.  Each H_i
must properly contain K, so the prefix is an independent set; witness
levels are therefore bounded by the height, which is what makes the
search finite (and is the content of the RC <= height + 1 bound).

Distinct entries lose nothing: at level m >= 2, matching repeat patterns
are forced, and collapsing repeats would shorten an m-subtuple-complete
pair to length <= m, making it equivalent outright.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import DegreeTooLarge, GroupTooLarge, LengthMismatch, NotTransitive
from .group import PermutationGroup
from .perm import Permutation, format_permutation, parse_permutation
from .search import StabilizerLattice, canonical_prefixes

RC_DEGREE_CAP = 120
RC_ORDER_CAP = 10**7


@dataclass
class TuplePair:
    """A certified pair: k-subtuple complete, with transporters per subset.

    ``equivalent`` records whether the full tuples lie in one orbit; a
    witness has equivalent=False, certified by an exhausted transporter
    search over the pointwise stabilizer of the shared prefix.
    """

    I: tuple
    J: tuple
    completeness_level: int
    transporters: dict = field(default_factory=dict)
    equivalent: bool = False

    def verify(self, group: PermutationGroup) -> bool:
        """Re-check every recorded certificate and the (non-)equivalence."""
        for subset, perm in self.transporters.items():
            for i in subset:
                if perm(self.I[i]) != self.J[i]:
                    return False
        full = group.transporter(self.I, self.J)
        return (full is not None) == self.equivalent

    def to_json(self) -> dict:
        certs = {
            json.dumps(list(subset)): format_permutation(perm)
            for subset, perm in sorted(self.transporters.items())
        }
        return {
            "I": list(self.I),
            "J": list(self.J),
            "k": self.completeness_level,
            "certs": certs,
            "equivalent": self.equivalent,
        }

    @staticmethod
    def from_json(data, degree: int) -> "TuplePair":
        certs = {
            tuple(json.loads(key)): parse_permutation(text, degree)
            for key, text in data.get("certs", {}).items()
        }
        return TuplePair(
            I=tuple(data["I"]),
            J=tuple(data["J"]),
            completeness_level=data["k"],
            transporters=certs,
            equivalent=data["equivalent"],
        )


class SubtupleResult:
    """Boolean-like result carrying certificates or the failing subset."""

    def __init__(self, complete, certificates, failing_subset=None):
        self.complete = complete
        self.certificates = certificates
        self.failing_subset = failing_subset

    def __bool__(self):
        return self.complete


def subtuple_complete(group, I, J, k, _memo=None) -> SubtupleResult:
    """Does every k-subset of positions admit a transporter I|S -> J|S?

    Certificates are recorded per subset; results are memoized per
    (sorted subset, restricted tuples) when a memo dict is supplied.
    """
    import itertools

    I = tuple(I)
    J = tuple(J)
    if len(I) != len(J):
        raise LengthMismatch(f"|I|={len(I)} != |J|={len(J)}")
    if k < 1:
        raise LengthMismatch("completeness level must be >= 1")
    size = min(k, len(I))
    certificates = {}
    for subset in itertools.combinations(range(len(I)), size):
        src = tuple(I[i] for i in subset)
        dst = tuple(J[i] for i in subset)
        if _memo is not None:
            key = (subset, src, dst)
            if key not in _memo:
                _memo[key] = group.transporter(src, dst)
            g = _memo[key]
        else:
            g = group.transporter(src, dst)
        if g is None:
            return SubtupleResult(False, certificates, failing_subset=subset)
        certificates[subset] = g
    return SubtupleResult(True, certificates)


def orbit_equivalent(group, I, J) -> bool:
    """Is there g in G with I^g = J (full tuples)?"""
    I = tuple(I)
    J = tuple(J)
    if len(I) != len(J):
        raise LengthMismatch(f"|I|={len(I)} != |J|={len(J)}")
    return group.transporter(I, J) is not None


def _witness_at_prefix(lattice, prefix_set, stab):
    """Search a, b completing the prefix to a witness; None if none exists.

    Returns (alpha, beta, per-dropped-index transporters) on success.
    """
    prefix = sorted(prefix_set)
    full_order = stab.order()
    side_groups = []
    for x in prefix:
        side = lattice.stabilizer(prefix_set - {x})
        if side.order() == full_order:
            return None  # x redundant: the intersection can never escape
        side_groups.append(side)
    stab_orbits = stab.orbits()
    covered = set(prefix)
    for orbit in stab_orbits:
        alpha = orbit[0]
        if alpha in covered:
            continue
        alpha_orbit = set(orbit)
        candidates = None
        reps_list = []
        for side in side_groups:
            reps = side.orbit_transporter(alpha)
            reps_list.append(reps)
            candidates = set(reps) if candidates is None else candidates & set(reps)
            if len(candidates) <= 1:
                break
        if candidates is None or len(candidates) <= 1:
            continue
        escaped = sorted(candidates - alpha_orbit)
        if not escaped:
            continue
        beta = escaped[0]
        transporters = {}
        for idx_dropped, (x, reps) in enumerate(zip(prefix, reps_list)):
            transporters[idx_dropped] = reps[beta]
        return alpha, beta, transporters
    return None


def relational_complexity(group, degree_cap=RC_DEGREE_CAP, order_cap=RC_ORDER_CAP):
    """Exact RC with a maximal witness pair, or (2, None) for binary actions."""
    if group.degree > degree_cap:
        raise DegreeTooLarge(f"degree {group.degree} exceeds cap {degree_cap}")
    if group.order() > order_cap:
        raise GroupTooLarge(f"order {group.order()} exceeds cap {order_cap}")
    if group.degree < 2 or group.is_trivial():
        return 2, None
    lattice = StabilizerLattice(group)
    best_level = 1
    best_data = None

    def prune(depth, order):
        # a strictly decreasing chain below this node gains at most log2(order) points
        return depth + max(0, order.bit_length() - 1) <= best_level

    for points, fset, stab in canonical_prefixes(lattice, prune=prune):
        if len(points) <= max(1, best_level):
            continue
        hit = _witness_at_prefix(lattice, fset, stab)
        if hit is not None:
            best_level = len(points)
            best_data = (tuple(sorted(fset)), hit)
    if best_data is None:
        return 2, None
    prefix, (alpha, beta, side_transporters) = best_data
    m = len(prefix)
    I = prefix + (alpha,)
    J = prefix + (beta,)
    transporters = {tuple(range(m)): group.identity()}
    for dropped, perm in side_transporters.items():
        subset = tuple(i for i in range(m + 1) if i != dropped)
        transporters[subset] = perm
    witness = TuplePair(
        I=I,
        J=J,
        completeness_level=m,
        transporters=transporters,
        equivalent=False,
    )
    return best_level + 1, witness


def is_binary(group, **caps) -> bool:
    rc, _ = relational_complexity(group, **caps)
    return rc == 2


def suborbit_rc_lower_bound(group, **caps) -> int:
    """Max RC over induced point-stabilizer suborbit actions (>= 2)."""
    if not group.is_transitive():
        raise NotTransitive("suborbit bound requires a transitive group")
    alpha = 0
    stab = group.pointwise_stabilizer([alpha])
    best = 2
    for orbit in stab.orbits():
        if len(orbit) < 2 or alpha in orbit:
            continue
        induced, _ = stab.induced_action(orbit)
        rc, _ = relational_complexity(induced, **caps)
        best = max(best, rc)
    return best
