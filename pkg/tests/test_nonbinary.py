"""The non-binarity battery, closures, Frobenius and subset criteria."""

import itertools
import math

import pytest

from relkit import catalog as cat
from relkit.closure import k_closure
from relkit.errors import (
    AbelianInput,
    ConditionFailed,
    DegreeTooLarge,
    NotFrobenius,
    NotNormal,
    NotTransitive,
    PrimeDoesNotDivide,
)
from relkit.group import PermutationGroup
from relkit import nonbinary as nb
from relkit.nonbinary import (
    check_2transitive_orbit,
    check_beautiful,
    diagonal_patch_witness,
    frobenius_test,
    holomorph_like_action,
    run_battery,
    verify_snb_certificate,
)
from relkit.perm import Permutation, parse_permutation
from relkit.relcomp import relational_complexity
from relkit.structures import automorphism_group, canonical_structure


def G(degree, *cycles):
    return PermutationGroup(degree, [parse_permutation(s, degree) for s in cycles])


# -- test 1 -------------------------------------------------------------------

def test1_flags_alt5_at_four():
    out = nb.test1_character_bound(cat.alternating_natural(5).group)
    assert out.not_binary
    assert out.certificate.ell == 4
    assert out.certificate.r_ell == 2 and out.certificate.r_2 == 1
    assert out.verify(cat.alternating_natural(5).group)


def test1_inconclusive_on_sym5():
    out = nb.test1_character_bound(cat.symmetric_natural(5).group)
    assert not out.not_binary
    assert all(v == 1 for v in out.details["counts"].values())


def test1_inconclusive_on_c5():
    out = nb.test1_character_bound(cat.cyclic_regular(5).group, ell_max=4)
    assert not out.not_binary
    assert out.details["counts"][2] == 4  # frozen: direct count


def test1_requires_transitive():
    with pytest.raises(NotTransitive):
        nb.test1_character_bound(cat.intransitive_join(3).group)


# -- test 2 and closures ---------------------------------------------------------

def test2_flags_alt4():
    g = cat.alternating_natural(4).group
    out = nb.test2_strongly_non_k_ary(g, 2)
    assert out.not_binary
    assert not g.contains(out.certificate.element)
    assert out.verify(g)


def test2_inconclusive_on_2closed():
    out = nb.test2_strongly_non_k_ary(cat.affine_orthogonal(3, 2).group, 2)
    assert not out.not_binary
    out = nb.test2_strongly_non_k_ary(cat.symmetric_natural(4).group, 2)
    assert not out.not_binary


def test_closure_contains_group_and_idempotent():
    for entry in [cat.cyclic_regular(6), cat.dihedral_polygon(5), cat.agl1(5)]:
        closure = k_closure(entry.group, 2)
        assert all(closure.contains(g) for g in entry.group.generators)
        assert k_closure(closure, 2) == closure


def test_closure_of_2transitive_is_symmetric():
    for n in (4, 5, 6):
        closure = k_closure(cat.alternating_natural(n).group, 2)
        assert closure.order() == math.factorial(n)


def test_closure_c4_is_c4():
    # the difference-1 orbital of C4 is the directed square, whose
    # automorphism group is C4 itself (confirmed by a literal scan of
    # Sym(4) against the orbit coloring)
    c4 = cat.cyclic_regular(4).group
    assert k_closure(c4, 2) == c4


def test_closure_matches_orbit_structure_aut():
    for entry in [cat.cyclic_regular(4), cat.dihedral_polygon(4),
                  cat.alternating_natural(4), cat.product_action(2, 3)]:
        closure = k_closure(entry.group, 2)
        aut = automorphism_group(canonical_structure(entry.group, 2))
        assert closure == aut


def test_3closure_of_alt4():
    # odd permutations swap the two Alt(4)-orbits of distinct triples
    a4 = cat.alternating_natural(4).group
    assert k_closure(a4, 3) == a4


def test_closure_degree_cap():
    with pytest.raises(DegreeTooLarge):
        k_closure(cat.k_subsets_action("Sym", 8, 4).group, 2)


# -- test 3 ----------------------------------------------------------------------

def test3_flags_agl15():
    g = cat.agl1(5).group
    out = nb.test3_triples(g)
    assert out.not_binary
    assert out.verify(g)
    rc, _ = relational_complexity(g)
    assert rc > 2


def test3_inconclusive_on_binary():
    assert not nb.test3_triples(cat.symmetric_natural(5).group).not_binary
    assert not nb.test3_triples(cat.dihedral_polygon(7).group).not_binary


def test3_inconclusive_on_3transitive():
    # 3-transitivity makes all distinct triple pairs equivalent, so the
    # triple scan cannot distinguish anything even though Alt(5) is far
    # from binary; test 1 and test 4 cover this case instead
    assert not nb.test3_triples(cat.alternating_natural(5).group).not_binary


def test3_flags_subset_action():
    out = nb.test3_triples(cat.k_subsets_action("Sym", 6, 2).group)
    assert out.not_binary


# -- test 4 -----------------------------------------------------------------------

def test4_flags_alt6():
    g = cat.alternating_natural(6).group
    out = nb.test4_suborbits(g)
    assert out.not_binary
    assert out.details["suborbit_rc"] == 4
    assert out.verify(g)


def test4_inconclusive_on_regular():
    assert not nb.test4_suborbits(cat.cyclic_regular(7).group).not_binary


def test4_flags_subset_action():
    g = cat.k_subsets_action("Sym", 6, 2).group
    out = nb.test4_suborbits(g)
    assert out.not_binary
    rc, _ = relational_complexity(g)
    assert rc == 3


# -- test 5 ------------------------------------------------------------------------

def agl2_3():
    """AGL_2(3) on 9 points: the divisibility rule fires at p = 3."""
    def idx(x, y):
        return x * 3 + y
    gens = [
        Permutation(idx((x + 1) % 3, y) for x in range(3) for y in range(3)),
        Permutation(idx(x, (y + 1) % 3) for x in range(3) for y in range(3)),
    ]
    for m in ([[1, 1], [0, 1]], [[0, 2], [1, 0]], [[2, 0], [0, 1]]):
        gens.append(Permutation(
            idx((m[0][0] * x + m[1][0] * y) % 3, (m[0][1] * x + m[1][1] * y) % 3)
            for x in range(3) for y in range(3)
        ))
    return PermutationGroup(9, gens)


def test5_fires_on_agl23():
    g = agl2_3()
    assert g.order() == 432
    out = nb.test5_special_primes(g, 3)
    assert out.not_binary
    assert out.certificate.rule == "stabilizer_divisibility"
    assert out.verify(g)
    rc, _ = relational_complexity(g)
    assert rc > 2  # soundness


def test5_prime_must_divide():
    with pytest.raises(PrimeDoesNotDivide):
        nb.test5_special_primes(cat.cyclic_regular(5).group, 3)


def test5_cyclic_sylow_inconclusive():
    out = nb.test5_special_primes(cat.cyclic_regular(5).group, 5)
    assert not out.not_binary


def test5_silent_on_binary_entries():
    for entry in [cat.symmetric_natural(5), cat.dihedral_polygon(5),
                  cat.affine_orthogonal(3, 2), cat.product_action(2, 2)]:
        order = entry.group.order()
        for p in (2, 3, 5, 7):
            if order % p:
                continue
            assert not nb.test5_special_primes(entry.group, p).not_binary, (entry.label, p)


def test5_wreath_consistent_with_oracle():
    # imprimitive Sym(3) wr Sym(3) on 9 points: whatever the verdict, it
    # must agree with one-sidedness (NotBinary implies RC > 2)
    blocks = ["(1 2 3)", "(1 2)", "(1 4)(2 5)(3 6)", "(1 4 7)(2 5 8)(3 6 9)"]
    g = G(9, *blocks)
    assert g.order() == 1296
    out = nb.test5_special_primes(g, 3)
    if out.not_binary:
        rc, _ = relational_complexity(g)
        assert rc > 2


# -- test 6 ------------------------------------------------------------------------

def test6_flags_sharply_2transitive():
    g = cat.agl1(5).group
    out = nb.test6_trivial_two_point(g)
    assert out.not_binary
    assert out.verify(g)


def test6_inconclusive_on_sym5():
    out = nb.test6_trivial_two_point(cat.symmetric_natural(5).group, trials=10**5)
    assert not out.not_binary


def test6_inconclusive_on_regular():
    out = nb.test6_trivial_two_point(cat.cyclic_regular(7).group)
    assert not out.not_binary
    assert "trivial point stabilizer" in out.details.get("reason", "")


def test6_deterministic():
    g = cat.agl1(7).group
    a = nb.test6_trivial_two_point(g, trials=1000, seed=7).to_json()
    b = nb.test6_trivial_two_point(g, trials=1000, seed=7).to_json()
    assert a == b


# -- frobenius ------------------------------------------------------------------------

def test_frobenius_flags_agl1():
    for p, complement in [(5, 4), (7, 6)]:
        out = frobenius_test(cat.agl1(p).group)
        assert out.not_binary
        assert out.details["complement_order"] == complement
        assert out.verify(cat.agl1(p).group)


def test_frobenius_dihedral_inconclusive():
    out = frobenius_test(cat.dihedral_polygon(7).group)
    assert not out.not_binary
    assert out.details["complement_order"] == 2


def test_frobenius_rejects_non_frobenius():
    with pytest.raises(NotFrobenius):
        frobenius_test(cat.symmetric_natural(4).group)
    with pytest.raises(NotFrobenius):
        frobenius_test(cat.cyclic_regular(5).group)  # regular: trivial stabilizers


def test_frobenius_cyclic_kernel_path():
    # F = C7 : C3 inside AGL1(7); kernel cyclic, complement has order 3 > 2
    g7 = cat.agl1(7).group
    t = parse_permutation("(1 2 3 4 5 6 7)", 7)
    s = Permutation((2 * x) % 7 for x in range(7))
    F = PermutationGroup(7, [t, s])
    assert F.order() == 21
    out = frobenius_test(g7, normal_subgroup=F)
    assert out.not_binary
    assert out.details["path"] == "cyclic_kernel"
    assert out.verify(g7)


def test_frobenius_subgroup_requires_normal():
    g = cat.symmetric_natural(4).group
    s3 = PermutationGroup(4, [parse_permutation("(1 2)", 4),
                              parse_permutation("(1 2 3)", 4)])
    with pytest.raises(NotNormal):
        frobenius_test(g, normal_subgroup=s3)


# -- beautiful subsets ------------------------------------------------------------------

def test_beautiful_full_set_psl27():
    g = cat.psl2_projective(7).group
    out = check_beautiful(g, g, range(8))
    assert out.not_binary
    assert out.certificate.induced_order == 168
    assert out.verify(g)


def test_beautiful_rejects_sym_alt():
    g = cat.symmetric_natural(5).group
    assert not check_beautiful(g, g, range(5)).not_binary
    a = cat.alternating_natural(6).group
    assert not check_beautiful(a, a, range(6)).not_binary


def test_beautiful_small_subset_inconclusive():
    g = cat.symmetric_natural(6).group
    out = check_beautiful(g, g, [0, 1, 2])
    assert not out.not_binary  # induced Sym(3) contains Alt(3)


def test_beautiful_not_normal():
    g = cat.symmetric_natural(4).group
    c3 = PermutationGroup(4, [parse_permutation("(1 2 3)", 4)])
    with pytest.raises(NotNormal):
        check_beautiful(g, c3, [0, 1, 2])


def test_2transitive_orbit_check():
    assert check_2transitive_orbit(cat.symmetric_natural(3).group, 0)
    assert not check_2transitive_orbit(cat.cyclic_regular(4).group, 0)
    assert not check_2transitive_orbit(cat.dihedral_polygon(5).group, 0)


# -- strongly-non-binary certificates ------------------------------------------------------

def snb_example():
    """<(1 2)(3 4), (1 2)(5 6)> with tau = (1 2): a valid certificate."""
    group = G(6, "(1 2)(3 4)", "(1 2)(5 6)")
    tau = parse_permutation("(1 2)", 6)
    etas = [parse_permutation("(3 4)", 6), parse_permutation("(5 6)", 6)]
    return group, tau, etas


def test_snb_certificate_accepts():
    group, tau, etas = snb_example()
    out = verify_snb_certificate(group, tau, etas)
    assert out.not_binary
    assert out.verify(group)
    rc, _ = relational_complexity(group)
    assert rc > 2


def test_snb_certificate_rejects_tau_in_group():
    group, tau, etas = snb_example()
    inside = parse_permutation("(1 2)(3 4)", 6)
    with pytest.raises(ConditionFailed) as err:
        verify_snb_certificate(group, inside, [Permutation.identity(6)])
    assert err.value.condition == "tau_outside"


def test_snb_certificate_rejects_overlap():
    group, tau, etas = snb_example()
    with pytest.raises(ConditionFailed) as err:
        verify_snb_certificate(group, tau, [parse_permutation("(2 3)", 6)])
    assert err.value.condition == "disjoint_supports"


def test_snb_certificate_rejects_uncovered_point():
    group, tau, _ = snb_example()
    with pytest.raises(ConditionFailed) as err:
        verify_snb_certificate(group, tau, [parse_permutation("(3 4)", 6)])
    assert err.value.condition in ("coverage", "products_in_group")


def test_snb_no_instance_for_alt4():
    # Alt(4) natural is strongly non-binary, but no disjoint-support
    # factorization certificate exists: exhaustive scan of odd tau
    a4 = cat.alternating_natural(4).group
    odd = [Permutation(p) for p in itertools.permutations(range(4))
           if not a4.contains(Permutation(p)) and not Permutation(p).is_identity()]
    for tau in odd:
        support = tau.support()
        outside = [p for p in range(4) if p not in support]
        # candidate etas live on the complement of tau's support
        candidates = [Permutation(p) for p in itertools.permutations(range(4))
                      if Permutation(p).support() <= set(outside)]
        usable = [e for e in candidates if a4.contains(tau * e)]
        covered = set()
        for e in usable:
            covered |= set(e.fixed_points())
        assert covered != set(range(4)), "no valid certificate should exist"


# -- diagonal-type patch -----------------------------------------------------------------

def test_diagonal_alt4():
    out = diagonal_patch_witness(cat.alternating_natural(4).group)
    assert out.not_binary
    action, _ = holomorph_like_action(cat.alternating_natural(4).group)
    assert out.verify(action)


def test_diagonal_sym3_binary():
    # the 6-point action for Sym(3) is binary: conjugation composed with
    # inversion maps ab to ba while fixing 1, a, b, for every pair
    out = diagonal_patch_witness(cat.symmetric_natural(3).group)
    assert not out.not_binary
    action, _ = holomorph_like_action(cat.symmetric_natural(3).group)
    rc, _ = relational_complexity(action)
    assert rc == 2


def test_diagonal_rejects_abelian():
    with pytest.raises(AbelianInput):
        diagonal_patch_witness(cat.cyclic_regular(4).group)


def test_diagonal_stabilizer_shape():
    T = cat.symmetric_natural(3).group
    action, elements = holomorph_like_action(T)
    assert action.degree == 6
    assert action.order() == 72
    stab = action.pointwise_stabilizer([0])
    assert stab.order() == 12  # Inn(S3) x <inversion>


# -- battery ---------------------------------------------------------------------------------

def test_battery_stops_at_first():
    outcomes = run_battery(cat.alternating_natural(5).group, trials=1000)
    assert outcomes[-1].not_binary
    assert len(outcomes) == 1  # test 1 already fires


def test_battery_all_inconclusive_on_binary():
    outcomes = run_battery(cat.symmetric_natural(5).group,
                           stop_at_first=False, trials=5000)
    assert len(outcomes) == 7
    assert not any(o.not_binary for o in outcomes)


def test_battery_handles_inapplicable():
    # intransitive input: transitivity-gated tests report the reason;
    # test 2 still runs (closures make sense intransitively) and may
    # legitimately fire since join(3) has RC 3
    group = cat.intransitive_join(3).group
    outcomes = run_battery(group, stop_at_first=False, trials=100)
    gated = [o for o in outcomes if "not_applicable" in o.details]
    assert gated and all(not o.not_binary for o in gated)
    for o in outcomes:
        if o.not_binary:
            assert o.verify(group)
            rc, _ = relational_complexity(group)
            assert rc > 2


# -- orbital colorings -------------------------------------------------------------------

def test_orbital_coloring_invariant():
    from relkit.closure import OrbitalColoring
    for entry in [cat.dihedral_polygon(5), cat.agl1(5), cat.product_action(2, 2)]:
        coloring = OrbitalColoring(entry.group, 2)
        for g in entry.group.generators:
            for a in range(entry.group.degree):
                for b in range(entry.group.degree):
                    assert coloring.color[(a, b)] == coloring.color[(g(a), g(b))]


def test_orbital_coloring_counts():
    from relkit.closure import OrbitalColoring
    c5 = OrbitalColoring(cat.cyclic_regular(5).group, 2)
    assert c5.count == 5  # diagonal + four difference classes
    s5 = OrbitalColoring(cat.symmetric_natural(5).group, 2)
    assert s5.count == 2  # diagonal + distinct pairs
