from fractions import Fraction
from math import factorial, gcd

import pytest

from structgrade import (
    CycleStructure,
    catalog,
    corollary_residue_check,
    count_nonequivalent_elementary,
    cycle_structures,
    evaluate_formula,
    expand_formula,
    fixed_count_kn,
    fixed_hom_count,
    format_formula,
    orbit_count,
    p_alpha,
    parse_group_spec,
    qn_eval,
    representative_permutation,
)
from conftest import abelian_grid, s3_group

# coefficient tables for n = 2..6, each entry (coefficient, ord_k, power)
SMALL_N_TABLES = {
    2: [(1, 1, 1), (1, 2, 0)],
    3: [(1, 1, 2), (3, 1, 1), (2, 3, 0)],
    4: [(1, 1, 3), (6, 1, 2), (8, 1, 1), (3, 2, 1), (6, 4, 0)],
    5: [(1, 1, 4), (10, 1, 3), (35, 1, 2), (50, 1, 1), (24, 5, 0)],
    6: [
        (1, 1, 5), (15, 1, 4), (85, 1, 3), (210, 1, 2), (144, 1, 1),
        (15, 2, 2), (90, 2, 1), (40, 3, 1), (120, 6, 0),
    ],
}


class TestCycleStructures:
    def test_n1(self):
        structures = cycle_structures(1)
        assert len(structures) == 1
        assert structures[0].alpha == (1,)

    @pytest.mark.parametrize("n,count", [(4, 5), (6, 11), (10, 42)])
    def test_partition_counts(self, n, count):
        assert len(cycle_structures(n)) == count

    def test_invariants(self):
        for n in range(1, 9):
            for s in cycle_structures(n):
                assert sum(i * x for i, x in enumerate(s.alpha, start=1)) == n
                assert 1 <= s.size <= n
                assert n % s.d == 0

    def test_range_errors(self):
        with pytest.raises(ValueError):
            cycle_structures(0)
        with pytest.raises(ValueError):
            cycle_structures(31)

    def test_rejects_bad_alpha(self):
        with pytest.raises(ValueError):
            CycleStructure(3, (1, 1, 1))
        with pytest.raises(ValueError):
            CycleStructure(3, (3,))

    def test_d_examples(self):
        assert CycleStructure(4, (0, 2, 0, 0)).d == 2
        assert CycleStructure(6, (0, 0, 2, 0, 0, 0)).d == 3
        assert CycleStructure(5, (2, 0, 1, 0, 0)).d == 1


class TestPAlpha:
    def test_identity_structure(self):
        for n in (1, 3, 6):
            alpha = tuple([n] + [0] * (n - 1))
            assert p_alpha(CycleStructure(n, alpha)) == 1

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_full_prime_cycle(self, p):
        alpha = tuple([0] * (p - 1) + [1])
        assert p_alpha(CycleStructure(p, alpha)) == factorial(p - 1)

    def test_double_transpositions_in_s4(self):
        assert p_alpha(CycleStructure(4, (0, 2, 0, 0))) == 3

    @pytest.mark.parametrize("n", range(1, 13))
    def test_class_equation(self, n):
        assert sum(p_alpha(s) for s in cycle_structures(n)) == factorial(n)


class TestFixedCountKn:
    def test_identity_gives_all_homs(self):
        for n in (2, 3, 5):
            alpha = tuple([n] + [0] * (n - 1))
            for g in abelian_grid():
                assert fixed_count_kn(CycleStructure(n, alpha), g) == g.order ** (n - 1)

    def test_k4_z2_double_transposition(self):
        s = CycleStructure(4, (0, 2, 0, 0))
        assert fixed_count_kn(s, parse_group_spec("Z2")) == 4

    def test_trivial_group(self):
        for s in cycle_structures(5):
            assert fixed_count_kn(s, parse_group_spec("1")) == 1

    def test_matches_enumeration_per_cycle_type(self):
        for n in (2, 3, 4):
            d = catalog("complete", n)
            for structure in cycle_structures(n):
                sigma = representative_permutation(structure)
                for g in (parse_group_spec("Z2"), parse_group_spec("Z4")):
                    assert fixed_count_kn(structure, g) == fixed_hom_count(d, g, sigma)


class TestRepresentativePermutation:
    def test_round_trips_cycle_type(self):
        for n in range(1, 8):
            for structure in cycle_structures(n):
                sigma = representative_permutation(structure)
                assert sigma.cycle_type() == structure.alpha

    def test_layout(self):
        sigma = representative_permutation(CycleStructure(5, (1, 2, 0, 0, 0)))
        # two 2-cycles first, fixed point last
        assert sigma.image == (2, 1, 4, 3, 5)


class TestCount:
    def test_k2_z2(self):
        assert count_nonequivalent_elementary(2, parse_group_spec("Z2")) == 2

    def test_k3_z3(self):
        assert count_nonequivalent_elementary(3, parse_group_spec("Z3")) == 4

    def test_k4_z2(self):
        assert count_nonequivalent_elementary(4, parse_group_spec("Z2")) == 3

    def test_n1_always_one(self):
        for g in abelian_grid():
            assert count_nonequivalent_elementary(1, g) == 1

    def test_trivial_group_counts_trivial_grading(self):
        for n in (1, 2, 5):
            assert count_nonequivalent_elementary(n, parse_group_spec("1")) == 1

    def test_matches_orbit_oracle_small(self):
        for n in (2, 3, 4):
            d = catalog("complete", n)
            for g in abelian_grid():
                assert count_nonequivalent_elementary(n, g) == orbit_count(d, g)

    def test_s3(self):
        # (6 + |ord_2(S3)|) / 2 = (6 + 4) / 2
        assert count_nonequivalent_elementary(2, s3_group()) == 5
        assert count_nonequivalent_elementary(2, s3_group()) == orbit_count(
            catalog("complete", 2), s3_group()
        )

    def test_integrality_across_grid(self):
        for n in range(1, 9):
            for g in abelian_grid() + [s3_group()]:
                assert count_nonequivalent_elementary(n, g) >= 1

    def test_range_error(self):
        with pytest.raises(ValueError):
            count_nonequivalent_elementary(0, parse_group_spec("Z2"))


class TestExpandFormula:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_reproduces_small_n_tables(self, n):
        terms = [(t.coefficient, t.ord_k, t.power) for t in expand_formula(n)]
        assert terms == SMALL_N_TABLES[n]

    def test_evaluation_matches_direct_count(self):
        for n in range(2, 9):
            for g in abelian_grid() + [s3_group()]:
                assert evaluate_formula(n, g) == count_nonequivalent_elementary(n, g)

    def test_format(self):
        assert format_formula(2) == "N(K_2) = (1/2!)(|G| + |ord_2(G)|)"
        text = format_formula(6)
        assert "15*|ord_2(G)|*|G|^2" in text
        assert "120*|ord_6(G)|" in text

    def test_range(self):
        with pytest.raises(ValueError):
            expand_formula(1)
        with pytest.raises(ValueError):
            expand_formula(13)


class TestQn:
    @pytest.mark.parametrize("n", range(1, 13))
    def test_total_probability(self, n):
        assert qn_eval(n, [1] * n) == 1

    def test_q1_is_s1(self):
        assert qn_eval(1, [7]) == 7

    def test_coprime_simplification(self):
        # gcd(n, |G|) = 1: count = q_n(|G|, ..., |G|) / |G|
        cases = [(3, "Z2"), (4, "Z3"), (5, "Z6"), (2, "Z3"), (5, "Z4")]
        for n, spec in cases:
            g = parse_group_spec(spec)
            assert gcd(n, g.order) == 1
            expected = qn_eval(n, [g.order] * n) * Fraction(1, g.order)
            assert expected == count_nonequivalent_elementary(n, g)

    def test_needs_enough_values(self):
        with pytest.raises(ValueError):
            qn_eval(3, [1, 1])


class TestCorollary:
    def test_z6_p5(self):
        check = corollary_residue_check(5, parse_group_spec("Z6"))
        assert (check.ord_p_residue, check.power_residue) == (1, 1)
        assert check.holds

    def test_z4_p2(self):
        check = corollary_residue_check(2, parse_group_spec("Z4"))
        assert (check.ord_p_residue, check.power_residue) == (0, 0)
        assert check.holds

    def test_trivial_group(self):
        for p in (2, 3, 5, 7):
            check = corollary_residue_check(p, parse_group_spec("1"))
            assert check.ord_p_residue == check.power_residue == 1

    def test_grid(self):
        for p in (2, 3, 5, 7):
            for g in abelian_grid() + [s3_group()]:
                assert corollary_residue_check(p, g).holds

    def test_wilson_ingredient(self):
        # (p-1)! = -1 mod p underlies the full-cycle term
        for p in (2, 3, 5, 7, 11):
            alpha = tuple([0] * (p - 1) + [1])
            assert p_alpha(CycleStructure(p, alpha)) % p == p - 1

    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            corollary_residue_check(6, parse_group_spec("Z2"))
