import math
import random
from fractions import Fraction

import pytest
import sympy

from toricstab import (
    GaussianRational,
    PolySystem,
    RationalPoly,
    builtin_fan,
    derivative,
    evaluate_jet,
    in_arrangement,
    in_polyhedral_product,
    is_member,
    jet,
    jet_section,
    mult_part,
    n_of,
    phi_map,
    stabilize,
    system_from_json,
    system_to_json,
    underlying_complex,
    witness_roots,
)
from toricstab.oracles import make_generic_system, make_planted_system
from toricstab.polynomials import SystemJsonError

G = GaussianRational
ZERO = G(0)


def poly(*ascending):
    return RationalPoly([G(c) for c in ascending])


class TestGaussianRational:
    def test_arithmetic(self):
        a = G(Fraction(1, 2), 1)
        b = G(2, Fraction(-1, 3))
        assert a + b == G(Fraction(5, 2), Fraction(2, 3))
        assert a * b == G(Fraction(4, 3), Fraction(11, 6))
        assert (a / b) * b == a

    def test_pow_and_negative_pow(self):
        a = G(0, 1)
        assert a ** 2 == G(-1)
        assert a ** -1 == G(0, -1)

    def test_pair_roundtrip(self):
        a = G.from_pair(["3/2", "-1/4"])
        assert a.to_pair() == ["3/2", "-1/4"]


class TestDerivative:
    def test_first_derivative(self):
        assert derivative(poly(0, 0, 1)) == poly(0, 2)

    def test_order_equal_to_degree(self):
        assert derivative(poly(1, 0, 0, 1), 3) == poly(6)

    def test_order_zero_is_identity(self):
        f = poly(3, 1, 2)
        assert derivative(f, 0) == f

    def test_order_beyond_degree_is_zero(self):
        assert derivative(poly(1, 1), 5).is_zero


class TestJet:
    def test_quadratic(self):
        f = poly(0, 0, 1)  # z^2
        entries = jet(f, 2).entries
        assert entries[0] == f
        assert entries[1] == poly(0, 2, 1)  # z^2 + 2z

    def test_single_entry(self):
        f = poly(5, 1)
        assert jet(f, 1).entries == (f,)

    def test_values_at_zero(self):
        f = poly(1, 1, 1)
        assert list(jet(f, 3).evaluate(ZERO)) == [G(1), G(2), G(3)]

    def test_monic_entries_for_monic_input(self):
        f = poly(2, -1, 3, 1)
        assert all(e.is_monic and e.degree == 3 for e in jet(f, 3).entries)


class TestMultPart:
    def test_double_root_extracted(self):
        f = RationalPoly.from_roots([(G(1), 2), (G(2), 1)])
        assert mult_part(f, 2) == poly(-1, 1)

    def test_squarefree_gives_one(self):
        f = RationalPoly.from_roots([(G(1), 1), (G(2), 1), (G(0, 1), 1)])
        assert mult_part(f, 2) == poly(1)

    def test_order_one_is_monic_normalization(self):
        f = poly(2, 4)
        assert mult_part(f, 1) == poly(Fraction(1, 2), 1)

    def test_multiplicity_shift(self):
        # root of multiplicity mu appears in the n-part with mu - n + 1
        f = RationalPoly.from_roots([(G(3), 4), (G(-1), 2)])
        part = mult_part(f, 2)
        assert part == RationalPoly.from_roots([(G(3), 3), (G(-1), 1)])

    def test_jet_vanishes_exactly_at_heavy_roots(self):
        # F_n(f)(alpha) = 0 iff alpha has multiplicity >= n, matching mult_part
        rng = random.Random(19)
        for _ in range(15):
            mu = rng.randint(1, 4)
            alpha = G(rng.randint(-5, 5))
            other = G(rng.randint(6, 9))
            f = RationalPoly.from_roots([(alpha, mu), (other, 1)])
            for n in range(1, 5):
                vanishes = all(not v for v in jet(f, n).evaluate(alpha))
                assert vanishes == (mu >= n)
                part = mult_part(f, n)
                assert (not part.evaluate(alpha)) == (mu >= n)

    def test_matches_sympy_gcd_chain(self):
        rng = random.Random(21)
        z = sympy.symbols("z")
        for _ in range(15):
            mults = [(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
            seen = {}
            for root, m in mults:
                seen[root] = max(seen.get(root, 0), m)
            n = rng.randint(2, 3)
            f = RationalPoly.from_roots([(G(r), m) for r, m in seen.items()])
            expr = sympy.prod([(z - r) ** m for r, m in seen.items()])
            chain = expr
            for order in range(1, n):
                chain = sympy.gcd(chain, sympy.diff(expr, z, order))
            ours = mult_part(f, n)
            theirs = sympy.Poly(chain, z).monic().all_coeffs()[::-1]
            assert [c.re for c in ours.coeffs] == [Fraction(str(c)) for c in theirs]


class TestMembership:
    def test_shared_double_root_rejected(self, cp1):
        z2 = RationalPoly.from_roots([(ZERO, 2)])
        system = PolySystem.coefficient_system([z2, z2])
        verdict = is_member(system, cp1, 2)
        assert not verdict.member
        assert verdict.witness_collection == (0, 1)
        assert verdict.witness_factor == poly(0, 1)

    def test_disjoint_double_roots_accepted(self, cp1):
        z2 = RationalPoly.from_roots([(ZERO, 2)])
        system = PolySystem.coefficient_system([z2, poly(1, 0, 1)])
        assert is_member(system, cp1, 2).member

    def test_low_degree_on_every_collection_accepts(self, cp1):
        # the only primitive collection holds a degree-1 polynomial
        system = PolySystem.coefficient_system([poly(5, 1), RationalPoly.from_roots([(ZERO, 3)])])
        assert is_member(system, cp1, 3).member

    def test_common_simple_roots_allowed(self, h1):
        shared = RationalPoly.from_roots([(G(2), 1), (G(3), 1)])
        system = PolySystem.coefficient_system([shared] * 4)
        assert is_member(system, h1, 2).member

    def test_collection_locality(self, h1):
        # a common double root on a face pair {0, 1} does not violate anything
        z2 = RationalPoly.from_roots([(ZERO, 2)])
        ok = RationalPoly.from_roots([(G(1), 1), (G(2), 1)])
        system = PolySystem.coefficient_system([z2, z2, ok, ok])
        assert is_member(system, h1, 2).member
        # but on the primitive pair {0, 2} it does
        system = PolySystem.coefficient_system([z2, ok, z2, ok])
        verdict = is_member(system, h1, 2)
        assert not verdict.member and verdict.witness_collection == (0, 2)

    def test_root_form_agrees(self, cp1):
        planted = PolySystem.root_system([[(0j, 2)], [(0j, 2)]])
        assert not is_member(planted, cp1, 2).member
        split = PolySystem.root_system([[(0j, 2)], [(1j, 1), (-1j, 1)]])
        assert is_member(split, cp1, 2).member

    def test_root_form_clusters_nearby_declared_roots(self, cp1):
        eps = 1e-9
        fuzzy = PolySystem.root_system(
            [[(0j, 1), (eps + 0j, 1)], [(0j, 2), (1 + 0j, 1)]]
        )
        verdict = is_member(fuzzy, cp1, 2)
        assert not verdict.member
        assert abs(verdict.witness_root) < 1e-6

    def test_ray_count_mismatch(self, h1):
        system = PolySystem.coefficient_system([poly(0, 1)])
        with pytest.raises(ValueError):
            is_member(system, h1, 2)


class TestRepresentationEquivalence:
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_planted_and_generic_agree(self, seed):
        rng = random.Random(seed)
        for name in ("cp(1)", "hirzebruch(1)"):
            fan = builtin_fan(name)
            for n in (2, 3):
                coeff, root, _ = make_planted_system(fan, n, rng)
                assert not is_member(coeff, fan, n).member
                assert not is_member(root, fan, n).member
                coeff, root = make_generic_system(fan, n, rng)
                assert is_member(coeff, fan, n).member
                assert is_member(root, fan, n).member


class TestDiscriminantLink:
    def test_witness_root_lands_in_arrangement(self, h1):
        rng = random.Random(3)
        for _ in range(10):
            n = rng.randint(2, 3)
            coeff, _, _ = make_planted_system(h1, n, rng)
            verdict = is_member(coeff, h1, n)
            assert not verdict.member
            hits = [
                in_arrangement(evaluate_jet(coeff, n, alpha), h1, tol=1e-6)
                for alpha in witness_roots(verdict)
            ]
            assert any(hits)

    def test_member_jets_avoid_arrangement_at_all_roots(self, h1):
        import numpy as np

        rng = random.Random(8)
        k = underlying_complex(h1)
        for _ in range(10):
            n = rng.randint(2, 3)
            coeff, _ = make_generic_system(h1, n, rng)
            assert is_member(coeff, h1, n).member
            for f in coeff.polys:
                desc = list(reversed(f.to_complex_coeffs()))
                for alpha in np.roots(desc):
                    point = evaluate_jet(coeff, n, complex(alpha))
                    assert not in_arrangement(point, k, tol=1e-6)
                    assert in_polyhedral_product(point, k, tol=1e-6)


class TestNOf:
    def test_examples(self):
        assert n_of((5, 7, 5, 12)) == 29
        assert n_of((4, 4)) == 8
        assert n_of((1, 1, 1, 5)) == 8


class TestPhiMap:
    def test_at_origin(self):
        assert phi_map((5, 7, 5, 12), 0) == complex(28, 0)

    def test_image_in_half_plane(self):
        rng = random.Random(17)
        for _ in range(50):
            w = complex(rng.uniform(-5, 5), rng.uniform(-5, 5))
            assert phi_map((3, 4), w).real < 7

    def test_imaginary_part_preserved(self):
        assert phi_map((2, 2), 3j).imag == 3.0


class TestStabilize:
    def test_degrees_rise_by_shift(self):
        system = PolySystem.root_system([[(0j, 2)], [(1 + 0j, 3)]])
        assert stabilize(system, (1, 2)).degrees == (3, 5)

    def test_single_unit_shift_appends_one_root(self):
        system = PolySystem.root_system([[(0j, 2)], [(1 + 0j, 2)]])
        out = stabilize(system, (0, 1))
        assert len(out.polys[0].roots) == 1  # moved, nothing appended
        appended = [m for a, m in out.polys[1].roots if a.real > 4]
        assert appended == [1]

    def test_member_verdicts_preserved(self, cp1):
        bad = PolySystem.root_system([[(0.5 + 0j, 2)], [(0.5 + 0j, 2)]])
        good = PolySystem.root_system([[(0.5 + 0j, 2)], [(2 + 0j, 2)]])
        assert not is_member(stabilize(bad, (1, 1)), cp1, 2).member
        assert is_member(stabilize(good, (1, 1)), cp1, 2).member

    def test_zero_shift_rejected(self):
        system = PolySystem.root_system([[(0j, 1)], [(1 + 0j, 1)]])
        with pytest.raises(ValueError):
            stabilize(system, (0, 0))

    def test_coefficient_form_rejected(self, cp1):
        system = PolySystem.coefficient_system([poly(0, 1), poly(1, 1)])
        with pytest.raises(ValueError):
            stabilize(system, (1, 0))


class TestJetSection:
    def test_example(self):
        f = jet_section([G(1), G(2), G(3)])
        assert f == poly(1, 1, 1)

    def test_constant_data(self):
        c = G(Fraction(7, 3))
        assert jet_section([c, c, c, c]) == RationalPoly([c])

    def test_round_trip(self):
        rng = random.Random(29)
        for _ in range(30):
            n = rng.randint(1, 6)
            b = [
                G(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                  Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
                for _ in range(n)
            ]
            f = jet_section(b)
            assert f.degree <= n - 1
            assert list(jet(f, n).evaluate(ZERO)) == b

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            jet_section([])


class TestEvaluateJet:
    def test_planted_system_at_planted_root(self, cp1):
        z2 = RationalPoly.from_roots([(ZERO, 2)])
        system = PolySystem.coefficient_system([z2, z2])
        point = evaluate_jet(system, 2, ZERO)
        assert point.blocks == ((0j, 0j), (0j, 0j))
        assert in_arrangement(point, cp1)

    def test_nonvanishing_alpha(self, cp1):
        z2 = RationalPoly.from_roots([(ZERO, 2)])
        system = PolySystem.coefficient_system([z2, z2])
        point = evaluate_jet(system, 2, G(1))
        assert in_polyhedral_product(point, underlying_complex(cp1))

    def test_root_form_matches_coefficient_form(self, cp1):
        coeff = PolySystem.coefficient_system(
            [RationalPoly.from_roots([(G(1), 1), (G(2), 1)]),
             RationalPoly.from_roots([(G(0, 1), 2)])]
        )
        root = PolySystem.root_system(
            [[(1 + 0j, 1), (2 + 0j, 1)], [(1j, 2)]]
        )
        alpha = 0.3 + 0.7j
        a = evaluate_jet(coeff, 3, alpha)
        b = evaluate_jet(root, 3, alpha)
        for ba, bb in zip(a.blocks, b.blocks):
            for x, y in zip(ba, bb):
                assert math.isclose(abs(x - y), 0.0, abs_tol=1e-9)


class TestSystemJson:
    def test_coefficient_roundtrip(self):
        system = PolySystem.coefficient_system(
            [poly(Fraction(1, 2), 1), RationalPoly.from_roots([(G(0, 1), 2)])]
        )
        again = system_from_json(system_to_json(system))
        assert again.degrees == system.degrees
        assert all(p == q for p, q in zip(again.polys, system.polys))

    def test_root_roundtrip(self):
        system = PolySystem.root_system([[(1 + 2j, 2)], [(0j, 1), (1j, 3)]])
        again = system_from_json(system_to_json(system))
        assert again.degrees == system.degrees

    def test_non_monic_rejected(self):
        with pytest.raises(SystemJsonError):
            system_from_json({"degrees": [1], "polys": [[["0", "0"], ["2", "0"]]]})

    def test_degree_mismatch_rejected(self):
        with pytest.raises(SystemJsonError) as err:
            system_from_json({"degrees": [2], "polys": [[["0", "0"], ["1", "0"]]]})
        assert err.value.pointer == "/polys/0"
