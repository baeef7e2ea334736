import random

import pytest

from toricstab import (
    CapExceededError,
    builtin_fan,
    bundle_rank,
    connectivity_bound,
    dim_config,
    e1_support,
    min_unknown_band,
    stability_dim,
    stability_dim_n1,
    stability_dim_projective,
    stability_report,
    truncation_dim,
)

FAMILY = ("cp(1)", "cp(2)", "cp(3)", "hirzebruch(1)", "hirzebruch(2)", "hirzebruch(3)")


class TestStabilityDim:
    def test_hirzebruch_fixture(self, h1):
        assert stability_dim((5, 7, 5, 12), h1, 2) == 8

    def test_small_degrees_floor_to_minus_two(self, h1):
        assert stability_dim((1, 1, 1, 2), h1, 2) == -2

    @pytest.mark.parametrize("m", [2, 3])
    def test_projective_formula(self, m):
        fan = builtin_fan(f"cp({m - 1})")
        for d in (4, 7):
            for n in (2, 3):
                assert stability_dim([d] * m, fan, n) == (2 * n * m - 3) * (d // n) - 2

    def test_rejects_n_one(self, h1):
        with pytest.raises(ValueError):
            stability_dim((5, 7, 5, 12), h1, 1)

    def test_monotone_in_degrees(self):
        rng = random.Random(77)
        for _ in range(40):
            fan = builtin_fan(rng.choice(FAMILY))
            r = fan.ray_count
            n = rng.randint(2, 4)
            degrees = tuple(rng.randint(1, 12) for _ in range(r))
            bump = tuple(rng.randint(0, 4) for _ in range(r))
            larger = tuple(d + b for d, b in zip(degrees, bump))
            assert stability_dim(degrees, fan, n) <= stability_dim(larger, fan, n)


class TestStabilityDimN1:
    def test_hirzebruch_gives_homology_range(self, h1):
        assert stability_dim_n1((5, 7, 5, 12), h1) == (3, "homology")

    def test_projective_plane_gives_homotopy_range(self, cp2):
        for d in (2, 5):
            assert stability_dim_n1((d, d, d), cp2) == (3 * d - 2, "homotopy")

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_small_r_min_never_upgrades(self, k):
        fan = builtin_fan(f"hirzebruch({k})")
        _, kind = stability_dim_n1((4, 4, 4, 4 + 4 * k), fan)
        assert kind == "homology"


class TestStabilityDimProjective:
    def test_example(self):
        assert stability_dim_projective(6, 2, 2) == 19

    def test_degree_below_n(self):
        assert stability_dim_projective(1, 3, 2) == (2 * 3 * 2 - 3) - 1

    def test_monotone_in_degree(self):
        for d in range(1, 30):
            assert stability_dim_projective(d, 2, 3) <= stability_dim_projective(d + 1, 2, 3)

    def test_excluded_pair(self):
        with pytest.raises(ValueError):
            stability_dim_projective(5, 1, 1)


class TestConnectivity:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_hirzebruch(self, k):
        assert connectivity_bound(builtin_fan(f"hirzebruch({k})"), 2) == 3

    def test_projective_plane(self, cp2):
        assert connectivity_bound(cp2, 2) == 7

    def test_lower_bound(self):
        rng = random.Random(5)
        for _ in range(20):
            fan = builtin_fan(rng.choice(FAMILY))
            n = rng.randint(2, 4)
            assert connectivity_bound(fan, n) >= 3

    def test_below_stability_dim_when_band_nonempty(self):
        rng = random.Random(6)
        for _ in range(30):
            fan = builtin_fan(rng.choice(FAMILY))
            n = rng.randint(2, 3)
            degrees = [n * rng.randint(1, 6) + rng.randint(0, n - 1)
                       for _ in range(fan.ray_count)]
            if min(degrees) // n >= 1:
                assert connectivity_bound(fan, n) <= stability_dim(degrees, fan, n)


class TestReport:
    def test_fields(self, h1):
        report = stability_report((5, 7, 5, 12), h1, 2)
        assert report.r_min == 2
        assert report.d_min == 5
        assert report.d_prime == 2
        assert report.stability_dim == 8
        assert report.connectivity == 3
        assert report.degree_null is True

    def test_invariant_identities(self):
        rng = random.Random(8)
        for _ in range(25):
            fan = builtin_fan(rng.choice(FAMILY))
            n = rng.randint(2, 4)
            degrees = tuple(rng.randint(1, 15) for _ in range(fan.ray_count))
            rep = stability_report(degrees, fan, n)
            assert rep.stability_dim == (2 * n * rep.r_min - 3) * rep.d_prime - 2
            assert rep.connectivity == 2 * n * rep.r_min - 5

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_hirzebruch_family_formula(self, k):
        fan = builtin_fan(f"hirzebruch({k})")
        rng = random.Random(k)
        for _ in range(10):
            d1, d2 = rng.randint(1, 9), rng.randint(1, 9)
            n = rng.randint(2, 3)
            degrees = (d1, d2, d1, k * d1 + d2)
            rep = stability_report(degrees, fan, n)
            assert rep.degree_null
            assert rep.stability_dim == (4 * n - 3) * (min(d1, d2) // n) - 2


def _zero_conditions(k, s, d_prime, rm, n, r):
    """Independent restatement of the vanishing ranges, cell by cell."""
    conds = []
    if k == 0:
        conds.append(s != 0)
    elif k <= d_prime:
        conds.append(s <= (2 * n * rm - 2) * k - 1)
        conds.append(s > 2 * n * r * k)
    elif k == d_prime + 1:
        conds.append(s <= (2 * n * rm - 2) * d_prime - 1)
    return any(conds)


class TestE1Support:
    def test_fixture_cells(self, h1):
        sup = e1_support((5, 7, 5, 12), h1, 2)
        assert sup.status(1, 5) == "zero"          # 5 <= (8-2)*1 - 1
        assert sup.status(1, 6) == "possibly_nonzero"
        assert sup.status(0, 0) == "possibly_nonzero"
        assert sup.status(0, 4) == "zero"
        assert sup.status(5, 3) == "zero"          # beyond the truncation column

    def test_tail_edge(self, h1):
        sup = e1_support((5, 7, 5, 12), h1, 2)
        edge = (2 * 2 * 2 - 2) * 2  # (2 n r_min - 2) d'
        assert sup.status(3, edge - 1) == "zero"
        assert sup.status(3, edge) == "tail_unknown"

    def test_independent_rechecker(self):
        rng = random.Random(15)
        for _ in range(10):
            fan = builtin_fan(rng.choice(FAMILY))
            n = rng.randint(2, 3)
            degrees = tuple(rng.randint(n, 4 * n) for _ in range(fan.ray_count))
            sup = e1_support(degrees, fan, n)
            r = fan.ray_count
            for (k, s), status in sup.cells.items():
                vanishes = _zero_conditions(k, s, sup.d_prime, sup.r_min, n, r)
                if status == "zero":
                    assert vanishes, (k, s)
                elif status == "possibly_nonzero":
                    assert not vanishes and (k == 0 or k <= sup.d_prime), (k, s)
                else:
                    assert k == sup.d_prime + 1 and not vanishes, (k, s)

    def test_zero_below_diagonal_band(self):
        rng = random.Random(16)
        for _ in range(10):
            fan = builtin_fan(rng.choice(FAMILY))
            n = rng.randint(2, 3)
            degrees = tuple(rng.randint(n, 3 * n) for _ in range(fan.ray_count))
            sup = e1_support(degrees, fan, n)
            rm = sup.r_min
            for k in range(1, sup.d_prime + 1):
                for s in range(sup.s_min, sup.s_max + 1):
                    if s - k <= (2 * n * rm - 3) * k - 1:
                        assert sup.status(k, s) == "zero"


class TestBand:
    def test_fixture(self, h1):
        band = min_unknown_band((5, 7, 5, 12), h1, 2)
        assert band.value == 10
        assert band.value == stability_dim((5, 7, 5, 12), h1, 2) + 2

    def test_minimum_attained_at_first_band(self, h1):
        band = min_unknown_band((5, 7, 5, 12), h1, 2)
        assert band.per_t[1][0] == band.value
        assert all(band.per_t[t][0] >= band.value for t in band.per_t)

    def test_empty_band(self, h1):
        band = min_unknown_band((1, 1, 1, 2), h1, 2)
        assert band.empty and band.value is None

    def test_cap(self, h1):
        with pytest.raises(CapExceededError):
            min_unknown_band((40, 40, 40, 80), h1, 2)

    def test_brute_force_matches_closed_form(self):
        rng = random.Random(23)
        for _ in range(30):
            fan = builtin_fan(rng.choice(FAMILY))
            n = rng.randint(2, 3)
            d_prime = rng.randint(1, 8)
            d_min = n * d_prime + rng.randint(0, n - 1)
            degrees = [d_min + rng.randint(0, 4) for _ in range(fan.ray_count)]
            degrees[0] = d_min
            band = min_unknown_band(degrees, fan, n)
            assert all(b == c for b, c in band.per_t.values())
            assert band.value == stability_dim(degrees, fan, n) + 2


class TestTruncationDim:
    def test_fixture(self, h1):
        assert truncation_dim((5, 7, 5, 12), h1, 2) == 48

    def test_cross_module_identity(self):
        rng = random.Random(31)
        for _ in range(30):
            fan = builtin_fan(rng.choice(FAMILY))
            n = rng.randint(2, 3)
            degrees = tuple(rng.randint(n, 5 * n) for _ in range(fan.ray_count))
            d_prime = min(degrees) // n
            value = truncation_dim(degrees, fan, n)
            assert value == (
                bundle_rank(degrees, d_prime, n, fan.ray_count)
                + dim_config(fan, n, d_prime) + 1
            )

    def test_slope_in_truncation_order(self, h1):
        # raising d_min by n with the total held fixed moves the value by 3 - 2 n r_min + 2n
        n = 2
        a = truncation_dim((4, 9, 4, 12), h1, n)
        b = truncation_dim((6, 9, 6, 12), h1, n)
        # d' goes 2 -> 3 while N(D) rises by 4: check against the closed form directly
        assert b - a == 2 * 4 + (3 - 2 * n * 2)
