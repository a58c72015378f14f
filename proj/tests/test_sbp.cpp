#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "polarcm/analysis.hpp"
#include "polarcm/channels.hpp"
#include "polarcm/f2.hpp"
#include "polarcm/polar.hpp"
#include "polarcm/sbp.hpp"

using namespace polarcm;

namespace {

// one BEC polarization step computed by enumerating the four erasure patterns
// of two channel uses: u0 needs both outputs, u1 survives if either is clear
std::pair<double, double> bec_step_by_enumeration(double eps) {
	double erase0 = 0.0, erase1 = 0.0;
	for (int pattern = 0; pattern < 4; ++pattern) {
		const bool e0 = pattern & 1, e1 = pattern & 2;
		const double p = (e0 ? eps : 1.0 - eps) * (e1 ? eps : 1.0 - eps);
		if (e0 || e1) erase0 += p;
		if (e0 && e1) erase1 += p;
	}
	return {erase0, erase1};
}

}  // namespace

TEST_CASE("sp labeling is natural binary with doubling subset spacing", "[sbp]") {
	const Labeling sp2 = sp_labeling(2);
	REQUIRE(sp2.label_to_point[0b00] == 0);
	REQUIRE(sp2.label_to_point[0b01] == 1);  // [1,0]: b0=1, b1=0
	REQUIRE(sp2.label_to_point[0b10] == 2);  // [0,1]
	REQUIRE(sp2.label_to_point[0b11] == 3);

	// fixing b0 = 0 keeps the even points, whose spacing is twice the grid's
	const Constellation c = ask_constellation(2);
	const double full_step = c.points[1] - c.points[0];
	std::vector<double> subset;
	for (int p = 0; p < 4; ++p)
		if ((sp2.point_to_label[p] & 1u) == 0) subset.push_back(c.points[p]);
	REQUIRE(subset.size() == 2);
	REQUIRE(subset[1] - subset[0] == Catch::Approx(2.0 * full_step).margin(1e-12));

	const Labeling sp1 = sp_labeling(1);
	REQUIRE(sp1.label_to_point[0] == 0);
	REQUIRE(sp1.label_to_point[1] == 1);
}

TEST_CASE("gray labeling is the binary-reflected code", "[sbp]") {
	const Labeling g2 = gray_labeling(2);
	// point indices 0,1,2,3 carry labels 0,1,3,2
	REQUIRE(g2.point_to_label[0] == 0);
	REQUIRE(g2.point_to_label[1] == 1);
	REQUIRE(g2.point_to_label[2] == 3);
	REQUIRE(g2.point_to_label[3] == 2);

	for (int m = 1; m <= 8; ++m) {
		const Labeling g = gray_labeling(m);
		const int count = 1 << m;
		for (int p = 0; p + 1 < count; ++p) {
			const unsigned diff = g.point_to_label[p] ^ g.point_to_label[p + 1];
			REQUIRE(diff != 0);
			REQUIRE((diff & (diff - 1)) == 0);  // adjacent points differ in one bit
		}
	}
	REQUIRE(gray_labeling(1).label_to_point == sp_labeling(1).label_to_point);
}

TEST_CASE("labelings are bijective for all m", "[sbp]") {
	for (int m = 1; m <= 8; ++m) {
		for (const Labeling& lab : {sp_labeling(m), gray_labeling(m)}) {
			std::vector<bool> seen(std::size_t(1) << m, false);
			for (std::uint32_t g = 0; g < seen.size(); ++g) {
				const std::uint32_t p = lab.label_to_point[g];
				REQUIRE_FALSE(seen[p]);
				seen[p] = true;
				REQUIRE(lab.point_to_label[p] == g);
			}
		}
	}
	REQUIRE_THROWS_AS(custom_labeling(2, {0, 1, 2, 2}, "bad"), std::invalid_argument);
}

TEST_CASE("profile mean", "[sbp]") {
	REQUIRE(profile_mean({{0.25, 0.75}, {}, {}}) == Catch::Approx(0.5).margin(1e-15));
	REQUIRE(profile_mean({{0.0, 1.0}, {}, {}}) == Catch::Approx(0.5).margin(1e-15));
	REQUIRE_THROWS_AS(profile_mean(CapacityProfile{}), std::invalid_argument);

	// one polar step preserves the BEC capacity exactly
	const auto [e0, e1] = bec_step_by_enumeration(0.5);
	REQUIRE(e0 == Catch::Approx(0.75).margin(1e-15));
	REQUIRE(e1 == Catch::Approx(0.25).margin(1e-15));
	CapacityProfile p;
	p.values = {1.0 - e0, 1.0 - e1};
	REQUIRE(profile_mean(p) == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("profile variance and its bound", "[sbp]") {
	REQUIRE(profile_variance({{0.25, 0.75}, {}, {}}) == Catch::Approx(0.0625).margin(1e-15));
	// all capacities 0 or 1 meet the bound M(1-M) with equality
	REQUIRE(profile_variance({{0.0, 1.0}, {}, {}}) == Catch::Approx(0.25).margin(1e-15));
	REQUIRE(profile_variance({{0.4, 0.4, 0.4}, {}, {}}) == Catch::Approx(0.0).margin(1e-15));

	SplitMix64 rng(7, 0);
	for (int it = 0; it < 200; ++it) {
		CapacityProfile p;
		const int len = 1 + int(rng.next_u64() % 16);
		for (int i = 0; i < len; ++i) p.values.push_back(rng.next_double());
		const double mean = profile_mean(p);
		REQUIRE(profile_variance(p) <= mean * (1.0 - mean) + 1e-12);
	}
}

TEST_CASE("product index bookkeeping", "[sbp]") {
	// k1 = k2 = 2: components 0,1,2,3 land at positions 0,2,1,3
	const auto perm = product_permutation(2, 2);
	REQUIRE(perm == std::vector<std::size_t>{0, 2, 1, 3});
	REQUIRE(product_bit_index(1, 3, 2, 4) == 7);
	REQUIRE(product_position(1, 3, 2, 4) == 7);
	REQUIRE_THROWS_AS(product_bit_index(2, 0, 2, 4), std::out_of_range);

	for (std::size_t k1 = 1; k1 <= 8; ++k1)
		for (std::size_t k2 = 1; k2 <= 8; ++k2) {
			const auto fwd = product_permutation(k1, k2);
			const auto bwd = product_permutation(k2, k1);
			for (std::size_t r = 0; r < k1 * k2; ++r) REQUIRE(bwd[fwd[r]] == r);
		}
}

TEST_CASE("variance composition matches the direct profile", "[sbp]") {
	// BEC 0.5, two polar steps: outer variance 0.0625, both inner variances
	// 0.03515625, total 0.09765625 equals the direct 4-channel variance
	const auto [e0, e1] = bec_step_by_enumeration(0.5);
	CapacityProfile outer;
	outer.values = {1.0 - e0, 1.0 - e1};
	const auto [e00, e01] = bec_step_by_enumeration(e0);
	const auto [e10, e11] = bec_step_by_enumeration(e1);
	const CapacityProfile child0{{1.0 - e00, 1.0 - e01}, {}, {}};
	const CapacityProfile child1{{1.0 - e10, 1.0 - e11}, {}, {}};
	const double inner0 = profile_variance(child0);
	const double inner1 = profile_variance(child1);
	REQUIRE(inner0 == Catch::Approx(0.03515625).margin(1e-15));
	REQUIRE(inner1 == Catch::Approx(0.03515625).margin(1e-15));

	const double composed = compose_variance(outer, {inner0, inner1});
	REQUIRE(composed == Catch::Approx(0.09765625).margin(1e-15));

	const CapacityProfile direct{{1.0 - e00, 1.0 - e01, 1.0 - e10, 1.0 - e11}, {}, {}};
	REQUIRE(direct.values[0] == Catch::Approx(0.0625).margin(1e-15));
	REQUIRE(profile_variance(direct) == Catch::Approx(composed).margin(1e-15));

	REQUIRE(compose_variance(outer, {0.0, 0.0}) ==
	        Catch::Approx(profile_variance(outer)).margin(1e-15));
	const CapacityProfile trivial{{0.5}, {}, {}};
	REQUIRE(compose_variance(trivial, {0.123}) == Catch::Approx(0.123).margin(1e-15));
	REQUIRE_THROWS_AS(compose_variance(outer, {0.0}), std::invalid_argument);
}

TEST_CASE("mean is invariant under composition on exact BEC profiles", "[sbp]") {
	for (double eps : {0.1, 0.3, 0.5, 0.8}) {
		for (int n = 1; n <= 6; ++n) {
			const CapacityProfile p = profile_from_bec(bec_polarize(eps, n));
			REQUIRE(profile_mean(p) == Catch::Approx(1.0 - eps).margin(1e-12));
		}
	}
}

TEST_CASE("profile csv rows", "[sbp]") {
	CapacityProfile p = profile_from_bec(bec_polarize(0.5, 1));
	std::ostringstream out;
	write_profile_csv(out, p);
	REQUIRE(out.str() == "0,0.25,0.375\n1,0.75,0.125\n");

	CapacityProfile bare;
	bare.values = {0.5};
	std::ostringstream out2;
	write_profile_csv(out2, bare);
	REQUIRE(out2.str() == "0,0.5\n");
}

TEST_CASE("linear product matrix", "[sbp]") {
	const f2::Matrix i2 = f2::Matrix::identity(2);
	const f2::Matrix p22 = f2::Matrix::row_permutation(product_permutation(2, 2));
	REQUIRE(linear_product_matrix(i2, i2) == p22);

	// F_2 x F_2 against an independently expanded Kronecker product
	f2::Matrix f2k(2, 2);
	f2k.set(0, 0, true);
	f2k.set(1, 0, true);
	f2k.set(1, 1, true);
	f2::Matrix kron(4, 4);
	for (int a = 0; a < 2; ++a)
		for (int b = 0; b < 2; ++b)
			for (int c = 0; c < 2; ++c)
				for (int d = 0; d < 2; ++d)
					kron.set(a * 2 + c, b * 2 + d, f2k.get(a, b) && f2k.get(c, d));
	const f2::Matrix got = linear_product_matrix(f2k, f2k);
	REQUIRE(got == p22 * kron);
	REQUIRE(got.invertible());

	// the product of the 2-SBP with itself is the length-4 polar generator
	REQUIRE(got == generator_matrix(2));

	// iterating in either association order reproduces G_8
	const f2::Matrix g8a = linear_product_matrix(got, f2k);        // (pi^2) x pi
	const f2::Matrix g8b = linear_product_matrix(f2k, got);        // pi x (pi^2)
	REQUIRE(g8a == generator_matrix(3));
	REQUIRE(g8b == generator_matrix(3));

	f2::Matrix singular(2, 2);
	singular.set(0, 0, true);
	singular.set(1, 0, true);
	REQUIRE_THROWS_AS(linear_product_matrix(singular, i2), std::invalid_argument);
	REQUIRE_THROWS_AS(make_linear_sbp(singular), std::invalid_argument);
}
