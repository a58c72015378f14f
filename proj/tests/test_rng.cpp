#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "polarcm/rng.hpp"

using polarcm::SplitMix64;

TEST_CASE("same seed and stream reproduce the sequence exactly", "[rng]") {
	SplitMix64 a(42, 7), b(42, 7);
	for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
	SplitMix64 c(42, 7), d(42, 7);
	for (int i = 0; i < 1000; ++i) {
		REQUIRE(c.next_gaussian() == d.next_gaussian());
		REQUIRE(c.next_double() == d.next_double());
	}
}

TEST_CASE("different streams and seeds decorrelate", "[rng]") {
	SplitMix64 a(42, 0), b(42, 1), c(43, 0);
	int equal_ab = 0, equal_ac = 0;
	for (int i = 0; i < 1000; ++i) {
		const auto x = a.next_u64();
		equal_ab += x == b.next_u64();
		equal_ac += x == c.next_u64();
	}
	REQUIRE(equal_ab == 0);
	REQUIRE(equal_ac == 0);
}

TEST_CASE("split streams are independent of parent position", "[rng]") {
	SplitMix64 parent(99, 3);
	SplitMix64 early = parent.split(5);
	parent.next_u64();
	parent.next_u64();
	SplitMix64 late = parent.split(5);
	for (int i = 0; i < 100; ++i) REQUIRE(early.next_u64() == late.next_u64());
}

TEST_CASE("uniform doubles land in [0,1) with the right mean", "[rng]") {
	SplitMix64 rng(1, 0);
	double sum = 0.0;
	const int n = 200000;
	for (int i = 0; i < n; ++i) {
		const double u = rng.next_double();
		REQUIRE(u >= 0.0);
		REQUIRE(u < 1.0);
		sum += u;
	}
	REQUIRE(std::abs(sum / n - 0.5) < 0.005);
}

TEST_CASE("gaussian moments", "[rng]") {
	SplitMix64 rng(2024, 0);
	const int n = 1000000;
	double sum = 0.0, sum_sq = 0.0;
	for (int i = 0; i < n; ++i) {
		const double z = rng.next_gaussian();
		sum += z;
		sum_sq += z * z;
	}
	const double mean = sum / n;
	const double var = sum_sq / n - mean * mean;
	REQUIRE(std::abs(mean) < 5e-3);         // 4 sigma / sqrt(n) bound
	REQUIRE(std::abs(var - 1.0) < 0.01);    // 1% on the second moment
}
