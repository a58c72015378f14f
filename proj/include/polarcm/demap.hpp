// Exact per-level soft demapping for ASK over AWGN.
#ifndef POLARCM_DEMAP_HPP
#define POLARCM_DEMAP_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "polarcm/channels.hpp"
#include "polarcm/sbp.hpp"

namespace polarcm {

// LLR of label bit `level` given channel output y and the lower-level label
// bits packed in `prev_label_bits` (bit i of the mask is b_i). Sums Gaussian
// likelihoods over the 2^{m-level} consistent points in the log domain with
// max subtraction, so it stays finite at any SNR. Positive favors bit 0.
inline double bit_level_llr(double y, int level, std::uint32_t prev_label_bits,
                            const Constellation& cons, const Labeling& lab, double sigma) {
	if (level < 0 || level >= cons.m)
		throw std::invalid_argument("bit_level_llr: level out of range");
	const double inv_two_var = 1.0 / (2.0 * sigma * sigma);
	const std::uint32_t mask = (level == 0) ? 0u : ((1u << level) - 1u);
	const std::uint32_t prefix = prev_label_bits & mask;

	double max_e[2] = {-std::numeric_limits<double>::infinity(),
	                   -std::numeric_limits<double>::infinity()};
	const int count = cons.size();
	for (int p = 0; p < count; ++p) {
		const std::uint32_t g = lab.point_to_label[p];
		if ((g & mask) != prefix) continue;
		const double d = y - cons.points[p];
		const double e = -d * d * inv_two_var;
		const int side = (g >> level) & 1u;
		if (e > max_e[side]) max_e[side] = e;
	}
	double sum_e[2] = {0.0, 0.0};
	for (int p = 0; p < count; ++p) {
		const std::uint32_t g = lab.point_to_label[p];
		if ((g & mask) != prefix) continue;
		const double d = y - cons.points[p];
		const double e = -d * d * inv_two_var;
		const int side = (g >> level) & 1u;
		sum_e[side] += std::exp(e - max_e[side]);
	}
	return (max_e[0] + std::log(sum_e[0])) - (max_e[1] + std::log(sum_e[1]));
}

}  // namespace polarcm

#endif
