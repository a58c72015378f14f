// Bit-channel analysis: exact BEC polarization, Gaussian-approximation density
// evolution, and numeric/Monte-Carlo capacity estimation of modulation bit levels.
#ifndef POLARCM_ANALYSIS_HPP
#define POLARCM_ANALYSIS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polarcm/channels.hpp"
#include "polarcm/demap.hpp"
#include "polarcm/quadrature.hpp"
#include "polarcm/rng.hpp"
#include "polarcm/sbp.hpp"

namespace polarcm {

struct BecBitChannel {
	double erasure;  // capacity = 1 - erasure
};

// symmetric Gaussian LLR with variance = 2 * mean ("consistent" density)
struct GaussianBitChannel {
	double llr_mean;
};

// Exact erasure recursion per polarization step: eps- = 2e - e^2, eps+ = e^2.
// Output order is the u-domain bit-channel order; the minus branch of every
// step takes the lower index.
inline std::vector<BecBitChannel> bec_polarize(double epsilon, int n) {
	if (epsilon < 0.0 || epsilon > 1.0)
		throw std::invalid_argument("bec_polarize: epsilon must be in [0,1]");
	if (n < 0 || n > 20) throw std::invalid_argument("bec_polarize: need 0 <= n <= 20");
	std::vector<double> cur{epsilon}, next;
	for (int step = 0; step < n; ++step) {
		next.resize(cur.size() * 2);
		for (std::size_t i = 0; i < cur.size(); ++i) {
			const double e = cur[i];
			next[2 * i] = e * (2.0 - e);
			next[2 * i + 1] = e * e;
		}
		cur.swap(next);
	}
	std::vector<BecBitChannel> out(cur.size());
	for (std::size_t i = 0; i < cur.size(); ++i) out[i].erasure = cur[i];
	return out;
}

// Frozen-set ordering and WER prediction need error probabilities; an erasure
// is resolved by a fair guess, so p_e = erasure / 2.
inline CapacityProfile profile_from_bec(const std::vector<BecBitChannel>& chans) {
	CapacityProfile p;
	p.values.reserve(chans.size());
	p.error_probs.reserve(chans.size());
	for (const BecBitChannel& c : chans) {
		p.values.push_back(1.0 - c.erasure);
		p.error_probs.push_back(0.5 * c.erasure);
	}
	return p;
}

// (channel capacity 1 - eps, capacity variance of the 2^n bit channels)
inline std::vector<std::pair<double, double>> variance_curve_bec(
		const std::vector<double>& epsilon_grid, int n) {
	std::vector<std::pair<double, double>> out;
	out.reserve(epsilon_grid.size());
	for (double eps : epsilon_grid) {
		CapacityProfile p = profile_from_bec(bec_polarize(eps, n));
		out.emplace_back(1.0 - eps, profile_variance(p));
	}
	return out;
}

// ---------------------------------------------------------------------------
// Gaussian approximation machinery.
//
// phi(x) = E[1 - tanh(L/2)] = E[2 / (1 + e^L)] for L ~ N(x, 2x) is the
// check-node degradation function: phi(0) = 1, strictly decreasing to 0.
// Completing the square gives the cancellation-free form
//   phi(x) = e^{-x/4} / sqrt(pi) * \int sech(sqrt(x) s) e^{-s^2} ds
// which is tabulated once on a geometric grid in x and interpolated linearly
// in (log x, log phi). Below the grid the series 1 - x/2 + x^2/4 applies;
// above it the asymptotic e^{-x/4} sqrt(pi/x) (1 - pi^2/(4x) + ...) takes
// over, continuity-stitched at the seam. Everything runs in the log domain so
// density evolution never underflows.
// ---------------------------------------------------------------------------

namespace detail {

class PhiTable {
public:
	static const PhiTable& instance() {
		static const PhiTable table;
		return table;
	}

	double log_phi(double x) const {
		if (!(x >= 0.0)) throw std::invalid_argument("phi: argument must be >= 0");
		if (x == 0.0) return 0.0;
		if (x < kXMin) return std::log1p(-0.5 * x + 0.25 * x * x);
		if (x >= kXMax) return tail_offset_ + asym_log(x);
		const double t = std::log(x);
		const double pos = (t - log_x_min_) / step_;
		std::size_t idx = static_cast<std::size_t>(pos);
		if (idx >= values_.size() - 1) idx = values_.size() - 2;
		const double frac = pos - static_cast<double>(idx);
		return values_[idx] + frac * (values_[idx + 1] - values_[idx]);
	}

	double log_phi_inv(double ly) const {
		if (ly >= 0.0) return 0.0;
		if (ly > values_.front()) {
			// series region: solve x^2/4 - x/2 + (1 - y) = 0 for the small root
			const double d = -std::expm1(ly);
			return 1.0 - std::sqrt(1.0 - 4.0 * d);
		}
		if (ly > values_.back()) {
			// exact inverse of the piecewise-linear interpolant
			std::size_t lo = 0, hi = values_.size() - 1;
			while (hi - lo > 1) {
				const std::size_t mid = (lo + hi) / 2;
				(values_[mid] >= ly ? lo : hi) = mid;
			}
			const double frac = (ly - values_[lo]) / (values_[hi] - values_[lo]);
			return std::exp(log_x_min_ + (static_cast<double>(lo) + frac) * step_);
		}
		// asymptotic tail: bisect on x
		double lo = kXMax, hi = std::max(2.0 * kXMax, -5.0 * ly);
		while (tail_offset_ + asym_log(hi) > ly) hi *= 2.0;
		for (int it = 0; it < 200; ++it) {
			const double mid = 0.5 * (lo + hi);
			(tail_offset_ + asym_log(mid) > ly ? lo : hi) = mid;
			if (hi - lo <= 1e-12 * hi) break;
		}
		return 0.5 * (lo + hi);
	}

private:
	static constexpr double kXMin = 1e-4;
	static constexpr double kXMax = 100.0;
	static constexpr int kNodes = 2048;

	static double asym_log(double x) {
		const double pi = 3.141592653589793238462643383279502884;
		const double p2 = pi * pi;
		const double bracket =
			1.0 - p2 / (4.0 * x) + (5.0 * p2 * p2 / 32.0) / (x * x) -
			(61.0 * p2 * p2 * p2 / 384.0) / (x * x * x);
		return -0.25 * x + 0.5 * std::log(pi / x) + std::log(bracket);
	}

	PhiTable() {
		const double pi = 3.141592653589793238462643383279502884;
		// fixed Simpson grid for \int_0^7 sech(sqrt(x) s) e^{-s^2} ds
		const int segments = 10000;  // even
		const double s_max = 7.0;
		const double h = s_max / segments;
		std::vector<double> gauss(segments + 1), s_val(segments + 1);
		for (int i = 0; i <= segments; ++i) {
			s_val[i] = h * i;
			gauss[i] = std::exp(-s_val[i] * s_val[i]);
		}
		log_x_min_ = std::log(kXMin);
		step_ = (std::log(kXMax) - log_x_min_) / (kNodes - 1);
		values_.resize(kNodes);
		for (int node = 0; node < kNodes; ++node) {
			const double x = std::exp(log_x_min_ + node * step_);
			const double a = std::sqrt(x);
			double acc = gauss[0] + gauss[segments] / std::cosh(a * s_val[segments]);
			for (int i = 1; i < segments; ++i)
				acc += (i % 2 ? 4.0 : 2.0) * gauss[i] / std::cosh(a * s_val[i]);
			const double integral = 2.0 * acc * h / 3.0;  // both half-lines
			values_[node] = -0.25 * x + std::log(integral / std::sqrt(pi));
		}
		// the series is more accurate than quadrature at the low seam
		values_.front() = std::log1p(-0.5 * kXMin + 0.25 * kXMin * kXMin);
		tail_offset_ = values_.back() - asym_log(kXMax);
	}

	double log_x_min_ = 0.0, step_ = 0.0;
	double tail_offset_ = 0.0;
	std::vector<double> values_;
};

inline double log2_1p_exp_neg(double l) {
	// log2(1 + e^{-l}) without overflow for any sign of l
	const double ln2 = 0.6931471805599453;
	if (l >= 0.0) return std::log1p(std::exp(-l)) / ln2;
	return (-l + std::log1p(std::exp(l))) / ln2;
}

}  // namespace detail

inline double phi(double x) { return std::exp(detail::PhiTable::instance().log_phi(x)); }

inline double phi_inv(double y) {
	if (!(y > 0.0) || y > 1.0) throw std::invalid_argument("phi_inv: need 0 < y <= 1");
	return detail::PhiTable::instance().log_phi_inv(std::log(y));
}

// I = 1 - E[log2(1 + e^{-L})], L ~ N(m, 2m); Gauss-Hermite evaluation
inline double ga_capacity(const GaussianBitChannel& ch) {
	const double m = ch.llr_mean;
	if (!(m >= 0.0)) throw std::invalid_argument("ga_capacity: mean must be >= 0");
	if (m == 0.0) return 0.0;
	const double loss =
		quad::gauss_expect(quad::gh128(), m, 2.0 * m,
	                       [](double l) { return detail::log2_1p_exp_neg(l); });
	const double cap = 1.0 - loss;
	return cap < 0.0 ? 0.0 : (cap > 1.0 ? 1.0 : cap);
}

// inverse of ga_capacity by monotone bisection
inline GaussianBitChannel ga_mean_from_capacity(double capacity) {
	if (!(capacity >= 0.0) || capacity >= 1.0)
		throw std::invalid_argument("ga_mean_from_capacity: need 0 <= I < 1");
	if (capacity == 0.0) return {0.0};
	double lo = 0.0, hi = 1.0;
	while (ga_capacity({hi}) < capacity) {
		hi *= 2.0;
		if (hi > 512.0) return {512.0};  // saturated: reliability beyond double precision
	}
	for (int it = 0; it < 200; ++it) {
		const double mid = 0.5 * (lo + hi);
		(ga_capacity({mid}) < capacity ? lo : hi) = mid;
		if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
	}
	return {0.5 * (lo + hi)};
}

// Density evolution with the Gaussian approximation, one polar step per level:
//   m- = phi^{-1}(1 - (1 - phi(m))^2)   (computed as phi * (2 - phi), log domain)
//   m+ = 2 m
// Ordering matches bec_polarize.
inline std::vector<GaussianBitChannel> ga_polarize(GaussianBitChannel ch0, int n) {
	if (!(ch0.llr_mean >= 0.0)) throw std::invalid_argument("ga_polarize: mean must be >= 0");
	if (n < 0 || n > 20) throw std::invalid_argument("ga_polarize: need 0 <= n <= 20");
	const detail::PhiTable& table = detail::PhiTable::instance();
	std::vector<double> cur{ch0.llr_mean}, next;
	for (int step = 0; step < n; ++step) {
		next.resize(cur.size() * 2);
		for (std::size_t i = 0; i < cur.size(); ++i) {
			const double m = cur[i];
			if (m == 0.0) {
				next[2 * i] = 0.0;
			} else {
				const double lp = table.log_phi(m);
				const double two_minus = lp < -50.0 ? 0.6931471805599453
				                                     : std::log(2.0 - std::exp(lp));
				next[2 * i] = table.log_phi_inv(lp + two_minus);
			}
			next[2 * i + 1] = 2.0 * m;
		}
		cur.swap(next);
	}
	std::vector<GaussianBitChannel> out(cur.size());
	for (std::size_t i = 0; i < cur.size(); ++i) out[i].llr_mean = cur[i];
	return out;
}

// p_e = Q(sqrt(m/2)), the negative tail of N(m, 2m)
inline double pe_from_mean(const GaussianBitChannel& ch) {
	if (!(ch.llr_mean >= 0.0)) throw std::invalid_argument("pe_from_mean: mean must be >= 0");
	return 0.5 * std::erfc(0.5 * std::sqrt(ch.llr_mean));
}

inline CapacityProfile profile_from_ga(const std::vector<GaussianBitChannel>& chans) {
	CapacityProfile p;
	p.values.reserve(chans.size());
	p.error_probs.reserve(chans.size());
	p.llr_means.reserve(chans.size());
	for (const GaussianBitChannel& c : chans) {
		p.values.push_back(ga_capacity(c));
		p.error_probs.push_back(pe_from_mean(c));
		p.llr_means.push_back(c.llr_mean);
	}
	return p;
}

// ---------------------------------------------------------------------------
// Constellation-constrained capacities by quadrature.
// ---------------------------------------------------------------------------

namespace detail {

// log density (natural log) of the equal-weight Gaussian mixture over `points`
inline double log_mixture_density(double y, std::span<const double> points, double sigma) {
	const double inv_two_var = 1.0 / (2.0 * sigma * sigma);
	double max_e = -std::numeric_limits<double>::infinity();
	for (double x : points) {
		const double d = y - x;
		const double e = -d * d * inv_two_var;
		if (e > max_e) max_e = e;
	}
	double sum = 0.0;
	for (double x : points) {
		const double d = y - x;
		sum += std::exp(-d * d * inv_two_var - max_e);
	}
	const double log_norm = -std::log(static_cast<double>(points.size())) -
	                        0.5 * std::log(2.0 * 3.141592653589793 * sigma * sigma);
	return max_e + std::log(sum) + log_norm;
}

// differential entropy (bits) of the equal-weight mixture, Gauss-Hermite per component
inline double mixture_entropy_bits(std::span<const double> points, double sigma) {
	const double log2e = 1.4426950408889634;
	double acc = 0.0;
	for (double x : points)
		acc += quad::gauss_expect(quad::gh128(), x, sigma * sigma, [&](double y) {
			return log_mixture_density(y, points, sigma);
		});
	return -log2e * acc / static_cast<double>(points.size());
}

}  // namespace detail

// I(X;Y) in bits for equiprobable constellation points over AWGN
inline double cm_capacity(const Constellation& cons, double sigma) {
	if (!(sigma > 0.0)) throw std::invalid_argument("cm_capacity: sigma must be positive");
	const double pi = 3.141592653589793238462643383279502884;
	const double h_noise = 0.5 * std::log2(2.0 * pi * 2.718281828459045 * sigma * sigma);
	return detail::mixture_entropy_bits(std::span<const double>(cons.points), sigma) - h_noise;
}

// Per-level capacities I(B_i; Y | B_0..B_{i-1}) of the labeling transform,
// by conditional mixture entropies: deterministic counterpart of the
// Monte-Carlo estimator below.
inline CapacityProfile level_capacities(const Constellation& cons, const Labeling& lab,
                                        double sigma) {
	if (!(sigma > 0.0)) throw std::invalid_argument("level_capacities: sigma must be positive");
	if (lab.m != cons.m) throw std::invalid_argument("level_capacities: labeling/constellation mismatch");
	const int m = cons.m;
	CapacityProfile profile;
	profile.values.resize(m);
	for (int level = 0; level < m; ++level) {
		const std::uint32_t prefixes = 1u << level;
		double acc = 0.0;
		for (std::uint32_t prefix = 0; prefix < prefixes; ++prefix) {
			std::vector<double> all, side0, side1;
			for (int p = 0; p < cons.size(); ++p) {
				const std::uint32_t g = lab.point_to_label[p];
				if ((g & (prefixes - 1u)) != prefix) continue;
				all.push_back(cons.points[p]);
				((g >> level) & 1u ? side1 : side0).push_back(cons.points[p]);
			}
			const double h_all = detail::mixture_entropy_bits(all, sigma);
			const double h_cond = 0.5 * (detail::mixture_entropy_bits(side0, sigma) +
			                             detail::mixture_entropy_bits(side1, sigma));
			acc += h_all - h_cond;
		}
		double v = acc / static_cast<double>(prefixes);
		profile.values[level] = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
	}
	return profile;
}

// Monte-Carlo estimate of the per-level capacities with genie conditioning:
// the level-i LLR is computed from the true lower-level bits, and
// I_i = E[1 - log2(1 + e^{-(1-2 b_i) L_i})]. Samples are drawn in blocks with
// one derived generator stream per block, so results do not depend on how
// blocks would be scheduled; sums are Kahan-compensated.
inline CapacityProfile mc_bit_level_profile(const Constellation& cons, const Labeling& lab,
                                            double sigma, std::uint64_t samples,
                                            const SplitMix64& rng_base) {
	if (samples < 1) throw std::invalid_argument("mc_bit_level_profile: need samples >= 1");
	if (lab.m != cons.m)
		throw std::invalid_argument("mc_bit_level_profile: labeling/constellation mismatch");
	const int m = cons.m;
	constexpr std::uint64_t kBlock = 1 << 16;
	std::vector<double> sum(m, 0.0), comp(m, 0.0);
	const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
	for (std::uint64_t b = 0; b < blocks; ++b) {
		SplitMix64 rng = rng_base.split(b);
		const std::uint64_t count = std::min(kBlock, samples - b * kBlock);
		for (std::uint64_t s = 0; s < count; ++s) {
			const std::uint32_t g = static_cast<std::uint32_t>(rng.next_u64() >> (64 - m));
			const double y = cons.points[lab.label_to_point[g]] + sigma * rng.next_gaussian();
			for (int level = 0; level < m; ++level) {
				const double llr = bit_level_llr(y, level, g, cons, lab, sigma);
				const double oriented = ((g >> level) & 1u) ? -llr : llr;
				const double term = 1.0 - detail::log2_1p_exp_neg(oriented) - comp[level];
				const double t = sum[level] + term;
				comp[level] = (t - sum[level]) - term;
				sum[level] = t;
			}
		}
	}
	CapacityProfile profile;
	profile.values.resize(m);
	for (int level = 0; level < m; ++level) {
		const double v = sum[level] / static_cast<double>(samples);
		profile.values[level] = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
	}
	return profile;
}

}  // namespace polarcm

#endif
