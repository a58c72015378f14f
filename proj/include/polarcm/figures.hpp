// Data generators for the three reference figures: BEC variance curves,
// bit-level variance of ASK labelings, and rate-vs-power-efficiency by
// density evolution.
#ifndef POLARCM_FIGURES_HPP
#define POLARCM_FIGURES_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polarcm/analysis.hpp"
#include "polarcm/channels.hpp"
#include "polarcm/csv.hpp"
#include "polarcm/mlc.hpp"
#include "polarcm/polar.hpp"
#include "polarcm/sbp.hpp"

namespace polarcm {

struct FigRow {
	double x = 0.0;
	std::string series;
	double value = 0.0;
};

inline void write_fig_csv(std::ostream& os, std::uint64_t seed,
                          const std::vector<std::pair<std::string, std::string>>& meta,
                          const std::vector<FigRow>& rows) {
	write_csv_metadata(os, seed, meta);
	os << "x,series,value\n";
	for (const FigRow& r : rows)
		os << format_double(r.x) << ',' << r.series << ',' << format_double(r.value) << "\n";
}

// capacity variance of BEC polar codes vs channel capacity, one series per n,
// plus the I(1-I) bound
inline std::vector<FigRow> fig1_data(const std::vector<int>& n_list,
                                     const std::vector<double>& epsilon_grid) {
	std::vector<FigRow> rows;
	for (int n : n_list) {
		const auto curve = variance_curve_bec(epsilon_grid, n);
		for (const auto& [cap, var] : curve)
			rows.push_back({cap, "n=" + std::to_string(n), var});
	}
	for (double eps : epsilon_grid) {
		const double cap = 1.0 - eps;
		rows.push_back({cap, "bound", cap * (1.0 - cap)});
	}
	return rows;
}

// bit-level capacity variance of 2^m-ASK vs per-bit capacity M = C_cm / m;
// variances from Monte-Carlo level profiles, x from quadrature
inline std::vector<FigRow> fig2_data(const std::vector<int>& m_list,
                                     const std::vector<std::string>& labelings,
                                     const std::vector<double>& es_n0_db_grid,
                                     std::uint64_t samples, std::uint64_t seed) {
	std::vector<FigRow> rows;
	std::uint64_t stream = 0;
	for (int m : m_list) {
		const Constellation cons = ask_constellation(m);
		for (double snr_db : es_n0_db_grid) {
			const double sigma = std::sqrt(1.0 / (2.0 * std::pow(10.0, snr_db / 10.0)));
			const double mean_cap = cm_capacity(cons, sigma) / m;
			for (const std::string& name : labelings) {
				const Labeling lab = name == "GRAY" ? gray_labeling(m) : sp_labeling(m);
				const CapacityProfile profile =
					mc_bit_level_profile(cons, lab, sigma, samples, SplitMix64(seed, stream++));
				rows.push_back(
					{mean_cap, "m" + std::to_string(m) + "-" + name, profile_variance(profile)});
			}
		}
	}
	return rows;
}

namespace detail {

// DE-predicted word error rate of a 16-ASK multilevel polar code at one operating point
inline double de_wer(const Constellation& cons, const Labeling& lab, int n, int k,
                     double ebno_db, double rate) {
	const double sigma = ebno_to_sigma(ebno_db, rate);
	const CapacityProfile level_profile = level_capacities(cons, lab, sigma);
	const int m = cons.m;
	const std::uint32_t block = 1u << n;
	std::vector<double> pe(static_cast<std::size_t>(m) * block);
	for (int level = 0; level < m; ++level) {
		double cap = level_profile.values[level];
		if (cap > 1.0 - 1e-9) cap = 1.0 - 1e-9;
		const auto chans = ga_polarize(ga_mean_from_capacity(cap), n);
		for (std::uint32_t j = 0; j < block; ++j)
			pe[std::size_t(level) * block + j] = pe_from_mean(chans[j]);
	}
	std::vector<std::uint32_t> order(pe.size());
	std::iota(order.begin(), order.end(), 0);
	std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
		if (pe[a] != pe[b]) return pe[a] < pe[b];
		return a > b;
	});
	std::vector<std::uint32_t> info(order.begin(), order.begin() + k);
	return wer_sc(pe, info);
}

}  // namespace detail

// smallest Eb/N0 (dB) whose DE-predicted SC word error rate meets `target_wer`
inline double required_ebno_db(const Constellation& cons, const Labeling& lab, int n,
                               double rate, double target_wer, double tol_db = 0.01) {
	const int k = static_cast<int>(std::lround(rate * (1 << n)));
	if (k <= 0 || k > cons.m * (1 << n))
		throw InfeasibleDesign("required_ebno_db: rate out of range");
	auto meets = [&](double ebno) {
		return detail::de_wer(cons, lab, n, k, ebno, rate) <= target_wer;
	};
	double lo = -10.0, hi = 30.0;
	while (!meets(hi)) {
		hi += 10.0;
		if (hi > 100.0) throw InfeasibleDesign("required_ebno_db: target unreachable");
	}
	while (meets(lo)) {
		lo -= 10.0;
		if (lo < -60.0) return lo;
	}
	while (hi - lo > tol_db) {
		const double mid = 0.5 * (lo + hi);
		(meets(mid) ? hi : lo) = mid;
	}
	return hi;
}

// Eb/N0 (dB) at which the coded-modulation capacity reaches `rate`
inline double cm_capacity_ebno_db(const Constellation& cons, double rate, double tol_db = 0.01) {
	if (rate <= 0.0 || rate >= cons.m)
		throw InfeasibleDesign("cm_capacity_ebno_db: rate out of range");
	auto reaches = [&](double ebno) {
		return cm_capacity(cons, ebno_to_sigma(ebno, rate)) >= rate;
	};
	double lo = -20.0, hi = 40.0;
	while (!reaches(hi)) {
		hi += 10.0;
		if (hi > 120.0) throw InfeasibleDesign("cm_capacity_ebno_db: unreachable");
	}
	while (reaches(lo)) {
		lo -= 10.0;
		if (lo < -60.0) return lo;
	}
	while (hi - lo > tol_db) {
		const double mid = 0.5 * (lo + hi);
		(reaches(mid) ? hi : lo) = mid;
	}
	return hi;
}

// Shannon bound for real constellations: R = (1/2) log2(1 + 2 R Eb/N0)
inline double shannon_real_ebno_db(double rate) {
	if (rate <= 0.0) throw std::invalid_argument("shannon_real_ebno_db: rate must be positive");
	return 10.0 * std::log10((std::pow(2.0, 2.0 * rate) - 1.0) / (2.0 * rate));
}

// Rate vs required Eb/N0 for 16-ASK multilevel polar codes by density
// evolution, plus the coded-modulation capacity curve and the Shannon bound.
// Rows carry x = Eb/N0 in dB and value = rate.
inline std::vector<FigRow> fig3_data(const std::vector<int>& mn_list,
                                     const std::vector<std::string>& labelings,
                                     double target_wer, const std::vector<double>& rates) {
	const int m = 4;  // 16-ASK
	const Constellation cons = ask_constellation(m);
	for (double r : rates)
		if (r >= m) throw InfeasibleDesign("fig3_data: rate must stay below m");
	std::vector<FigRow> rows;
	for (const std::string& name : labelings) {
		const Labeling lab = name == "GRAY" ? gray_labeling(m) : sp_labeling(m);
		for (int mn : mn_list) {
			if (mn % m != 0 || ((mn / m) & (mn / m - 1)) != 0)
				throw std::invalid_argument("fig3_data: mN must be m * 2^n");
			int n = 0;
			while ((1 << n) < mn / m) ++n;
			const std::string series = name + "-mN" + std::to_string(mn);
			for (double rate : rates)
				rows.push_back({required_ebno_db(cons, lab, n, rate, target_wer), series, rate});
		}
	}
	for (double rate : rates) rows.push_back({cm_capacity_ebno_db(cons, rate), "Ccm", rate});
	for (double rate : rates) rows.push_back({shannon_real_ebno_db(rate), "shannon-real", rate});
	return rows;
}

}  // namespace polarcm

#endif
