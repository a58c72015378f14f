// Multilevel polar codes: joint frozen-set selection over all m*N bit channels,
// encoding to ASK symbols, and multistage decoding.
//
// Global bit-channel index N*i + j means level i, component position j, the
// product order of the modulation SBP with the length-N polar SBP.
#ifndef POLARCM_MLC_HPP
#define POLARCM_MLC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polarcm/analysis.hpp"
#include "polarcm/channels.hpp"
#include "polarcm/demap.hpp"
#include "polarcm/polar.hpp"
#include "polarcm/sbp.hpp"

namespace polarcm {

struct MultilevelPolarCode {
	Constellation constellation;
	Labeling labeling;
	int n = 0;                                // component length N = 2^n
	std::vector<std::uint32_t> info_set;      // global indices, sorted
	std::vector<std::uint8_t> frozen_values;  // per frozen global index, ascending

	int component_length() const { return 1 << n; }
	int total_bits() const { return constellation.m * component_length(); }
	int dimension() const { return static_cast<int>(info_set.size()); }
	double rate_bits_per_symbol() const {
		return static_cast<double>(dimension()) / component_length();
	}

	// component polar code of one bit level
	PolarCode component(int level) const {
		const std::uint32_t block = 1u << n;
		const std::uint32_t lo = static_cast<std::uint32_t>(level) * block;
		std::vector<std::uint32_t> info;
		for (std::uint32_t g : info_set)
			if (g >= lo && g < lo + block) info.push_back(g - lo);
		std::vector<std::uint8_t> frozen;
		std::size_t next_frozen = 0;
		for (std::uint32_t g = 0; g < static_cast<std::uint32_t>(total_bits()); ++g) {
			const bool is_info = std::binary_search(info_set.begin(), info_set.end(), g);
			if (is_info) continue;
			if (g >= lo && g < lo + block) frozen.push_back(frozen_values[next_frozen]);
			++next_frozen;
		}
		return make_polar_code(n, std::move(info), std::move(frozen));
	}
};

inline MultilevelPolarCode make_ml_code(Constellation cons, Labeling lab, int n,
                                        std::vector<std::uint32_t> info_set,
                                        std::vector<std::uint8_t> frozen_values = {}) {
	if (lab.m != cons.m) throw std::invalid_argument("ml code: labeling/constellation mismatch");
	if (n < 0 || n > 20) throw std::invalid_argument("ml code: need 0 <= n <= 20");
	const std::uint32_t total = static_cast<std::uint32_t>(cons.m) << n;
	std::sort(info_set.begin(), info_set.end());
	if (std::adjacent_find(info_set.begin(), info_set.end()) != info_set.end())
		throw std::invalid_argument("ml code: duplicate info index");
	if (!info_set.empty() && info_set.back() >= total)
		throw std::invalid_argument("ml code: info index out of range");
	if (frozen_values.empty()) frozen_values.assign(total - info_set.size(), 0);
	if (frozen_values.size() != total - info_set.size())
		throw std::invalid_argument("ml code: frozen value count mismatch");
	MultilevelPolarCode code;
	code.constellation = std::move(cons);
	code.labeling = std::move(lab);
	code.n = n;
	code.info_set = std::move(info_set);
	code.frozen_values = std::move(frozen_values);
	return code;
}

// LLR of level-i label bits given the output symbol and the i previously
// decoded levels; positive favors bit 0
inline double llr_level(double y, int level, std::span<const std::uint8_t> prev_bits,
                        const Constellation& cons, const Labeling& lab, double sigma) {
	if (prev_bits.size() != static_cast<std::size_t>(level))
		throw std::invalid_argument("llr_level: need exactly `level` previous bits");
	std::uint32_t packed = 0;
	for (int i = 0; i < level; ++i) packed |= (prev_bits[i] & 1u) << i;
	return bit_level_llr(y, level, packed, cons, lab, sigma);
}

// capacity variance of the full multilevel transform: labeling variance plus
// the average of the per-level polar variances
inline double ml_variance(const CapacityProfile& level_profile,
                          const std::vector<double>& per_level_polar_variances) {
	return compose_variance(level_profile, per_level_polar_variances);
}

struct MlDesign {
	MultilevelPolarCode code;
	CapacityProfile level_profile;    // modulation-level capacities used for design
	std::vector<double> level_rates;  // implicit K_i / N per level (diagnostic)
	double predicted_wer = 0.0;       // SC product formula on the pooled profile
};

struct DesignOptions {
	bool use_monte_carlo = false;  // default: deterministic quadrature
	std::uint64_t mc_samples = 200000;
	std::uint64_t mc_seed = 1;
};

// Construction per the capacity-pooling recipe: per-level Gaussian surrogates
// from the level capacities, density evolution per component, then one global
// pick of the K most reliable among all m*N channels. Per-level rates fall out.
inline MlDesign design(const Constellation& cons, const Labeling& lab, int n, int k,
                       double sigma, const DesignOptions& opts = {}) {
	if (lab.m != cons.m) throw std::invalid_argument("design: labeling/constellation mismatch");
	if (n < 0 || n > 20) throw std::invalid_argument("design: need 0 <= n <= 20");
	const int m = cons.m;
	const std::uint32_t block = 1u << n;
	const std::uint32_t total = static_cast<std::uint32_t>(m) * block;
	if (k < 0 || static_cast<std::uint32_t>(k) > total)
		throw InfeasibleDesign("design: K out of range");

	CapacityProfile level_profile =
		opts.use_monte_carlo
			? mc_bit_level_profile(cons, lab, sigma, opts.mc_samples, SplitMix64(opts.mc_seed))
			: level_capacities(cons, lab, sigma);

	std::vector<double> pe(total);
	for (int level = 0; level < m; ++level) {
		double cap = level_profile.values[level];
		if (cap > 1.0 - 1e-9) cap = 1.0 - 1e-9;
		const GaussianBitChannel surrogate = ga_mean_from_capacity(cap);
		const std::vector<GaussianBitChannel> chans = ga_polarize(surrogate, n);
		for (std::uint32_t j = 0; j < block; ++j)
			pe[static_cast<std::size_t>(level) * block + j] = pe_from_mean(chans[j]);
	}

	std::vector<std::uint32_t> order(total);
	std::iota(order.begin(), order.end(), 0);
	std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
		if (pe[a] != pe[b]) return pe[a] < pe[b];
		return a > b;  // tie: freeze the lower global index
	});
	std::vector<std::uint32_t> info(order.begin(), order.begin() + k);

	MlDesign out;
	out.code = make_ml_code(cons, lab, n, std::move(info));
	out.level_profile = std::move(level_profile);
	out.level_rates.assign(m, 0.0);
	for (std::uint32_t g : out.code.info_set)
		out.level_rates[g / block] += 1.0 / static_cast<double>(block);
	out.predicted_wer = wer_sc(pe, out.code.info_set);
	return out;
}

// Encode K info bits to N constellation points: scatter into the global
// u-vector, polar-transform each level, map per-symbol labels to points.
// Bit-level equivalent to the generator P_{m,N} (G_N ⊗ I_m) followed by the
// labeling rule.
inline std::vector<double> ml_encode(const MultilevelPolarCode& code,
                                     const std::vector<std::uint8_t>& info_bits) {
	if (info_bits.size() != static_cast<std::size_t>(code.dimension()))
		throw std::invalid_argument("ml_encode: info length mismatch");
	const int m = code.constellation.m;
	const std::uint32_t block = code.component_length();
	std::vector<std::uint8_t> u(code.total_bits(), 0);
	std::size_t next_info = 0, next_frozen = 0;
	for (std::uint32_t g = 0; g < u.size(); ++g) {
		if (next_info < code.info_set.size() && code.info_set[next_info] == g)
			u[g] = info_bits[next_info++] & 1;
		else
			u[g] = code.frozen_values[next_frozen++] & 1;
	}
	std::vector<std::vector<std::uint8_t>> level_cw(m);
	for (int level = 0; level < m; ++level) {
		std::vector<std::uint8_t> ul(u.begin() + std::size_t(level) * block,
		                             u.begin() + std::size_t(level + 1) * block);
		level_cw[level] = polar_transform(std::move(ul));
	}
	std::vector<double> symbols(block);
	for (std::uint32_t t = 0; t < block; ++t) {
		std::uint32_t label = 0;
		for (int level = 0; level < m; ++level) label |= std::uint32_t(level_cw[level][t]) << level;
		symbols[t] = code.constellation.points[code.labeling.label_to_point[label]];
	}
	return symbols;
}

struct MsdTrace {
	std::vector<std::vector<std::uint8_t>> level_codewords;  // re-encoded decisions
	std::vector<std::uint32_t> symbol_indices;               // final point decisions
};

struct MsdResult {
	std::vector<std::uint8_t> info_bits;  // global index order
	MsdTrace trace;
};

// Multistage decoding: demap level i against the re-encoded decisions of
// levels < i, SC-decode the component code, repeat. Level i never reads
// levels above it.
inline MsdResult msd_decode(const MultilevelPolarCode& code, const std::vector<double>& received,
                            double sigma) {
	const std::uint32_t block = code.component_length();
	if (received.size() != block) throw std::invalid_argument("msd_decode: symbol count mismatch");
	const int m = code.constellation.m;
	MsdResult res;
	res.trace.level_codewords.resize(m);
	std::vector<std::uint32_t> decided(block, 0);  // packed labels of decoded levels
	std::vector<std::vector<std::uint8_t>> level_u(m);
	LlrWord llrs;
	llrs.values.resize(block);
	for (int level = 0; level < m; ++level) {
		for (std::uint32_t t = 0; t < block; ++t)
			llrs.values[t] =
				bit_level_llr(received[t], level, decided[t], code.constellation, code.labeling, sigma);
		const PolarCode comp = code.component(level);
		ScResult sc = sc_decode(comp, llrs);
		std::vector<std::uint8_t> cw = polar_transform(sc.u_hat);
		for (std::uint32_t t = 0; t < block; ++t) decided[t] |= std::uint32_t(cw[t]) << level;
		level_u[level] = std::move(sc.u_hat);
		res.trace.level_codewords[level] = std::move(cw);
	}
	res.trace.symbol_indices.resize(block);
	for (std::uint32_t t = 0; t < block; ++t)
		res.trace.symbol_indices[t] = code.labeling.label_to_point[decided[t]];
	res.info_bits.reserve(code.dimension());
	for (std::uint32_t g : code.info_set) res.info_bits.push_back(level_u[g / block][g % block]);
	return res;
}

// --- design artifact file, canonical text form ---

inline std::string print_design(const MlDesign& design) {
	std::string out = "ml-polar-design v1\n";
	out += "m " + std::to_string(design.code.constellation.m) + "\n";
	out += "labeling " + design.code.labeling.name + "\n";
	out += "N " + std::to_string(design.code.component_length()) + "\n";
	out += "K " + std::to_string(design.code.dimension()) + "\n";
	out += "A";
	for (std::uint32_t g : design.code.info_set) out += " " + std::to_string(g);
	out += "\nF ";
	for (std::uint8_t b : design.code.frozen_values) out += b ? '1' : '0';
	out += "\nlevel_rates";
	for (double r : design.level_rates) {
		out += ' ';
		detail::append_double(out, r);
	}
	out += "\npredicted_wer ";
	detail::append_double(out, design.predicted_wer);
	out += "\n";
	return out;
}

inline MlDesign parse_design(const std::string& text) {
	std::istringstream in(text);
	std::string magic, version;
	in >> magic >> version;
	if (magic != "ml-polar-design" || version != "v1")
		throw std::runtime_error("parse_design: bad header");
	int m = -1;
	long n_val = -1, k_val = -1;
	std::string labeling_name, frozen_str;
	std::vector<std::uint32_t> info;
	std::vector<double> rates;
	double wer = 0.0;
	std::string key;
	while (in >> key) {
		if (key == "m") {
			in >> m;
		} else if (key == "labeling") {
			in >> labeling_name;
		} else if (key == "N") {
			in >> n_val;
		} else if (key == "K") {
			in >> k_val;
		} else if (key == "A") {
			for (long i = 0; i < k_val; ++i) {
				std::uint32_t v;
				if (!(in >> v)) throw std::runtime_error("parse_design: truncated info set");
				info.push_back(v);
			}
		} else if (key == "F") {
			in >> frozen_str;
		} else if (key == "level_rates") {
			for (int i = 0; i < m; ++i) {
				double r;
				if (!(in >> r)) throw std::runtime_error("parse_design: truncated level rates");
				rates.push_back(r);
			}
		} else if (key == "predicted_wer") {
			in >> wer;
		} else {
			throw std::runtime_error("parse_design: unknown key " + key);
		}
	}
	if (m < 1 || n_val <= 0 || (n_val & (n_val - 1)) != 0 || k_val < 0)
		throw std::runtime_error("parse_design: bad m, N or K");
	int n = 0;
	while ((1l << n) < n_val) ++n;
	Labeling lab;
	if (labeling_name == "SP")
		lab = sp_labeling(m);
	else if (labeling_name == "GRAY")
		lab = gray_labeling(m);
	else
		throw std::runtime_error("parse_design: unknown labeling " + labeling_name);
	std::vector<std::uint8_t> frozen;
	for (char c : frozen_str) {
		if (c != '0' && c != '1') throw std::runtime_error("parse_design: bad frozen bit");
		frozen.push_back(c == '1');
	}
	MlDesign out;
	out.code = make_ml_code(ask_constellation(m), std::move(lab), n, std::move(info),
	                        std::move(frozen));
	if (static_cast<long>(out.code.dimension()) != k_val)
		throw std::runtime_error("parse_design: K mismatch");
	out.level_rates = std::move(rates);
	out.predicted_wer = wer;
	return out;
}

}  // namespace polarcm

#endif
