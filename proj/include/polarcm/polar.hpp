// Binary polar codes: generator, butterfly transform, SC decoding, frozen-set selection.
//
// Conventions: codewords are c = u * G_N with G_N = B_N F_N (bit reversal
// folded into the generator). Bit channels, capacity profiles and the SC
// decoder all index in u-domain order; the minus (check) branch of each
// polarization step owns the lower index.
#ifndef POLARCM_POLAR_HPP
#define POLARCM_POLAR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polarcm/f2.hpp"
#include "polarcm/sbp.hpp"

namespace polarcm {

// thrown when a requested code design cannot be met (e.g. K out of range)
struct InfeasibleDesign : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct PolarCode {
	int n = 0;                                // N = 2^n
	std::vector<std::uint32_t> info_set;      // sorted, unique, in [0, N)
	std::vector<std::uint8_t> frozen_values;  // per frozen index, ascending order

	int block_length() const { return 1 << n; }
	int dimension() const { return static_cast<int>(info_set.size()); }
	double rate() const { return double(dimension()) / double(block_length()); }

	// -1 marks an information slot, otherwise the frozen value
	std::vector<std::int8_t> u_slots;
};

inline PolarCode make_polar_code(int n, std::vector<std::uint32_t> info_set,
                                 std::vector<std::uint8_t> frozen_values = {}) {
	if (n < 0 || n > 20) throw std::invalid_argument("polar code: need 0 <= n <= 20");
	const std::uint32_t block = 1u << n;
	std::sort(info_set.begin(), info_set.end());
	if (std::adjacent_find(info_set.begin(), info_set.end()) != info_set.end())
		throw std::invalid_argument("polar code: duplicate info index");
	if (!info_set.empty() && info_set.back() >= block)
		throw std::invalid_argument("polar code: info index out of range");
	const std::size_t frozen_count = block - info_set.size();
	if (frozen_values.empty()) frozen_values.assign(frozen_count, 0);
	if (frozen_values.size() != frozen_count)
		throw std::invalid_argument("polar code: frozen value count mismatch");
	PolarCode code;
	code.n = n;
	code.info_set = std::move(info_set);
	code.frozen_values = std::move(frozen_values);
	code.u_slots.assign(block, -1);
	std::size_t next_info = 0, next_frozen = 0;
	for (std::uint32_t i = 0; i < block; ++i) {
		if (next_info < code.info_set.size() && code.info_set[next_info] == i) {
			++next_info;
		} else {
			code.u_slots[i] = static_cast<std::int8_t>(code.frozen_values[next_frozen++] & 1);
		}
	}
	return code;
}

// G_N = B_N F_N materialized; entry [i][j] = 1 iff j's bits are a subset of bitrev(i)'s
inline f2::Matrix generator_matrix(int n) {
	if (n < 0 || n > 10)
		throw std::invalid_argument("generator_matrix: explicit form limited to n <= 10");
	const std::uint32_t block = 1u << n;
	f2::Matrix g(block, block);
	for (std::uint32_t i = 0; i < block; ++i) {
		const std::uint32_t rev = f2::bit_reverse(i, n);
		for (std::uint32_t j = 0; j < block; ++j)
			if ((j & ~rev) == 0) g.set(i, j, true);
	}
	return g;
}

// c = u * G_N in O(N log N): bit-reversal permute, then the F_N butterfly
inline std::vector<std::uint8_t> polar_transform(std::vector<std::uint8_t> u) {
	const std::size_t block = u.size();
	if (block == 0 || (block & (block - 1)) != 0 || block > (std::size_t(1) << 20))
		throw std::invalid_argument("polar_transform: length must be 2^n, n <= 20");
	int n = 0;
	while ((std::size_t(1) << n) < block) ++n;
	for (std::uint32_t i = 0; i < block; ++i) {
		const std::uint32_t r = f2::bit_reverse(i, n);
		if (r > i) std::swap(u[i], u[r]);
	}
	for (std::size_t h = 1; h < block; h *= 2)
		for (std::size_t i = 0; i < block; i += 2 * h)
			for (std::size_t j = i; j < i + h; ++j) u[j] ^= u[j + h];
	return u;
}

inline std::vector<std::uint8_t> encode(const PolarCode& code,
                                        const std::vector<std::uint8_t>& info_bits) {
	if (info_bits.size() != static_cast<std::size_t>(code.dimension()))
		throw std::invalid_argument("encode: info length mismatch");
	std::vector<std::uint8_t> u(code.block_length());
	std::size_t next = 0;
	for (std::size_t i = 0; i < u.size(); ++i)
		u[i] = code.u_slots[i] < 0 ? (info_bits[next++] & 1) : std::uint8_t(code.u_slots[i]);
	return polar_transform(std::move(u));
}

struct LlrWord {
	std::vector<double> values;  // positive favors bit 0; +/-inf allowed
};

// exact check-node combination 2 atanh(tanh(a/2) tanh(b/2)), stabilized
inline double boxplus(double a, double b) {
	if (std::isinf(a)) return a > 0 ? b : -b;
	if (std::isinf(b)) return b > 0 ? a : -a;
	const double sum = std::abs(a + b);
	const double diff = std::abs(a - b);
	double v = std::min(std::abs(a), std::abs(b));
	if ((a < 0.0) != (b < 0.0)) v = -v;
	return v + std::log1p(std::exp(-sum)) - std::log1p(std::exp(-diff));
}

// variable-node step; conflicting infinities cancel to an erasure (LLR 0)
inline double g_step(double a, double b, std::uint8_t u_hat) {
	const double s = u_hat ? -a : a;
	if (std::isinf(s) && std::isinf(b) && (s > 0) != (b > 0)) return 0.0;
	return b + s;
}

struct ScResult {
	std::vector<std::uint8_t> info_bits;
	std::vector<std::uint8_t> u_hat;
};

namespace detail {

struct ScScratch {
	// per-depth buffers; llr[d] and bits[d] hold N / 2^d entries
	std::vector<std::vector<double>> llr;
	std::vector<std::vector<std::uint8_t>> bits;
};

// Decodes u indices [base, base + len) from `llrs`, appending decisions to
// `res` and writing the re-encoded sub-codeword into `out`.
inline void sc_recurse(const PolarCode& code, const double* llrs, std::size_t len, int depth,
                       std::size_t base, ScScratch& scratch, std::uint8_t* out, ScResult& res) {
	if (len == 1) {
		std::uint8_t decision;
		if (code.u_slots[base] >= 0) {
			decision = static_cast<std::uint8_t>(code.u_slots[base]);
		} else {
			decision = llrs[0] < 0.0 ? 1 : 0;  // ties resolve to 0
			res.info_bits.push_back(decision);
		}
		res.u_hat[base] = decision;
		out[0] = decision;
		return;
	}
	const std::size_t half = len / 2;
	double* child = scratch.llr[depth + 1].data();
	std::uint8_t* right_bits = scratch.bits[depth + 1].data();

	for (std::size_t k = 0; k < half; ++k) child[k] = boxplus(llrs[2 * k], llrs[2 * k + 1]);
	sc_recurse(code, child, half, depth + 1, base, scratch, out, res);  // left half into out[0..half)

	for (std::size_t k = 0; k < half; ++k)
		child[k] = g_step(llrs[2 * k], llrs[2 * k + 1], out[k]);
	sc_recurse(code, child, half, depth + 1, base + half, scratch, right_bits, res);

	// combine: c[2k] = l[k] ^ r[k], c[2k+1] = r[k]; descending k allows in-place l
	for (std::size_t k = half; k-- > 0;) {
		const std::uint8_t l = out[k], r = right_bits[k];
		out[2 * k] = l ^ r;
		out[2 * k + 1] = r;
	}
}

}  // namespace detail

inline ScResult sc_decode(const PolarCode& code, const LlrWord& llrs) {
	const std::size_t block = static_cast<std::size_t>(code.block_length());
	if (llrs.values.size() != block) throw std::invalid_argument("sc_decode: LLR length mismatch");
	detail::ScScratch scratch;
	scratch.llr.resize(code.n + 1);
	scratch.bits.resize(code.n + 1);
	for (int d = 0; d <= code.n; ++d) {
		scratch.llr[d].resize(block >> d);
		scratch.bits[d].resize(block >> d);
	}
	ScResult res;
	res.u_hat.assign(block, 0);
	res.info_bits.reserve(code.dimension());
	std::vector<std::uint8_t> codeword(block);
	detail::sc_recurse(code, llrs.values.data(), block, 0, 0, scratch, codeword.data(), res);
	return res;
}

// Picks the K most reliable bit channels: smallest error probabilities when the
// profile carries them (the default), otherwise largest capacities. Ties freeze
// the smaller index.
inline PolarCode select_frozen(const CapacityProfile& profile, int k) {
	const std::size_t block = profile.values.size();
	if (block == 0 || (block & (block - 1)) != 0)
		throw std::invalid_argument("select_frozen: profile length must be a power of two");
	if (k < 0 || static_cast<std::size_t>(k) > block)
		throw InfeasibleDesign("select_frozen: K out of range");
	int n = 0;
	while ((std::size_t(1) << n) < block) ++n;
	const bool use_pe = !profile.error_probs.empty();
	std::vector<std::uint32_t> order(block);
	std::iota(order.begin(), order.end(), 0);
	auto better = [&](std::uint32_t a, std::uint32_t b) {
		const double ra = use_pe ? profile.error_probs[a] : -profile.values[a];
		const double rb = use_pe ? profile.error_probs[b] : -profile.values[b];
		if (ra != rb) return ra < rb;
		return a > b;  // tie: keep the larger index, freeze the smaller
	};
	std::stable_sort(order.begin(), order.end(), better);
	std::vector<std::uint32_t> info(order.begin(), order.begin() + k);
	return make_polar_code(n, std::move(info));
}

// WER under SC given genie-aided first-error probabilities:
// 1 - prod_{i in A} (1 - p_e(i)), evaluated through log1p/expm1
inline double wer_sc(const std::vector<double>& error_probs,
                     const std::vector<std::uint32_t>& info_set) {
	double log_ok = 0.0;
	for (std::uint32_t i : info_set) {
		if (i >= error_probs.size()) throw std::out_of_range("wer_sc: index out of range");
		const double p = error_probs[i];
		if (p < 0.0 || p > 1.0) throw std::invalid_argument("wer_sc: probability out of range");
		if (p >= 1.0) return 1.0;
		log_ok += std::log1p(-p);
	}
	return -std::expm1(log_ok);
}

// --- code description file, canonical text form ---

inline std::string print_code(const PolarCode& code) {
	std::string out = "polar-code v1\n";
	out += "N " + std::to_string(code.block_length()) + "\n";
	out += "K " + std::to_string(code.dimension()) + "\n";
	out += "A";
	for (std::uint32_t i : code.info_set) out += " " + std::to_string(i);
	out += "\nF ";
	for (std::uint8_t b : code.frozen_values) out += b ? '1' : '0';
	out += "\n";
	return out;
}

inline PolarCode parse_code(const std::string& text) {
	std::istringstream in(text);
	std::string magic, version;
	in >> magic >> version;
	if (magic != "polar-code" || version != "v1")
		throw std::runtime_error("parse_code: bad header");
	std::string key;
	long n_val = -1, k_val = -1;
	std::vector<std::uint32_t> info;
	std::string frozen_str;
	while (in >> key) {
		if (key == "N") {
			in >> n_val;
		} else if (key == "K") {
			in >> k_val;
		} else if (key == "A") {
			for (long i = 0; i < k_val; ++i) {
				std::uint32_t v;
				if (!(in >> v)) throw std::runtime_error("parse_code: truncated info set");
				info.push_back(v);
			}
		} else if (key == "F") {
			in >> frozen_str;
		} else {
			throw std::runtime_error("parse_code: unknown key " + key);
		}
	}
	if (n_val <= 0 || (n_val & (n_val - 1)) != 0 || k_val < 0 || k_val > n_val)
		throw std::runtime_error("parse_code: bad N or K");
	if (static_cast<long>(info.size()) != k_val) throw std::runtime_error("parse_code: bad info set");
	int n = 0;
	while ((1l << n) < n_val) ++n;
	std::vector<std::uint8_t> frozen;
	if (frozen_str.empty() && n_val - k_val > 0)
		throw std::runtime_error("parse_code: missing frozen values");
	for (char c : frozen_str) {
		if (c != '0' && c != '1') throw std::runtime_error("parse_code: bad frozen bit");
		frozen.push_back(c == '1');
	}
	if (static_cast<long>(frozen.size()) != n_val - k_val)
		throw std::runtime_error("parse_code: frozen value count mismatch");
	return make_polar_code(n, std::move(info), std::move(frozen));
}

}  // namespace polarcm

#endif
