// Sequential binary partitions: labelings, capacity profiles and product concatenation.
//
// An order-k SBP turns one 2^k-ary channel use into k binary channels, each
// conditioned on the bits decoded before it. Bit b_0 is decoded first. Labels
// are packed into integers with b_i as bit i.
#ifndef POLARCM_SBP_HPP
#define POLARCM_SBP_HPP

#include <charconv>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polarcm/f2.hpp"

namespace polarcm {

// bijection between binary m-tuples and point indices 0..2^m-1
struct Labeling {
	int m = 0;
	std::string name;
	std::vector<std::uint32_t> label_to_point;  // indexed by packed label
	std::vector<std::uint32_t> point_to_label;  // inverse
};

inline Labeling custom_labeling(int m, std::vector<std::uint32_t> label_to_point,
                                std::string name) {
	if (m < 1 || m > 8) throw std::invalid_argument("labeling: need 1 <= m <= 8");
	const std::size_t count = std::size_t(1) << m;
	if (label_to_point.size() != count)
		throw std::invalid_argument("labeling: table size must be 2^m");
	Labeling lab;
	lab.m = m;
	lab.name = std::move(name);
	lab.point_to_label.assign(count, 0);
	std::vector<bool> seen(count, false);
	for (std::size_t g = 0; g < count; ++g) {
		std::uint32_t p = label_to_point[g];
		if (p >= count || seen[p]) throw std::invalid_argument("labeling: not a bijection");
		seen[p] = true;
		lab.point_to_label[p] = static_cast<std::uint32_t>(g);
	}
	lab.label_to_point = std::move(label_to_point);
	return lab;
}

// Natural binary, LSB decoded first: point index p = sum b_i 2^i. On the
// one-dimensional ASK grid this is exactly Ungerboeck set partitioning:
// fixing the first-decoded bits doubles the intra-subset point spacing per level.
inline Labeling sp_labeling(int m) {
	if (m < 1 || m > 8) throw std::invalid_argument("sp_labeling: need 1 <= m <= 8");
	std::vector<std::uint32_t> table(std::size_t(1) << m);
	for (std::uint32_t g = 0; g < table.size(); ++g) table[g] = g;
	return custom_labeling(m, std::move(table), "SP");
}

// Binary-reflected Gray code: point p carries label g = p ^ (p >> 1).
inline Labeling gray_labeling(int m) {
	if (m < 1 || m > 8) throw std::invalid_argument("gray_labeling: need 1 <= m <= 8");
	const std::uint32_t count = 1u << m;
	std::vector<std::uint32_t> table(count);
	for (std::uint32_t p = 0; p < count; ++p) table[p ^ (p >> 1)] = p;
	return custom_labeling(m, std::move(table), "GRAY");
}

// Per-bit-channel capacities in decode order, with optional companion lists
// shared by the exact BEC pipeline (error probabilities) and the Gaussian
// approximation pipeline (LLR means).
struct CapacityProfile {
	std::vector<double> values;       // capacities in [0,1]
	std::vector<double> error_probs;  // optional, same length when present
	std::vector<double> llr_means;    // optional, same length when present

	std::size_t size() const { return values.size(); }
};

inline double profile_mean(const CapacityProfile& p) {
	if (p.values.empty()) throw std::invalid_argument("profile_mean: empty profile");
	double acc = 0.0;
	for (double v : p.values) acc += v;
	return acc / static_cast<double>(p.values.size());
}

// population variance (divide by k)
inline double profile_variance(const CapacityProfile& p) {
	if (p.values.empty()) throw std::invalid_argument("profile_variance: empty profile");
	const double mean = profile_mean(p);
	double acc = 0.0;
	for (double v : p.values) acc += (v - mean) * (v - mean);
	double var = acc / static_cast<double>(p.values.size());
	return var < 0.0 ? 0.0 : var;
}

// capacity variance of a product SBP: V_{outer x inner} = V_outer + mean of the
// inner variances taken around each outer bit channel
inline double compose_variance(const CapacityProfile& outer,
                               const std::vector<double>& inner_variances) {
	if (inner_variances.size() != outer.values.size())
		throw std::invalid_argument("compose_variance: length mismatch");
	double acc = 0.0;
	for (double v : inner_variances) acc += v;
	return profile_variance(outer) + acc / static_cast<double>(inner_variances.size());
}

// bit-channel index of component (i, j) in the product of a k1-SBP with a k2-SBP
inline std::size_t product_bit_index(std::size_t i, std::size_t j, std::size_t k1,
                                     std::size_t k2) {
	if (i >= k1 || j >= k2) throw std::out_of_range("product_bit_index: index out of range");
	return k2 * i + j;
}

// position that the permutation P_{k1,k2} assigns to component k2*i + j
inline std::size_t product_position(std::size_t i, std::size_t j, std::size_t k1,
                                    std::size_t k2) {
	if (i >= k1 || j >= k2) throw std::out_of_range("product_position: index out of range");
	return i + k1 * j;
}

inline std::vector<std::size_t> product_permutation(std::size_t k1, std::size_t k2) {
	std::vector<std::size_t> dest(k1 * k2);
	for (std::size_t i = 0; i < k1; ++i)
		for (std::size_t j = 0; j < k2; ++j) dest[k2 * i + j] = i + k1 * j;
	return dest;
}

// labeling rule of a linear SBP: b -> b * A with A invertible over GF(2)
struct LinearSbp {
	int k = 0;
	f2::Matrix matrix;
};

inline LinearSbp make_linear_sbp(f2::Matrix a) {
	if (a.rows() != a.cols() || !a.invertible())
		throw std::invalid_argument("linear SBP matrix must be square and invertible");
	LinearSbp s;
	s.k = static_cast<int>(a.rows());
	s.matrix = std::move(a);
	return s;
}

// labeling matrix of the product of two linear SBPs: P_{k1,k2} (A_inner ⊗ A_outer)
inline f2::Matrix linear_product_matrix(const f2::Matrix& a_outer, const f2::Matrix& a_inner) {
	if (a_outer.rows() != a_outer.cols() || !a_outer.invertible())
		throw std::invalid_argument("linear_product_matrix: outer matrix singular");
	if (a_inner.rows() != a_inner.cols() || !a_inner.invertible())
		throw std::invalid_argument("linear_product_matrix: inner matrix singular");
	const std::size_t k1 = a_outer.rows(), k2 = a_inner.rows();
	f2::Matrix p = f2::Matrix::row_permutation(product_permutation(k1, k2));
	return p * a_inner.kronecker(a_outer);
}

namespace detail {
inline void append_double(std::string& out, double v) {
	char buf[32];
	auto res = std::to_chars(buf, buf + sizeof(buf), v);
	out.append(buf, res.ptr);
}
}  // namespace detail

// CSV rows: index, capacity[, p_e][, llr_mean]
inline void write_profile_csv(std::ostream& os, const CapacityProfile& p) {
	for (std::size_t i = 0; i < p.values.size(); ++i) {
		std::string line = std::to_string(i);
		line += ',';
		detail::append_double(line, p.values[i]);
		if (!p.error_probs.empty()) {
			line += ',';
			detail::append_double(line, p.error_probs[i]);
		}
		if (!p.llr_means.empty()) {
			line += ',';
			detail::append_double(line, p.llr_means[i]);
		}
		line += '\n';
		os << line;
	}
}

}  // namespace polarcm

#endif
