// Dense matrices and vectors over GF(2), bit-packed by rows.
#ifndef POLARCM_F2_HPP
#define POLARCM_F2_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace polarcm::f2 {

// reverse the low `bits` bits of x
inline std::uint32_t bit_reverse(std::uint32_t x, int bits) {
	std::uint32_t r = 0;
	for (int i = 0; i < bits; ++i) {
		r = (r << 1) | ((x >> i) & 1u);
	}
	return r;
}

class Matrix {
public:
	Matrix() = default;
	Matrix(std::size_t rows, std::size_t cols)
		: rows_(rows), cols_(cols), stride_((cols + 63) / 64), words_(rows * stride_, 0) {}

	static Matrix identity(std::size_t n) {
		Matrix m(n, n);
		for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
		return m;
	}

	// permutation matrix P with P[r][dest[r]] = 1, i.e. (b*P)[dest[r]] = b[r]
	static Matrix row_permutation(const std::vector<std::size_t>& dest) {
		Matrix m(dest.size(), dest.size());
		std::vector<bool> seen(dest.size(), false);
		for (std::size_t r = 0; r < dest.size(); ++r) {
			if (dest[r] >= dest.size() || seen[dest[r]])
				throw std::invalid_argument("row_permutation: not a permutation");
			seen[dest[r]] = true;
			m.set(r, dest[r], true);
		}
		return m;
	}

	std::size_t rows() const { return rows_; }
	std::size_t cols() const { return cols_; }

	bool get(std::size_t r, std::size_t c) const {
		return (words_[r * stride_ + c / 64] >> (c % 64)) & 1u;
	}
	void set(std::size_t r, std::size_t c, bool v) {
		std::uint64_t& w = words_[r * stride_ + c / 64];
		std::uint64_t bit = std::uint64_t(1) << (c % 64);
		w = v ? (w | bit) : (w & ~bit);
	}

	bool operator==(const Matrix& o) const {
		return rows_ == o.rows_ && cols_ == o.cols_ && words_ == o.words_;
	}

	Matrix operator*(const Matrix& o) const {
		if (cols_ != o.rows_) throw std::invalid_argument("f2: size mismatch in product");
		Matrix out(rows_, o.cols_);
		for (std::size_t r = 0; r < rows_; ++r) {
			for (std::size_t k = 0; k < cols_; ++k) {
				if (!get(r, k)) continue;
				for (std::size_t w = 0; w < o.stride_; ++w)
					out.words_[r * out.stride_ + w] ^= o.words_[k * o.stride_ + w];
			}
		}
		return out;
	}

	Matrix kronecker(const Matrix& o) const {
		Matrix out(rows_ * o.rows_, cols_ * o.cols_);
		for (std::size_t r = 0; r < rows_; ++r)
			for (std::size_t c = 0; c < cols_; ++c) {
				if (!get(r, c)) continue;
				for (std::size_t r2 = 0; r2 < o.rows_; ++r2)
					for (std::size_t c2 = 0; c2 < o.cols_; ++c2)
						if (o.get(r2, c2)) out.set(r * o.rows_ + r2, c * o.cols_ + c2, true);
			}
		return out;
	}

	// Gaussian elimination on a copy
	bool invertible() const {
		if (rows_ != cols_) return false;
		Matrix a = *this;
		std::size_t rank = 0;
		for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
			std::size_t pivot = rank;
			while (pivot < rows_ && !a.get(pivot, c)) ++pivot;
			if (pivot == rows_) return false;
			a.swap_rows(pivot, rank);
			for (std::size_t r = 0; r < rows_; ++r)
				if (r != rank && a.get(r, c)) a.xor_row(r, rank);
			++rank;
		}
		return rank == rows_;
	}

	// row vector (bits) times matrix
	std::vector<std::uint8_t> mul_left(const std::vector<std::uint8_t>& v) const {
		if (v.size() != rows_) throw std::invalid_argument("f2: vector length mismatch");
		std::vector<std::uint64_t> acc(stride_, 0);
		for (std::size_t r = 0; r < rows_; ++r)
			if (v[r] & 1)
				for (std::size_t w = 0; w < stride_; ++w) acc[w] ^= words_[r * stride_ + w];
		std::vector<std::uint8_t> out(cols_);
		for (std::size_t c = 0; c < cols_; ++c) out[c] = (acc[c / 64] >> (c % 64)) & 1u;
		return out;
	}

private:
	void swap_rows(std::size_t a, std::size_t b) {
		if (a == b) return;
		for (std::size_t w = 0; w < stride_; ++w)
			std::swap(words_[a * stride_ + w], words_[b * stride_ + w]);
	}
	void xor_row(std::size_t dst, std::size_t src) {
		for (std::size_t w = 0; w < stride_; ++w)
			words_[dst * stride_ + w] ^= words_[src * stride_ + w];
	}

	std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
	std::vector<std::uint64_t> words_;
};

}  // namespace polarcm::f2

#endif
