// Channel models: AWGN over real ASK constellations and the binary erasure channel.
#ifndef POLARCM_CHANNELS_HPP
#define POLARCM_CHANNELS_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polarcm/rng.hpp"

namespace polarcm {

// 2^m equally spaced real points, ascending, normalized to unit average energy
struct Constellation {
	int m = 0;
	std::vector<double> points;

	int size() const { return static_cast<int>(points.size()); }
};

inline Constellation ask_constellation(int m) {
	if (m < 1 || m > 8) throw std::invalid_argument("ask_constellation: need 1 <= m <= 8");
	const int count = 1 << m;
	// mean square of {±1, ±3, ..., ±(2^m - 1)} is (4^m - 1)/3
	const double norm = std::sqrt((std::pow(4.0, m) - 1.0) / 3.0);
	Constellation c;
	c.m = m;
	c.points.resize(count);
	for (int p = 0; p < count; ++p) c.points[p] = (2.0 * p - (count - 1)) / norm;
	return c;
}

struct AwgnChannel {
	double sigma;  // noise standard deviation per real dimension
};

struct BecChannel {
	double epsilon;  // erasure probability
};

// Eb/N0 convention for unit-energy symbols of one real dimension:
// Es = rate * Eb = 1 and N0 = 2 sigma^2, hence sigma^2 = 1/(2 rate Eb/N0).
inline double ebno_to_sigma(double ebno_db, double rate_bits_per_symbol) {
	if (!(rate_bits_per_symbol > 0.0))
		throw std::invalid_argument("ebno_to_sigma: rate must be positive");
	const double ebno = std::pow(10.0, ebno_db / 10.0);
	return std::sqrt(1.0 / (2.0 * rate_bits_per_symbol * ebno));
}

inline double awgn_transmit(double x, const AwgnChannel& ch, SplitMix64& rng) {
	return x + ch.sigma * rng.next_gaussian();
}

// nullopt marks an erasure
using BitOrErasure = std::optional<std::uint8_t>;

inline BitOrErasure bec_transmit(std::uint8_t bit, const BecChannel& ch, SplitMix64& rng) {
	if (rng.next_double() < ch.epsilon) return std::nullopt;
	return BitOrErasure(bit & 1);
}

}  // namespace polarcm

#endif
