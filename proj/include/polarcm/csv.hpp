// CSV output with a reproducibility metadata header.
#ifndef POLARCM_CSV_HPP
#define POLARCM_CSV_HPP

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace polarcm {

inline constexpr const char* kToolkitVersion = "0.1.0";

inline std::string format_double(double v) {
	char buf[32];
	auto res = std::to_chars(buf, buf + sizeof(buf), v);
	return std::string(buf, res.ptr);
}

inline std::uint64_t fnv1a64(const std::string& data) {
	std::uint64_t h = 0xcbf29ce484222325ULL;
	for (unsigned char c : data) {
		h ^= c;
		h *= 0x100000001b3ULL;
	}
	return h;
}

inline std::string hex64(std::uint64_t v) {
	static const char* digits = "0123456789abcdef";
	std::string out(16, '0');
	for (int i = 15; i >= 0; --i) {
		out[i] = digits[v & 0xf];
		v >>= 4;
	}
	return out;
}

// '#'-prefixed key/value lines: toolkit version, a hash of the producer's own
// parameters, the seed, and the Eb/N0 normalization in force, then any
// producer-specific keys. Data rows follow the column header line.
inline void write_csv_metadata(std::ostream& os, std::uint64_t seed,
                               const std::vector<std::pair<std::string, std::string>>& extra) {
	std::string canon;
	for (const auto& [k, v] : extra) canon += k + "=" + v + "\n";
	os << "# polarcm " << kToolkitVersion << "\n";
	os << "# config_hash " << hex64(fnv1a64(canon)) << "\n";
	os << "# seed " << seed << "\n";
	os << "# ebno_convention Es=R*Eb,N0=2*sigma^2,unit-symbol-energy\n";
	for (const auto& [k, v] : extra) os << "# " << k << " " << v << "\n";
}

}  // namespace polarcm

#endif
