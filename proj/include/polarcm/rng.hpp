// Counter-based random generator with explicit 64-bit seed and stream index.
#ifndef POLARCM_RNG_HPP
#define POLARCM_RNG_HPP

#include <cstdint>
#include <cmath>

namespace polarcm {

// SplitMix64: every output is a strong 64-bit hash of an advancing counter,
// so independent streams are cheap (seed + stream index) and a generator can
// be split per work block without shared state. Same seed, stream and call
// sequence give bit-identical output.
class SplitMix64 {
public:
	explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
		: key_(mix(seed + kGolden) ^ mix(stream * kGolden + 0xD1B54A32D192ED03ULL)),
		  state_(key_) {}

	std::uint64_t next_u64() {
		state_ += kGolden;
		return mix(state_);
	}

	// uniform on [0, 1), 53 significant bits
	double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

	int next_bit() { return static_cast<int>(next_u64() >> 63); }

	// standard normal via Box-Muller; consumes two words per pair of deviates
	double next_gaussian() {
		if (have_spare_) {
			have_spare_ = false;
			return spare_;
		}
		double u1 = 1.0 - next_double();  // (0, 1], keeps log() finite
		double u2 = next_double();
		double r = std::sqrt(-2.0 * std::log(u1));
		double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
		spare_ = r * std::sin(a);
		have_spare_ = true;
		return r * std::cos(a);
	}

	// derived generator for block `index`; independent of this one's position
	SplitMix64 split(std::uint64_t index) const {
		SplitMix64 g(0);
		g.key_ = mix(key_ ^ mix(index + 0xD1B54A32D192ED03ULL));
		g.state_ = g.key_;
		g.have_spare_ = false;
		return g;
	}

private:
	static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

	// splitmix64 finalizer
	static std::uint64_t mix(std::uint64_t z) {
		z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
		z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
		return z ^ (z >> 31);
	}

	std::uint64_t key_;
	std::uint64_t state_;
	double spare_ = 0.0;
	bool have_spare_ = false;
};

}  // namespace polarcm

#endif
