// Monte-Carlo error-rate simulation: deterministic for a given seed and
// independent of the worker count.
#ifndef POLARCM_SIM_HPP
#define POLARCM_SIM_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "polarcm/analysis.hpp"
#include "polarcm/channels.hpp"
#include "polarcm/csv.hpp"
#include "polarcm/mlc.hpp"
#include "polarcm/polar.hpp"
#include "polarcm/rng.hpp"

namespace polarcm {

struct ConfigError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

enum class Scheme { BecPolar, BpskPolar, MlPolar };

inline Scheme parse_scheme(const std::string& s) {
	if (s == "bec-polar") return Scheme::BecPolar;
	if (s == "bpsk-polar") return Scheme::BpskPolar;
	if (s == "ml-polar") return Scheme::MlPolar;
	throw ConfigError("unknown scheme: " + s);
}

inline const char* scheme_name(Scheme s) {
	switch (s) {
		case Scheme::BecPolar: return "bec-polar";
		case Scheme::BpskPolar: return "bpsk-polar";
		default: return "ml-polar";
	}
}

struct SimConfig {
	Scheme scheme = Scheme::BpskPolar;
	int m = 1;                    // bits per symbol (ml-polar)
	std::string labeling = "SP";  // SP | GRAY
	int n = 3;                    // component length N = 2^n
	int k = -1;                   // info bits; -1 derives K from `rate`
	double rate = std::numeric_limits<double>::quiet_NaN();  // bits per symbol
	std::vector<double> grid;     // Eb/N0 in dB, or erasure probabilities for bec-polar
	std::uint64_t min_word_errors = 100;
	std::uint64_t max_words = 1000000;
	std::uint64_t seed = 1;
	int workers = 1;
	std::uint64_t words_per_block = 256;

	int resolved_k() const {
		if (k >= 0) return k;
		if (std::isnan(rate)) throw ConfigError("config: need k or rate");
		return static_cast<int>(std::lround(rate * (1 << n)));
	}
};

namespace detail {
inline std::vector<double> parse_double_list(const std::string& s) {
	std::vector<double> out;
	std::string item;
	std::istringstream in(s);
	while (std::getline(in, item, ',')) {
		if (item.empty()) continue;
		std::size_t pos = 0;
		double v = std::stod(item, &pos);
		if (pos != item.size()) throw ConfigError("bad number: " + item);
		out.push_back(v);
	}
	return out;
}
}  // namespace detail

// flat key=value text, '#' comments; later entries and overrides win
inline SimConfig parse_sim_config(const std::string& text,
                                  const std::vector<std::string>& overrides = {}) {
	SimConfig cfg;
	bool have_grid = false;
	auto apply = [&](const std::string& line) {
		std::string trimmed;
		for (char c : line) {
			if (c == '#') break;
			trimmed += c;
		}
		while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t' ||
		                            trimmed.back() == '\r'))
			trimmed.pop_back();
		std::size_t start = trimmed.find_first_not_of(" \t");
		if (start == std::string::npos) return;
		trimmed = trimmed.substr(start);
		const std::size_t eq = trimmed.find('=');
		if (eq == std::string::npos) throw ConfigError("expected key=value: " + trimmed);
		const std::string key = trimmed.substr(0, eq);
		const std::string value = trimmed.substr(eq + 1);
		try {
			if (key == "scheme") cfg.scheme = parse_scheme(value);
			else if (key == "m") cfg.m = std::stoi(value);
			else if (key == "labeling") cfg.labeling = value;
			else if (key == "n") cfg.n = std::stoi(value);
			else if (key == "k") cfg.k = std::stoi(value);
			else if (key == "rate") cfg.rate = std::stod(value);
			else if (key == "ebno_db" || key == "epsilon") {
				cfg.grid = detail::parse_double_list(value);
				have_grid = true;
			}
			else if (key == "min_word_errors") cfg.min_word_errors = std::stoull(value);
			else if (key == "max_words") cfg.max_words = std::stoull(value);
			else if (key == "seed") cfg.seed = std::stoull(value);
			else if (key == "workers") cfg.workers = std::stoi(value);
			else if (key == "words_per_block") cfg.words_per_block = std::stoull(value);
			else throw ConfigError("unknown config key: " + key);
		} catch (const std::invalid_argument&) {
			throw ConfigError("bad value for " + key + ": " + value);
		} catch (const std::out_of_range&) {
			throw ConfigError("bad value for " + key + ": " + value);
		}
	};
	std::istringstream in(text);
	std::string line;
	while (std::getline(in, line)) apply(line);
	for (const std::string& ov : overrides) apply(ov);
	if (!have_grid || cfg.grid.empty()) throw ConfigError("config: empty grid");
	if (cfg.min_word_errors == 0 || cfg.max_words == 0)
		throw ConfigError("config: stop rule must be positive");
	if (cfg.workers < 1) throw ConfigError("config: workers must be >= 1");
	if (cfg.words_per_block == 0) throw ConfigError("config: words_per_block must be >= 1");
	if (cfg.labeling != "SP" && cfg.labeling != "GRAY")
		throw ConfigError("config: labeling must be SP or GRAY");
	return cfg;
}

struct SimRecord {
	double ebno_db = 0.0;  // erasure probability for bec-polar
	std::uint64_t words = 0;
	std::uint64_t word_errors = 0;
	std::uint64_t bit_errors = 0;
	double wer = 0.0;
	double ber = 0.0;
	double wall_time = 0.0;  // seconds; not part of the CSV (outputs stay reproducible)
};

namespace detail {

struct TrialStat {
	std::uint64_t word_errors = 0;
	std::uint64_t bit_errors = 0;
};

// Runs trials in fixed-size blocks. Block b draws its trials from generator
// streams split off the grid-point base, and the stop rule is evaluated on the
// cumulative counts of the contiguous block prefix, so the aggregate depends
// only on (seed, grid point), never on the worker count.
inline SimRecord run_grid_point(double x, int k,
                                const std::function<TrialStat(SplitMix64&)>& trial,
                                const SimConfig& cfg, const SplitMix64& base) {
	const std::uint64_t block_words = cfg.words_per_block;
	const std::uint64_t blocks_total = (cfg.max_words + block_words - 1) / block_words;
	struct BlockStat {
		std::uint64_t words = 0, word_errors = 0, bit_errors = 0;
		bool done = false;
	};
	std::vector<BlockStat> stats(blocks_total);
	std::atomic<std::uint64_t> next_block{0};
	std::atomic<std::uint64_t> stop_limit{blocks_total};
	std::mutex mu;
	std::uint64_t prefix = 0, cum_words = 0, cum_word_errors = 0;

	auto worker = [&]() {
		for (;;) {
			const std::uint64_t b = next_block.fetch_add(1);
			if (b >= stop_limit.load()) break;
			BlockStat s;
			const std::uint64_t first = b * block_words;
			const std::uint64_t count = std::min(block_words, cfg.max_words - first);
			for (std::uint64_t t = 0; t < count; ++t) {
				SplitMix64 rng = base.split(first + t);
				TrialStat ts = trial(rng);
				s.words += 1;
				s.word_errors += ts.word_errors;
				s.bit_errors += ts.bit_errors;
			}
			s.done = true;
			std::lock_guard<std::mutex> lock(mu);
			stats[b] = s;
			while (prefix < stop_limit.load() && stats[prefix].done) {
				cum_words += stats[prefix].words;
				cum_word_errors += stats[prefix].word_errors;
				++prefix;
				if (cum_word_errors >= cfg.min_word_errors || cum_words >= cfg.max_words) {
					std::uint64_t expect = stop_limit.load();
					while (expect > prefix && !stop_limit.compare_exchange_weak(expect, prefix)) {
					}
					break;
				}
			}
		}
	};

	const auto start = std::chrono::steady_clock::now();
	std::vector<std::thread> pool;
	for (int w = 1; w < cfg.workers; ++w) pool.emplace_back(worker);
	worker();
	for (std::thread& t : pool) t.join();
	const auto stop = std::chrono::steady_clock::now();

	SimRecord rec;
	rec.ebno_db = x;
	const std::uint64_t used = stop_limit.load();
	for (std::uint64_t b = 0; b < used; ++b) {
		rec.words += stats[b].words;
		rec.word_errors += stats[b].word_errors;
		rec.bit_errors += stats[b].bit_errors;
	}
	rec.wer = rec.words ? double(rec.word_errors) / double(rec.words) : 0.0;
	rec.ber = (rec.words && k > 0) ? double(rec.bit_errors) / (double(rec.words) * k) : 0.0;
	rec.wall_time = std::chrono::duration<double>(stop - start).count();
	return rec;
}

}  // namespace detail

inline std::vector<SimRecord> run_simulation(const SimConfig& cfg) {
	std::vector<SimRecord> records;
	const int block = 1 << cfg.n;
	for (std::size_t gi = 0; gi < cfg.grid.size(); ++gi) {
		const double x = cfg.grid[gi];
		const SplitMix64 base(cfg.seed, gi);
		std::function<detail::TrialStat(SplitMix64&)> trial;
		int k = cfg.resolved_k();

		if (cfg.scheme == Scheme::BecPolar) {
			if (x < 0.0 || x > 1.0) throw ConfigError("bec-polar: epsilon must be in [0,1]");
			const PolarCode code = select_frozen(profile_from_bec(bec_polarize(x, cfg.n)), k);
			const BecChannel ch{x};
			const double inf = std::numeric_limits<double>::infinity();
			trial = [code, ch, block, inf](SplitMix64& rng) {
				std::vector<std::uint8_t> info(code.dimension());
				for (auto& b : info) b = static_cast<std::uint8_t>(rng.next_bit());
				const std::vector<std::uint8_t> cw = encode(code, info);
				LlrWord llrs;
				llrs.values.resize(block);
				for (int i = 0; i < block; ++i) {
					const BitOrErasure r = bec_transmit(cw[i], ch, rng);
					llrs.values[i] = !r.has_value() ? 0.0 : (*r ? -inf : inf);
				}
				const ScResult dec = sc_decode(code, llrs);
				detail::TrialStat s;
				for (std::size_t i = 0; i < info.size(); ++i)
					s.bit_errors += dec.info_bits[i] != info[i];
				s.word_errors = s.bit_errors ? 1 : 0;
				return s;
			};
		} else if (cfg.scheme == Scheme::BpskPolar) {
			const double rate = double(k) / block;
			const double sigma = ebno_to_sigma(x, rate);
			// BPSK LLR is exactly Gaussian-consistent with mean 2/sigma^2
			const PolarCode code =
				select_frozen(profile_from_ga(ga_polarize({2.0 / (sigma * sigma)}, cfg.n)), k);
			const AwgnChannel ch{sigma};
			trial = [code, ch, block](SplitMix64& rng) {
				std::vector<std::uint8_t> info(code.dimension());
				for (auto& b : info) b = static_cast<std::uint8_t>(rng.next_bit());
				const std::vector<std::uint8_t> cw = encode(code, info);
				LlrWord llrs;
				llrs.values.resize(block);
				const double scale = -2.0 / (ch.sigma * ch.sigma);  // bit 0 maps to -1
				for (int i = 0; i < block; ++i) {
					const double y = awgn_transmit(cw[i] ? 1.0 : -1.0, ch, rng);
					llrs.values[i] = scale * y;
				}
				const ScResult dec = sc_decode(code, llrs);
				detail::TrialStat s;
				for (std::size_t i = 0; i < info.size(); ++i)
					s.bit_errors += dec.info_bits[i] != info[i];
				s.word_errors = s.bit_errors ? 1 : 0;
				return s;
			};
		} else {
			const Constellation cons = ask_constellation(cfg.m);
			const Labeling lab = cfg.labeling == "GRAY" ? gray_labeling(cfg.m) : sp_labeling(cfg.m);
			const double rate = double(k) / block;
			const double sigma = ebno_to_sigma(x, rate);
			const MlDesign des = design(cons, lab, cfg.n, k, sigma);
			const MultilevelPolarCode code = des.code;
			const AwgnChannel ch{sigma};
			trial = [code, ch, block](SplitMix64& rng) {
				std::vector<std::uint8_t> info(code.dimension());
				for (auto& b : info) b = static_cast<std::uint8_t>(rng.next_bit());
				std::vector<double> sym = ml_encode(code, info);
				for (int t = 0; t < block; ++t) sym[t] = awgn_transmit(sym[t], ch, rng);
				const MsdResult dec = msd_decode(code, sym, ch.sigma);
				detail::TrialStat s;
				for (std::size_t i = 0; i < info.size(); ++i)
					s.bit_errors += dec.info_bits[i] != info[i];
				s.word_errors = s.bit_errors ? 1 : 0;
				return s;
			};
		}
		records.push_back(detail::run_grid_point(x, k, trial, cfg, base));
	}
	return records;
}

// wall_time stays out of the CSV so identical (config, seed) runs are byte-identical
inline void write_sim_csv(std::ostream& os, const SimConfig& cfg,
                          const std::vector<SimRecord>& records) {
	std::vector<std::pair<std::string, std::string>> meta;
	meta.emplace_back("scheme", scheme_name(cfg.scheme));
	meta.emplace_back("m", std::to_string(cfg.m));
	meta.emplace_back("labeling", cfg.labeling);
	meta.emplace_back("n", std::to_string(cfg.n));
	meta.emplace_back("k", std::to_string(cfg.resolved_k()));
	meta.emplace_back("min_word_errors", std::to_string(cfg.min_word_errors));
	meta.emplace_back("max_words", std::to_string(cfg.max_words));
	meta.emplace_back("words_per_block", std::to_string(cfg.words_per_block));
	write_csv_metadata(os, cfg.seed, meta);
	const char* xname = cfg.scheme == Scheme::BecPolar ? "epsilon" : "ebno_db";
	os << xname << ",words,word_errors,bit_errors,wer,ber\n";
	for (const SimRecord& r : records) {
		os << format_double(r.ebno_db) << ',' << r.words << ',' << r.word_errors << ','
		   << r.bit_errors << ',' << format_double(r.wer) << ',' << format_double(r.ber) << "\n";
	}
}

}  // namespace polarcm

#endif
