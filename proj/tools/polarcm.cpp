// Command-line front end: figure data generation, code design, simulation,
// and encode/decode plumbing.
//
// Exit codes: 0 success, 1 configuration error, 2 infeasible design.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polarcm.hpp"

namespace {

using namespace polarcm;

std::string read_file(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) throw ConfigError("cannot open " + path);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
	std::ofstream out(path, std::ios::binary);
	if (!out) throw ConfigError("cannot open " + path + " for writing");
	out << content;
}

std::vector<double> range_grid(double start, double stop, double step) {
	if (step <= 0.0) throw ConfigError("grid step must be positive");
	std::vector<double> grid;
	for (int i = 0;; ++i) {
		const double v = start + i * step;
		if (v > stop + 1e-12) break;
		grid.push_back(v);
	}
	if (grid.empty()) throw ConfigError("empty grid");
	return grid;
}

std::vector<std::uint8_t> parse_bitstring(const std::string& s) {
	std::vector<std::uint8_t> bits;
	for (char c : s) {
		if (c == '0' || c == '1')
			bits.push_back(c == '1');
		else if (c != '\n' && c != '\r' && c != ' ' && c != '\t')
			throw ConfigError(std::string("bad bit character: ") + c);
	}
	return bits;
}

std::string to_bitstring(const std::vector<std::uint8_t>& bits) {
	std::string out;
	out.reserve(bits.size() + 1);
	for (std::uint8_t b : bits) out += b ? '1' : '0';
	out += '\n';
	return out;
}

int run(int argc, char** argv) {
	CLI::App app{"polarcm: polar-coded modulation toolkit"};
	app.require_subcommand(1);

	// --- fig1 ---
	auto* fig1 = app.add_subcommand("fig1", "BEC bit-channel variance curves");
	std::vector<int> fig1_n{1, 2, 3, 8, 12, 20};
	double eps_start = 0.05, eps_stop = 0.95, eps_step = 0.05;
	std::string fig1_out = "fig1.csv";
	fig1->add_option("--n-list", fig1_n, "block length exponents")->delimiter(',');
	fig1->add_option("--eps-start", eps_start, "first erasure probability");
	fig1->add_option("--eps-stop", eps_stop, "last erasure probability");
	fig1->add_option("--eps-step", eps_step, "erasure probability step");
	fig1->add_option("--out", fig1_out, "output CSV path");

	// --- fig2 ---
	auto* fig2 = app.add_subcommand("fig2", "ASK bit-level variance vs capacity");
	std::vector<int> fig2_m{2, 4, 8};
	std::vector<std::string> fig2_lab{"SP", "GRAY"};
	double snr_start = -14.0, snr_stop = 40.0, snr_step = 2.0;
	std::uint64_t fig2_samples = 200000, fig2_seed = 1;
	std::string fig2_out = "fig2.csv";
	fig2->add_option("--m-list", fig2_m, "bits per symbol")->delimiter(',');
	fig2->add_option("--labelings", fig2_lab, "SP and/or GRAY")->delimiter(',');
	fig2->add_option("--snr-start", snr_start, "first Es/N0 in dB");
	fig2->add_option("--snr-stop", snr_stop, "last Es/N0 in dB");
	fig2->add_option("--snr-step", snr_step, "Es/N0 step in dB");
	fig2->add_option("--samples", fig2_samples, "Monte-Carlo samples per point");
	fig2->add_option("--seed", fig2_seed, "generator seed");
	fig2->add_option("--out", fig2_out, "output CSV path");

	// --- fig3 ---
	auto* fig3 = app.add_subcommand("fig3", "16-ASK rate vs power efficiency by DE");
	std::vector<int> fig3_mn{512, 2048, 8192, 32768};
	std::vector<std::string> fig3_lab{"SP", "GRAY"};
	double target_wer = 1e-5, rate_start = 0.5, rate_stop = 3.5, rate_step = 0.25;
	std::string fig3_out = "fig3.csv";
	fig3->add_option("--mn-list", fig3_mn, "overall block lengths m*N")->delimiter(',');
	fig3->add_option("--labelings", fig3_lab, "SP and/or GRAY")->delimiter(',');
	fig3->add_option("--target-wer", target_wer, "word error rate target");
	fig3->add_option("--rate-start", rate_start, "first rate in bits/symbol");
	fig3->add_option("--rate-stop", rate_stop, "last rate in bits/symbol");
	fig3->add_option("--rate-step", rate_step, "rate step");
	fig3->add_option("--out", fig3_out, "output CSV path");

	// --- design ---
	auto* design_cmd = app.add_subcommand("design", "construct a code for one operating point");
	std::string design_scheme = "ml-polar", design_lab = "SP", design_out = "code.txt";
	int design_m = 4, design_n = 7, design_k = -1;
	double design_rate = std::numeric_limits<double>::quiet_NaN();
	double design_ebno = std::numeric_limits<double>::quiet_NaN();
	double design_sigma = std::numeric_limits<double>::quiet_NaN();
	double design_eps = std::numeric_limits<double>::quiet_NaN();
	design_cmd->add_option("--scheme", design_scheme, "bec-polar | bpsk-polar | ml-polar");
	design_cmd->add_option("--m", design_m, "bits per symbol (ml-polar)");
	design_cmd->add_option("--labeling", design_lab, "SP | GRAY");
	design_cmd->add_option("--n", design_n, "component length exponent");
	design_cmd->add_option("--k", design_k, "information bits");
	design_cmd->add_option("--rate", design_rate, "bits per symbol (alternative to --k)");
	design_cmd->add_option("--ebno-db", design_ebno, "design Eb/N0 in dB");
	design_cmd->add_option("--sigma", design_sigma, "design noise standard deviation");
	design_cmd->add_option("--epsilon", design_eps, "design erasure probability (bec-polar)");
	design_cmd->add_option("--out", design_out, "output file");

	// --- simulate ---
	auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo WER/BER simulation");
	std::string sim_config, sim_out = "sim.csv";
	std::vector<std::string> sim_sets;
	sim_cmd->add_option("--config", sim_config, "key=value config file")->required();
	sim_cmd->add_option("--set", sim_sets, "override, e.g. --set seed=7");
	sim_cmd->add_option("--out", sim_out, "output CSV path");

	// --- encode / decode ---
	auto* enc_cmd = app.add_subcommand("encode", "encode info bits with a polar code file");
	std::string enc_code, enc_info, enc_out = "codeword.txt";
	enc_cmd->add_option("--code", enc_code, "code description file")->required();
	enc_cmd->add_option("--info", enc_info, "file with a 0/1 info bit string")->required();
	enc_cmd->add_option("--out", enc_out, "output file");

	auto* dec_cmd = app.add_subcommand("decode", "SC-decode channel LLRs with a polar code file");
	std::string dec_code, dec_llrs, dec_out = "decoded.txt";
	dec_cmd->add_option("--code", dec_code, "code description file")->required();
	dec_cmd->add_option("--llrs", dec_llrs, "file with one LLR per line (inf allowed)")->required();
	dec_cmd->add_option("--out", dec_out, "output file");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e);
		return code == 0 ? 0 : 1;
	}

	if (fig1->parsed()) {
		const auto rows = fig1_data(fig1_n, range_grid(eps_start, eps_stop, eps_step));
		std::ofstream out(fig1_out, std::ios::binary);
		if (!out) throw ConfigError("cannot open " + fig1_out);
		std::string n_list;
		for (int n : fig1_n) n_list += (n_list.empty() ? "" : ",") + std::to_string(n);
		write_fig_csv(out, 0, {{"figure", "fig1"}, {"channel", "bec"}, {"n_list", n_list}},
		              rows);
	} else if (fig2->parsed()) {
		const auto rows = fig2_data(fig2_m, fig2_lab, range_grid(snr_start, snr_stop, snr_step),
		                            fig2_samples, fig2_seed);
		std::ofstream out(fig2_out, std::ios::binary);
		if (!out) throw ConfigError("cannot open " + fig2_out);
		write_fig_csv(out, fig2_seed,
		              {{"figure", "fig2"},
		               {"channel", "awgn"},
		               {"samples", std::to_string(fig2_samples)},
		               {"quadrature", "gauss-hermite-128"},
		               {"x_axis", "per-bit capacity C_cm/m (quadrature)"}},
		              rows);
	} else if (fig3->parsed()) {
		const auto rows = fig3_data(fig3_mn, fig3_lab, target_wer,
		                            range_grid(rate_start, rate_stop, rate_step));
		std::ofstream out(fig3_out, std::ios::binary);
		if (!out) throw ConfigError("cannot open " + fig3_out);
		write_fig_csv(out, 0,
		              {{"figure", "fig3"},
		               {"channel", "awgn-16ask"},
		               {"target_wer", format_double(target_wer)},
		               {"method", "density-evolution-gaussian-approximation"},
		               {"quadrature", "gauss-hermite-128"},
		               {"bisection_tolerance_db", "0.01"}},
		              rows);
	} else if (design_cmd->parsed()) {
		const Scheme scheme = parse_scheme(design_scheme);
		const int block = 1 << design_n;
		int k = design_k;
		if (k < 0) {
			if (std::isnan(design_rate)) throw ConfigError("design: need --k or --rate");
			k = static_cast<int>(std::lround(design_rate * block));
		}
		if (scheme == Scheme::BecPolar) {
			if (std::isnan(design_eps)) throw ConfigError("design: bec-polar needs --epsilon");
			const PolarCode code =
				select_frozen(profile_from_bec(bec_polarize(design_eps, design_n)), k);
			write_file(design_out, print_code(code));
		} else if (scheme == Scheme::BpskPolar) {
			double sigma = design_sigma;
			if (std::isnan(sigma)) {
				if (std::isnan(design_ebno)) throw ConfigError("design: need --sigma or --ebno-db");
				sigma = ebno_to_sigma(design_ebno, double(k) / block);
			}
			const PolarCode code = select_frozen(
				profile_from_ga(ga_polarize({2.0 / (sigma * sigma)}, design_n)), k);
			write_file(design_out, print_code(code));
		} else {
			double sigma = design_sigma;
			if (std::isnan(sigma)) {
				if (std::isnan(design_ebno)) throw ConfigError("design: need --sigma or --ebno-db");
				sigma = ebno_to_sigma(design_ebno, double(k) / block);
			}
			const Constellation cons = ask_constellation(design_m);
			const Labeling lab = design_lab == "GRAY" ? gray_labeling(design_m)
			                                          : sp_labeling(design_m);
			const MlDesign d = design(cons, lab, design_n, k, sigma);
			write_file(design_out, print_design(d));
		}
	} else if (sim_cmd->parsed()) {
		const SimConfig cfg = parse_sim_config(read_file(sim_config), sim_sets);
		const auto records = run_simulation(cfg);
		std::ofstream out(sim_out, std::ios::binary);
		if (!out) throw ConfigError("cannot open " + sim_out);
		write_sim_csv(out, cfg, records);
	} else if (enc_cmd->parsed()) {
		const PolarCode code = parse_code(read_file(enc_code));
		const std::vector<std::uint8_t> info = parse_bitstring(read_file(enc_info));
		write_file(enc_out, to_bitstring(encode(code, info)));
	} else if (dec_cmd->parsed()) {
		const PolarCode code = parse_code(read_file(dec_code));
		LlrWord llrs;
		std::istringstream in(read_file(dec_llrs));
		std::string token;
		while (in >> token) {
			if (token == "inf" || token == "+inf")
				llrs.values.push_back(std::numeric_limits<double>::infinity());
			else if (token == "-inf")
				llrs.values.push_back(-std::numeric_limits<double>::infinity());
			else
				llrs.values.push_back(std::stod(token));
		}
		const ScResult res = sc_decode(code, llrs);
		write_file(dec_out, to_bitstring(res.info_bits));
	}
	return 0;
}

}  // namespace

int main(int argc, char** argv) {
	try {
		return run(argc, argv);
	} catch (const polarcm::InfeasibleDesign& e) {
		std::cerr << "infeasible design: " << e.what() << "\n";
		return 2;
	} catch (const polarcm::ConfigError& e) {
		std::cerr << "config error: " << e.what() << "\n";
		return 1;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 1;
	}
}
