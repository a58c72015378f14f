#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "polarcm/figures.hpp"
#include "polarcm/sim.hpp"

using namespace polarcm;

namespace {

std::string sim_csv(const SimConfig& cfg) {
	std::ostringstream out;
	write_sim_csv(out, cfg, run_simulation(cfg));
	return out.str();
}

std::string strip_metadata(const std::string& csv) {
	std::istringstream in(csv);
	std::string line, out;
	while (std::getline(in, line)) {
		if (!line.empty() && line[0] == '#') continue;
		out += line;
		out += '\n';
	}
	return out;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("config parsing, overrides and errors", "[harness]") {
	const std::string text =
		"# comment\n"
		"scheme=bpsk-polar\n"
		"n=4\n"
		"k=8\n"
		"ebno_db=1,2,3\n"
		"seed=9\n";
	SimConfig cfg = parse_sim_config(text);
	REQUIRE(cfg.scheme == Scheme::BpskPolar);
	REQUIRE(cfg.n == 4);
	REQUIRE(cfg.resolved_k() == 8);
	REQUIRE(cfg.grid == std::vector<double>{1.0, 2.0, 3.0});
	REQUIRE(cfg.seed == 9);

	cfg = parse_sim_config(text, {"seed=11", "k=4"});
	REQUIRE(cfg.seed == 11);
	REQUIRE(cfg.resolved_k() == 4);

	REQUIRE_THROWS_AS(parse_sim_config("scheme=bpsk-polar\n"), ConfigError);  // no grid
	REQUIRE_THROWS_AS(parse_sim_config("bogus=1\nebno_db=1\n"), ConfigError);
	REQUIRE_THROWS_AS(parse_sim_config("scheme=warp\nebno_db=1\n"), ConfigError);
	REQUIRE_THROWS_AS(parse_sim_config("ebno_db=1\nlabeling=FOO\n"), ConfigError);
	REQUIRE_THROWS_AS(parse_sim_config("ebno_db=1\nmin_word_errors=0\n"), ConfigError);
	// rate can stand in for k
	cfg = parse_sim_config("scheme=bpsk-polar\nn=3\nrate=0.5\nebno_db=2\n");
	REQUIRE(cfg.resolved_k() == 4);
}

TEST_CASE("simulation is deterministic and worker count invariant", "[harness]") {
	SimConfig cfg = parse_sim_config(
		"scheme=bpsk-polar\nn=5\nk=16\nebno_db=1.0,2.0\nseed=1234\n"
		"min_word_errors=60\nmax_words=4000\nwords_per_block=64\n");
	const std::string once = sim_csv(cfg);
	const std::string twice = sim_csv(cfg);
	REQUIRE(once == twice);

	SimConfig threaded = cfg;
	threaded.workers = 3;
	REQUIRE(sim_csv(threaded) == once);

	SimConfig reseeded = cfg;
	reseeded.seed = 4321;
	REQUIRE(sim_csv(reseeded) != once);
}

TEST_CASE("noise-free grid point stops at max words with zero errors", "[harness]") {
	SimConfig cfg = parse_sim_config(
		"scheme=bpsk-polar\nn=3\nk=4\nebno_db=60\nseed=3\nmax_words=500\nwords_per_block=100\n");
	const auto records = run_simulation(cfg);
	REQUIRE(records.size() == 1);
	REQUIRE(records[0].word_errors == 0);
	REQUIRE(records[0].words == 500);
	REQUIRE(records[0].wer == 0.0);
}

TEST_CASE("uncoded 2-ask bit error rate matches the q function", "[harness]") {
	for (double ebno_db : {4.0, 6.0}) {
		SimConfig cfg;
		cfg.scheme = Scheme::BpskPolar;
		cfg.n = 0;
		cfg.k = 1;
		cfg.grid = {ebno_db};
		cfg.min_word_errors = 4000;
		cfg.max_words = 30000000;
		cfg.seed = 77;
		cfg.words_per_block = 100000;
		const auto records = run_simulation(cfg);
		const double theory = q_function(std::sqrt(2.0 * std::pow(10.0, ebno_db / 10.0)));
		REQUIRE(records[0].ber == Catch::Approx(theory).epsilon(0.05));
	}
}

TEST_CASE("bec polar simulation tracks the product formula ballpark", "[harness]") {
	const double eps = 0.35;
	const int n = 6;
	SimConfig cfg;
	cfg.scheme = Scheme::BecPolar;
	cfg.n = n;
	cfg.k = 24;
	cfg.grid = {eps};
	cfg.min_word_errors = 400;
	cfg.max_words = 400000;
	cfg.seed = 5;
	cfg.words_per_block = 1000;
	const auto records = run_simulation(cfg);
	const CapacityProfile profile = profile_from_bec(bec_polarize(eps, n));
	const PolarCode code = select_frozen(profile, cfg.k);
	const double predicted = wer_sc(profile.error_probs, code.info_set);
	REQUIRE(records[0].wer > predicted / 4.0);
	REQUIRE(records[0].wer < predicted * 4.0);
}

TEST_CASE("sim csv carries metadata and skips wall time", "[harness]") {
	SimConfig cfg = parse_sim_config(
		"scheme=bec-polar\nn=3\nk=4\nepsilon=0.2\nseed=8\nmin_word_errors=5\nmax_words=50\n");
	const std::string csv = sim_csv(cfg);
	REQUIRE(csv.find("# polarcm ") != std::string::npos);
	REQUIRE(csv.find("# config_hash ") != std::string::npos);
	REQUIRE(csv.find("# seed 8") != std::string::npos);
	REQUIRE(csv.find("# ebno_convention") != std::string::npos);
	REQUIRE(csv.find("epsilon,words,word_errors,bit_errors,wer,ber") != std::string::npos);
	REQUIRE(csv.find("wall") == std::string::npos);
}

TEST_CASE("fig1 analytic values and golden file", "[harness]") {
	const std::vector<int> n_list{1, 2, 3, 8};
	std::vector<double> eps_grid;
	for (int i = 1; i <= 9; ++i) eps_grid.push_back(0.1 * i);
	const auto rows = fig1_data(n_list, eps_grid);

	for (const FigRow& r : rows) {
		if (r.series == "bound" && std::abs(r.x - 0.5) < 1e-9)
			REQUIRE(r.value == Catch::Approx(0.25).margin(1e-15));
		if (r.series == "n=1" && std::abs(r.x - 0.5) < 1e-9)
			REQUIRE(r.value == Catch::Approx(0.0625).margin(1e-15));
	}

	std::ostringstream out;
	write_fig_csv(out, 0, {{"figure", "fig1"}}, rows);
	const std::string produced = strip_metadata(out.str());

	std::ifstream golden_in(std::string(POLARCM_TEST_DATA_DIR) + "/fig1_golden.csv",
	                        std::ios::binary);
	REQUIRE(golden_in.good());
	std::ostringstream golden;
	golden << golden_in.rdbuf();
	REQUIRE(produced == golden.str());
}

TEST_CASE("fig1 curves are ordered in block length", "[harness]") {
	std::vector<double> eps_grid;
	for (int i = 1; i <= 19; ++i) eps_grid.push_back(0.05 * i);
	const auto v12 = variance_curve_bec(eps_grid, 12);
	const auto v20 = variance_curve_bec(eps_grid, 20);
	for (std::size_t i = 0; i < eps_grid.size(); ++i) {
		REQUIRE(v20[i].second >= v12[i].second);
		const double cap = v20[i].first;
		REQUIRE(v20[i].second <= cap * (1.0 - cap) + 1e-12);
	}
}

TEST_CASE("fig2 variance vanishes at both snr extremes", "[harness]") {
	const auto rows = fig2_data({4}, {"SP", "GRAY"}, {-20.0, 45.0}, 20000, 3);
	REQUIRE(rows.size() == 4);
	for (const FigRow& r : rows) {
		if (r.x < 0.1) REQUIRE(r.value < 0.02);   // nearly useless channel
		if (r.x > 0.99) REQUIRE(r.value < 1e-3);  // saturated channel
	}
}

TEST_CASE("fig2 puts set partitioning above gray at mid capacity", "[harness]") {
	const auto rows = fig2_data({4}, {"SP", "GRAY"}, {14.0}, 50000, 4);
	REQUIRE(rows.size() == 2);
	REQUIRE(rows[0].x == Catch::Approx(rows[1].x));
	REQUIRE(rows[0].x > 0.4);
	REQUIRE(rows[0].x < 0.95);
	const double v_sp = rows[0].series.find("SP") != std::string::npos ? rows[0].value
	                                                                   : rows[1].value;
	const double v_gray = rows[0].series.find("GRAY") != std::string::npos ? rows[0].value
	                                                                       : rows[1].value;
	REQUIRE(v_sp > v_gray);
}

TEST_CASE("fig3 smoke: ordering against capacity and the shannon bound", "[harness]") {
	const double rate = 1.0;
	const Constellation cons = ask_constellation(4);
	const double needed =
		required_ebno_db(cons, sp_labeling(4), 4, rate, 1e-3);  // mN = 64
	const double ccm = cm_capacity_ebno_db(cons, rate);
	const double shannon = shannon_real_ebno_db(rate);
	REQUIRE(std::isfinite(needed));
	REQUIRE(needed > ccm);
	REQUIRE(ccm > shannon - 0.05);

	const auto rows = fig3_data({64}, {"SP"}, 1e-3, {0.5, 1.0});
	bool saw_curve = false, saw_ccm = false, saw_shannon = false;
	for (const FigRow& r : rows) {
		saw_curve |= r.series == "SP-mN64";
		saw_ccm |= r.series == "Ccm";
		saw_shannon |= r.series == "shannon-real";
	}
	REQUIRE(saw_curve);
	REQUIRE(saw_ccm);
	REQUIRE(saw_shannon);
	REQUIRE_THROWS_AS(fig3_data({64}, {"SP"}, 1e-3, {4.0}), InfeasibleDesign);
}

TEST_CASE("required ebno rises with rate", "[harness]") {
	const Constellation cons = ask_constellation(4);
	const Labeling lab = sp_labeling(4);
	const double lo = required_ebno_db(cons, lab, 3, 1.0, 1e-3);
	const double hi = required_ebno_db(cons, lab, 3, 2.0, 1e-3);
	REQUIRE(hi > lo);
}
