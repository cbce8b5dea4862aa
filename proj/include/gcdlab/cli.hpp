// Command-line front end: configuration, seeding, execution and report
// emission for every experiment pipeline.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gcdlab {

struct RunConfig {
    std::string command;

    std::vector<std::uint64_t> n_list;
    std::uint64_t count = 0;  ///< 0 = command default
    std::vector<std::uint64_t> ell_list{1};
    int d = 2;

    std::string k_spec;  ///< single "4" or ladder "2:12"; empty = command default
    int replicas = 0;    ///< 0 = command default
    std::uint64_t seed = 1;
    double epsilon = 0.0;
    double pilot_quantile = 0.0;  ///< >0: pick epsilon from a pilot run
    std::uint64_t window_lo = 0, window_hi = 0;
    std::string grid;  ///< "start:end:points"

    std::string output;  ///< empty = stdout; relative paths honor GCDLAB_OUT_DIR
    std::string format = "csv";

    bool scale_literal_paper = false;
    std::string d_mode = "recount";  ///< "paper" or "recount"
    bool strict_phrase_kernel = false;

    int threads = 1;
    bool check = false;

    // solver overrides for the ldp command
    double damping = 0.5;
    double tol = 1e-10;
    int max_iter = 5000;
    double lambda_window = 50.0;
    int restarts = 8;

    std::string measure = "product";  ///< tails: "uniform" or "product"
};

/// Executes the configured pipeline and writes its report. Throws
/// std::domain_error and friends for infeasible inputs.
int run(const RunConfig& config);

/// Full argv entry point: returns 0 on success, 2 on usage errors, 3 on
/// domain errors (with a machine-readable error record on stderr).
int cli_main(int argc, const char* const* argv);

/// Grid helper: "start:end:points" -> inclusive linspace.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace gcdlab
