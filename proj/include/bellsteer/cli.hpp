#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace bellsteer {

enum class Subcommand { critical_radius, verify_lhs, classify, surface, sample_povm };

struct RunConfig {
    Subcommand subcommand = Subcommand::critical_radius;
    int order_theta = 200;
    int order_phi = 400;
    long long mc_samples = 1'000'000;
    std::uint64_t seed = 42;
    std::string output_format = "json";

    std::optional<std::array<double, 3>> t_diag;
    std::string t_file;

    std::string povm_spec = "sic";
    std::optional<Eigen::Vector3d> pvm_direction;
    int count = 1;
    int max_retries = 1000;

    int resolution = 32;
    std::optional<double> level;
    std::string surface_method = "scaling";

    std::string radius_method = "auto";
    bool mc_check = false;
};

// Accepts plain decimals and fraction literals such as "-5/12".
double parse_number(const std::string& text);

// Executes a fully formed config. Returns 0 on success, 2 on validation
// failure, 3 on numerical failure. Reports go to out, diagnostics to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to run(). Same exit-code contract; parse
// errors count as validation failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bellsteer
