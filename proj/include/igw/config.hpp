#ifndef IGW_CONFIG_HPP
#define IGW_CONFIG_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "igw/resonance.hpp"
#include "igw/wave.hpp"

namespace igw {

enum class OutputFormat { Csv, Json };

// Run parameters shared by the command line and the config file.
// Command-line flags win over file values.
struct RunConfig {
    int m_hat = 1;
    int n_hat = 1;
    double N = 1.0;
    double eps = 0.01;
    int M = 32;
    Branch branch = Branch::Plus;
    OutputFormat format = OutputFormat::Csv;
    std::string out;
    std::uint64_t seed = 12345;
    double gap_threshold = 1e-3;
    double t_end = 1000.0;
    double dt = 0.005;
    std::vector<double> ys;
    double y_from = 0.0;
    double y_to = 0.0;
    int samples = 0;
    bool has_range = false;
    std::map<std::string, double> tolerances{{"resonance", 1e-10}};

    PrimaryWave wave() const {
        return {m_hat, n_hat, N, eps};
    }
    double tol(const std::string& name, double fallback) const {
        const auto it = tolerances.find(name);
        return it == tolerances.end() ? fallback : it->second;
    }
};

Branch parse_branch(const std::string& s);
OutputFormat parse_format(const std::string& s);

// Reads `key = value` lines; `#` starts a comment, blank lines are skipped.
// Unknown keys and malformed values throw std::invalid_argument naming the
// line.  Keys: m_hat, n_hat, N, eps, M, branch, format, out, seed,
// gap_threshold, t_end, dt, y (list), y_range ("from to samples"), tol_<name>.
RunConfig parse_config(std::istream& in, RunConfig base = {});

// parse_config on the named file; throws std::runtime_error if unreadable.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

} // namespace igw

#endif
