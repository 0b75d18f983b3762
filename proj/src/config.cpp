#include "igw/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace igw {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

double to_double(const std::string& s, int line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + s + "'");
    }
    if (pos != s.size())
        fail(line, "trailing characters after number '" + s + "'");
    return v;
}

long long to_int(const std::string& s, int line) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        fail(line, "expected an integer, got '" + s + "'");
    }
    if (pos != s.size())
        fail(line, "trailing characters after integer '" + s + "'");
    return v;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

} // namespace

Branch parse_branch(const std::string& s) {
    if (s == "plus")
        return Branch::Plus;
    if (s == "minus")
        return Branch::Minus;
    throw std::invalid_argument("branch must be 'plus' or 'minus', got '" + s + "'");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv")
        return OutputFormat::Csv;
    if (s == "json")
        return OutputFormat::Json;
    throw std::invalid_argument("format must be 'csv' or 'json', got '" + s + "'");
}

RunConfig parse_config(std::istream& in, RunConfig base) {
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(lineno, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            fail(lineno, "empty key");

        if (key == "m_hat") {
            base.m_hat = static_cast<int>(to_int(value, lineno));
        } else if (key == "n_hat") {
            base.n_hat = static_cast<int>(to_int(value, lineno));
        } else if (key == "N") {
            base.N = to_double(value, lineno);
        } else if (key == "eps") {
            base.eps = to_double(value, lineno);
        } else if (key == "M") {
            base.M = static_cast<int>(to_int(value, lineno));
        } else if (key == "branch") {
            try {
                base.branch = parse_branch(value);
            } catch (const std::invalid_argument& ex) {
                fail(lineno, ex.what());
            }
        } else if (key == "format") {
            try {
                base.format = parse_format(value);
            } catch (const std::invalid_argument& ex) {
                fail(lineno, ex.what());
            }
        } else if (key == "out") {
            base.out = value;
        } else if (key == "seed") {
            base.seed = static_cast<std::uint64_t>(to_int(value, lineno));
        } else if (key == "gap_threshold") {
            base.gap_threshold = to_double(value, lineno);
        } else if (key == "t_end") {
            base.t_end = to_double(value, lineno);
        } else if (key == "dt") {
            base.dt = to_double(value, lineno);
        } else if (key == "y") {
            base.ys.clear();
            for (const auto& tok : split_ws(value))
                base.ys.push_back(to_double(tok, lineno));
            if (base.ys.empty())
                fail(lineno, "y needs at least one value");
        } else if (key == "y_range") {
            const auto toks = split_ws(value);
            if (toks.size() != 3)
                fail(lineno, "y_range needs 'from to samples'");
            base.y_from = to_double(toks[0], lineno);
            base.y_to = to_double(toks[1], lineno);
            base.samples = static_cast<int>(to_int(toks[2], lineno));
            base.has_range = true;
        } else if (key.rfind("tol_", 0) == 0 && key.size() > 4) {
            base.tolerances[key.substr(4)] = to_double(value, lineno);
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }
    return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "'");
    return parse_config(in, std::move(base));
}

} // namespace igw
