#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace inertial::cli {

struct SessionConfig {
    double tolerance = 1e-9;
    int max_steps = 64;
    int stabilization_window = 3;
    std::uint64_t element_cap = 1000000;
    std::string output_mode = "json";
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

std::optional<std::string> process_env(const std::string& name);

// args excludes the program name. Exit codes: 0 ok, 1 malformed input, 2 domain error, 3 budget.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env = process_env);

}  // namespace inertial::cli
