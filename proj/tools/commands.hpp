#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cli_config.hpp"

namespace qcl::cli {

struct RunContext {
    Params params;
    std::uint64_t seed = 0;
};

struct Command {
    std::string name;
    std::string help;
    std::vector<ParamSpec> params;
    std::function<Outcome(const RunContext&)> run;
};

const std::vector<Command>& commands();

}  // namespace qcl::cli
