#pragma once

#include "output.hpp"

#include "selfsim/params.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace selfsim::cli {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct NamedTable {
    std::string name;  // file stem
    Table table;
    PlotSpec plot;
};

struct CommandOutput {
    ordered_json results = ordered_json::object();
    std::vector<NamedTable> tables;
    int exit_code = 0;
};

struct Command {
    std::string name;
    std::set<std::string> keys;  // allowed top-level keys beyond the common ones
    bool needs_medium = true;
    std::function<CommandOutput(const json& cfg, std::ostream& log)> exec;
};

const std::vector<Command>& commands();
const Command* find_command(const std::string& name);

/// Top-level keys every command accepts.
const std::set<std::string>& common_keys();

/// Rejects unknown keys and wrong types in the nested blocks. Throws InvalidArgument.
void validate_config(const Command& cmd, const json& cfg);

MediumParams medium_from(const json& cfg);
QuadratureConfig quadrature_from(const json& cfg);

}  // namespace selfsim::cli
