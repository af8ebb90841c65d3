#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "setupsched/core.hpp"

namespace setupsched::io {

using nlohmann::json;

/// Instance file: {"m": int, "s": int, "classes": [[int, ...], ...],
/// "releases": {"<job index>": int, ...}}. Job indices count jobs in reading
/// order (class by class). "releases" is optional; missing jobs release at 0.
struct InstanceFile {
    Instance instance;
    std::optional<std::vector<std::int64_t>> release;

    friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

json instance_to_json(const InstanceFile& file);
InstanceFile instance_from_json(const json& j);

/// Schedule file: {"machines": [[{"setup": class} | {"job": job}, ...], ...]}.
json schedule_to_json(const Schedule& sched);
Schedule schedule_from_json(const json& j);

/// Compact single-line dump followed by a newline.
std::string emit(const json& j);
json parse(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace setupsched::io
