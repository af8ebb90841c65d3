#include "setupsched/io.hpp"

#include <fstream>
#include <sstream>

namespace setupsched::io {

json instance_to_json(const InstanceFile& file) {
    const Instance& inst = file.instance;
    json j;
    j["m"] = inst.num_machines();
    j["s"] = inst.setup();
    j["classes"] = inst.class_sizes();
    if (file.release) {
        // Keys follow reading order, which may differ from job ids if the
        // instance was not built class by class.
        json rel = json::object();
        int index = 0;
        for (int c = 0; c < inst.num_classes(); ++c)
            for (int id : inst.class_jobs(c)) rel[std::to_string(index++)] = (*file.release)[static_cast<std::size_t>(id)];
        j["releases"] = rel;
    }
    return j;
}

InstanceFile instance_from_json(const json& j) {
    if (!j.is_object()) throw InvalidInstance("instance must be a JSON object");
    for (const char* key : {"m", "s", "classes"})
        if (!j.contains(key)) throw InvalidInstance(std::string("instance is missing \"") + key + "\"");
    if (!j["m"].is_number_integer() || !j["s"].is_number_integer())
        throw InvalidInstance("\"m\" and \"s\" must be integers");
    if (!j["classes"].is_array()) throw InvalidInstance("\"classes\" must be an array of arrays");

    std::vector<std::vector<std::int64_t>> classes;
    for (const json& c : j["classes"]) {
        if (!c.is_array()) throw InvalidInstance("\"classes\" must be an array of arrays");
        std::vector<std::int64_t> sizes;
        for (const json& p : c) {
            if (!p.is_number_integer()) throw InvalidInstance("job sizes must be integers");
            sizes.push_back(p.get<std::int64_t>());
        }
        classes.push_back(std::move(sizes));
    }
    InstanceFile file;
    file.instance = Instance::from_classes(j["m"].get<int>(), j["s"].get<std::int64_t>(), classes);

    if (j.contains("releases")) {
        const json& rel = j["releases"];
        if (!rel.is_object()) throw InvalidInstance("\"releases\" must be an object");
        std::vector<std::int64_t> release(static_cast<std::size_t>(file.instance.num_jobs()), 0);
        for (const auto& [key, value] : rel.items()) {
            std::size_t used = 0;
            int index = -1;
            try {
                index = std::stoi(key, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != key.size() || index < 0 || index >= file.instance.num_jobs())
                throw InvalidInstance("release key \"" + key + "\" is not a job index");
            if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
                throw InvalidInstance("release of job " + key + " must be a non-negative integer");
            release[static_cast<std::size_t>(index)] = value.get<std::int64_t>();
        }
        file.release = std::move(release);
    }
    return file;
}

json schedule_to_json(const Schedule& sched) {
    json machines = json::array();
    for (const auto& seq : sched.machines) {
        json row = json::array();
        for (const Segment& seg : seq) row.push_back(json{{seg.is_setup() ? "setup" : "job", seg.id}});
        machines.push_back(std::move(row));
    }
    return json{{"machines", std::move(machines)}};
}

Schedule schedule_from_json(const json& j) {
    if (!j.is_object() || !j.contains("machines") || !j["machines"].is_array())
        throw InvalidInstance("schedule must be an object with a \"machines\" array");
    Schedule sched;
    for (const json& row : j["machines"]) {
        if (!row.is_array()) throw InvalidInstance("each machine must be an array of segments");
        MachineSequence seq;
        for (const json& seg : row) {
            if (!seg.is_object() || seg.size() != 1) throw InvalidInstance("segment must be {\"setup\": c} or {\"job\": j}");
            if (seg.contains("setup") && seg["setup"].is_number_integer()) {
                seq.push_back(Segment::setup(seg["setup"].get<int>()));
            } else if (seg.contains("job") && seg["job"].is_number_integer()) {
                seq.push_back(Segment::run(seg["job"].get<int>()));
            } else {
                throw InvalidInstance("segment must be {\"setup\": c} or {\"job\": j}");
            }
        }
        sched.machines.push_back(std::move(seq));
    }
    return sched;
}

std::string emit(const json& j) { return j.dump() + "\n"; }

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInstance(std::string("malformed JSON: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace setupsched::io
