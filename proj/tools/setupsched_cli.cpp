// setupsched: generate, solve, verify and benchmark setup-time scheduling
// instances, and simulate the online batching strategy.
//
// Exit codes: 0 success, 1 verification or solver failure, 2 usage error.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "setupsched/blocksched.hpp"
#include "setupsched/exact.hpp"
#include "setupsched/fptas.hpp"
#include "setupsched/generator.hpp"
#include "setupsched/greedy.hpp"
#include "setupsched/io.hpp"
#include "setupsched/online.hpp"

using namespace setupsched;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& text) {
    try {
        if (auto slash = text.find('/'); slash != std::string::npos)
            return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
        const auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(std::stoll(text));
        const std::string frac = text.substr(dot + 1);
        if (frac.size() > 12 || frac.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument(text);
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const std::string whole = text.substr(0, dot);
        const std::int64_t w = whole.empty() ? 0 : std::stoll(whole);
        const std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
        return Rational(w * den + (text.starts_with('-') ? -f : f), den);
    } catch (const std::exception&) {
        throw UsageError("cannot parse number '" + text + "'");
    }
}

io::InstanceFile load_instance(const std::string& path) {
    try {
        return io::instance_from_json(io::parse(io::read_file(path)));
    } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        io::write_file(path, text);
    }
}

std::string fixed6(double v) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(6) << v;
    return ss.str();
}

std::string show(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return fixed6(to_double(r));
}

struct SolveOptions {
    std::string algorithm = "block";
    int lambda = 10;
    std::string eps = "0.5";
    std::int64_t max_nodes = SearchLimit{}.max_nodes;
};

struct Solved {
    Schedule schedule;
    Rational certified;
};

Solved run_algorithm(const Instance& inst, const SolveOptions& opt) {
    if (opt.algorithm == "greedy") {
        GreedyResult g = greedy_schedule(inst);
        return {std::move(g.schedule), Rational(g.lower + inst.setup() + profile(inst).p_max - 1)};
    }
    if (opt.algorithm == "fptas") {
        const Rational eps = parse_rational(opt.eps);
        if (eps <= 0) throw UsageError("--eps must be positive");
        FptasResult f = fptas_schedule(inst, eps);
        return {std::move(f.schedule), f.rounded.value(f.rounded_makespan_units)};
    }
    if (opt.algorithm == "block") {
        if (opt.lambda < 2) throw UsageError("--lambda must be >= 2");
        block::ApproxResult a = block::approx_schedule(inst, opt.lambda);
        return {std::move(a.schedule), a.certified_bound};
    }
    if (opt.algorithm == "exact") {
        ExactResult e = exact_makespan(inst, SearchLimit{opt.max_nodes});
        if (!e.optimal)
            throw std::runtime_error("exact search budget exceeded (best " + std::to_string(e.makespan) + ", lower bound " +
                                     std::to_string(e.lower_bound) + ")");
        return {std::move(e.schedule), Rational(e.makespan)};
    }
    throw UsageError("unknown algorithm '" + opt.algorithm + "' (greedy, fptas, block, exact)");
}

OfflineSolver offline_for(const SolveOptions& opt) {
    if (opt.algorithm == "greedy") return offline_greedy();
    if (opt.algorithm == "fptas") return offline_fptas(parse_rational(opt.eps));
    if (opt.algorithm == "block") return offline_block(opt.lambda);
    if (opt.algorithm == "exact") return offline_exact(SearchLimit{opt.max_nodes});
    throw UsageError("unknown algorithm '" + opt.algorithm + "' (greedy, fptas, block, exact)");
}

void add_solver_flags(CLI::App* cmd, SolveOptions& opt) {
    cmd->add_option("--alg", opt.algorithm, "greedy | fptas | block | exact")->capture_default_str();
    cmd->add_option("--lambda", opt.lambda, "block precision parameter (>= 2)")->capture_default_str();
    cmd->add_option("--eps", opt.eps, "fptas precision, decimal or p/q")->capture_default_str();
    cmd->add_option("--max-nodes", opt.max_nodes, "node budget of the exact search")->capture_default_str();
}

double millis_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_solve(const std::string& path, const SolveOptions& opt, const std::string& out) {
    const io::InstanceFile file = load_instance(path);
    const Instance& inst = file.instance;
    const auto t0 = std::chrono::steady_clock::now();
    Solved res = run_algorithm(inst, opt);
    const double ms = millis_since(t0);

    const VerifyReport rep = verify_schedule(inst, res.schedule);
    write_or_print(out, io::emit(io::schedule_to_json(res.schedule)));
    std::ostream& log = (out.empty() || out == "-") ? std::cerr : std::cout;
    log << "algorithm=" << opt.algorithm << " makespan=" << rep.makespan
        << " lower_bound=" << trivial_lower_bound(inst) << " certified_bound=" << show(res.certified)
        << " millis=" << fixed6(ms) << " feasible=" << (rep.feasible ? "true" : "false") << "\n";
    return rep.feasible ? kOk : kFailure;
}

int cmd_verify(const std::string& instance_path, const std::string& schedule_path) {
    const io::InstanceFile file = load_instance(instance_path);
    Schedule sched;
    try {
        sched = io::schedule_from_json(io::parse(io::read_file(schedule_path)));
    } catch (const std::exception& e) {
        throw UsageError(schedule_path + ": " + e.what());
    }
    const VerifyReport rep = verify_schedule(file.instance, sched);
    std::cout << "feasible=" << (rep.feasible ? "true" : "false") << " makespan=" << rep.makespan << "\n";
    for (const std::string& v : rep.violations) std::cout << "violation: " << v << "\n";
    return rep.feasible ? kOk : kFailure;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_bench(const std::string& dir, const std::string& algs, SolveOptions opt, const std::string& out) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    const std::vector<std::string> algorithms = split_list(algs);
    for (const std::string& a : algorithms)
        if (a != "greedy" && a != "fptas" && a != "block" && a != "exact") throw UsageError("unknown algorithm '" + a + "'");

    std::ostringstream csv;
    csv << "instance_id,algorithm,makespan,lower_bound,exact_opt,ratio,millis,status\n";
    for (const fs::path& p : files) {
        const std::string id = p.stem().string();
        io::InstanceFile file;
        try {
            file = io::instance_from_json(io::parse(io::read_file(p.string())));
        } catch (const std::exception& e) {
            for (const std::string& a : algorithms) csv << id << "," << a << ",,,,,,\"error: " << e.what() << "\"\n";
            continue;
        }
        const Instance& inst = file.instance;
        const std::int64_t lb = trivial_lower_bound(inst);
        const ExactResult oracle = exact_makespan(inst, SearchLimit{opt.max_nodes});
        for (const std::string& a : algorithms) {
            opt.algorithm = a;
            csv << id << "," << a << ",";
            try {
                const auto t0 = std::chrono::steady_clock::now();
                const Solved res = run_algorithm(inst, opt);
                const double ms = millis_since(t0);
                const VerifyReport rep = verify_schedule(inst, res.schedule);
                const std::int64_t denom = oracle.optimal ? oracle.makespan : lb;
                csv << rep.makespan << "," << lb << "," << (oracle.optimal ? std::to_string(oracle.makespan) : "") << ","
                    << fixed6(static_cast<double>(rep.makespan) / static_cast<double>(denom)) << "," << fixed6(ms) << ","
                    << (rep.feasible ? "ok" : "infeasible") << "\n";
            } catch (const std::exception& e) {
                csv << ",," << (oracle.optimal ? std::to_string(oracle.makespan) : "") << ",,,\"error: " << e.what() << "\"\n";
            }
        }
    }
    write_or_print(out, csv.str());
    return kOk;
}

int cmd_simulate(const std::string& path, const SolveOptions& opt, const std::string& out) {
    const io::InstanceFile file = load_instance(path);
    const std::vector<std::int64_t> release =
        file.release.value_or(std::vector<std::int64_t>(static_cast<std::size_t>(file.instance.num_jobs()), 0));
    const TimedInstance tinst = make_timed(file.instance, release);
    const Timeline tl = simulate_online(tinst, offline_for(opt));
    const std::vector<std::string> problems = check_timeline(tinst, tl);

    io::json j;
    j["makespan"] = tl.makespan;
    j["batches"] = io::json::array();
    for (const Batch& b : tl.batches)
        j["batches"].push_back({{"window", {b.window_lo, b.window_hi}}, {"start", b.start}, {"finish", b.finish}, {"jobs", b.jobs}});
    j["machines"] = io::json::array();
    for (const auto& row : tl.machines) {
        io::json r = io::json::array();
        for (const TimedSegment& s : row)
            r.push_back({{s.kind == Segment::Kind::Setup ? "setup" : "job", s.id}, {"start", s.start}, {"end", s.end}});
        j["machines"].push_back(std::move(r));
    }
    if (!out.empty()) io::write_file(out, io::emit(j));

    const RatioReport ratio = competitive_ratio(tl, tinst, SearchLimit{opt.max_nodes});
    std::cout << "algorithm=" << opt.algorithm << " batches=" << tl.batches.size() << " online_makespan=" << tl.makespan
              << " clairvoyant_opt=" << ratio.clairvoyant << (ratio.exact ? "" : " (lower bound)")
              << " ratio=" << fixed6(to_double(ratio.ratio)) << "\n";
    for (const std::string& p : problems) std::cout << "violation: " << p << "\n";
    return problems.empty() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Makespan scheduling with class setup times"};
    app.require_subcommand(1);

    GenParams gp;
    std::optional<double> density;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "write a random instance");
    gen->add_option("--seed", gp.seed)->capture_default_str();
    gen->add_option("--n", gp.n, "number of jobs")->capture_default_str();
    gen->add_option("--m", gp.m, "number of machines")->capture_default_str();
    gen->add_option("--k", gp.k, "number of classes")->capture_default_str();
    gen->add_option("--s", gp.s, "setup time")->capture_default_str();
    gen->add_option("--pmin", gp.p_min)->capture_default_str();
    gen->add_option("--pmax", gp.p_max)->capture_default_str();
    gen->add_option("--release-density", density, "emit releases spread over density * average load");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    SolveOptions sopt;
    std::string instance_path;
    std::string schedule_path;
    std::string out;
    auto* solve = app.add_subcommand("solve", "solve an instance and write the schedule");
    solve->add_option("instance", instance_path)->required();
    add_solver_flags(solve, sopt);
    solve->add_option("--out", out, "schedule file (default stdout)");

    auto* verify = app.add_subcommand("verify", "check a schedule against an instance");
    verify->add_option("instance", instance_path)->required();
    verify->add_option("schedule", schedule_path)->required();

    std::string bench_dir;
    std::string bench_algs = "greedy,fptas,block,exact";
    auto* bench = app.add_subcommand("bench", "run algorithms over a directory of *.json instances, CSV out");
    bench->add_option("dir", bench_dir)->required();
    bench->add_option("--algs", bench_algs, "comma separated list")->capture_default_str();
    add_solver_flags(bench, sopt);
    bench->add_option("--out", out, "CSV file (default stdout)");

    auto* simulate = app.add_subcommand("simulate", "run the online batching strategy on a trace");
    simulate->add_option("trace", instance_path)->required();
    add_solver_flags(simulate, sopt);
    simulate->add_option("--out", out, "timeline JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*gen) {
            gp.release_density = density;
            write_or_print(gen_out, io::emit(io::instance_to_json(generate_instance(gp))));
            return kOk;
        }
        if (*solve) return cmd_solve(instance_path, sopt, out);
        if (*verify) return cmd_verify(instance_path, schedule_path);
        if (*bench) return cmd_bench(bench_dir, bench_algs, sopt, out);
        if (*simulate) return cmd_simulate(instance_path, sopt, out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidInstance& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}
