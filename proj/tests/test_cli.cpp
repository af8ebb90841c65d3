#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(SETUPSCHED_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path work_dir() {
    const char* env = std::getenv("SETUPSCHED_WORK");
    fs::path dir = env ? fs::path(env) : fs::temp_directory_path() / "setupsched_cli";
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string field(const std::string& line, const std::string& key) {
    const auto at = line.find(key + "=");
    if (at == std::string::npos) return {};
    const auto start = at + key.size() + 1;
    return line.substr(start, line.find_first_of(" \n", start) - start);
}

}  // namespace

TEST_CASE("gen is deterministic") {
    const fs::path dir = work_dir();
    const Run a = run("gen --seed 1 --n 3 --m 2 --k 2 --s 2 --pmin 3 --pmax 4");
    const Run b = run("gen --seed 1 --n 3 --m 2 --k 2 --s 2 --pmin 3 --pmax 4");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("releases") == std::string::npos);
    CHECK(run("gen --seed 1 --n 3 --m 2 --k 2 --release-density 1").out.find("\"releases\"") != std::string::npos);
    CHECK(run("gen --n 2 --k 3").code == 2);
    CHECK(run("gen --out " + (dir / "g.json").string()).code == 0);
    CHECK(fs::exists(dir / "g.json"));
}

TEST_CASE("solve and verify") {
    const fs::path dir = work_dir();
    const fs::path inst = dir / "small.json";
    write(inst, R"({"m":2,"s":2,"classes":[[3,3],[4]]})");

    const Run g = run("solve " + inst.string() + " --alg greedy --out " + (dir / "g.sched.json").string());
    CHECK(g.code == 0);
    CHECK(field(g.out, "makespan") == "8");
    CHECK(field(g.out, "lower_bound") == "7");
    CHECK(field(g.out, "feasible") == "true");

    const Run e = run("solve " + inst.string() + " --alg exact --out " + (dir / "e.sched.json").string());
    CHECK(field(e.out, "makespan") == "8");

    const Run b = run("solve " + inst.string() + " --alg block --lambda 10 --out " + (dir / "b.sched.json").string());
    CHECK(b.code == 0);
    CHECK(std::stod(field(b.out, "makespan")) <= std::stod(field(b.out, "certified_bound")));

    const Run f = run("solve " + inst.string() + " --alg fptas --eps 1/4 --out " + (dir / "f.sched.json").string());
    CHECK(f.code == 0);
    CHECK(std::stoi(field(f.out, "makespan")) <= 10);

    for (const char* alg : {"g", "e", "b", "f"}) {
        const Run v = run("verify " + inst.string() + " " + (dir / (std::string(alg) + ".sched.json")).string());
        CHECK(v.code == 0);
        CHECK(field(v.out, "feasible") == "true");
    }

    write(dir / "bad.sched.json", R"({"machines":[[{"job":0},{"job":1}],[{"setup":1},{"job":2}]]})");
    const Run bad = run("verify " + inst.string() + " " + (dir / "bad.sched.json").string());
    CHECK(bad.code == 1);
    CHECK(bad.out.find("run without preceding setup") != std::string::npos);

    CHECK(run("solve " + inst.string() + " --alg nope").code == 2);
    CHECK(run("solve").code == 2);
    CHECK(run("frobnicate").code == 2);
    write(dir / "broken.json", "{\"m\":2");
    CHECK(run("solve " + (dir / "broken.json").string()).code == 2);
    CHECK(run("solve " + inst.string() + " --alg exact --max-nodes 1").code != 2);
}

TEST_CASE("bench writes one row per instance and algorithm") {
    const fs::path dir = work_dir() / "bench";
    fs::create_directories(dir);
    write(dir / "a.json", R"({"m":2,"s":2,"classes":[[3,3],[4]]})");
    write(dir / "b.json", R"({"m":3,"s":1,"classes":[[5,2],[4,4],[1]]})");
    const Run r = run("bench " + dir.string() + " --algs greedy,exact");
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "instance_id,algorithm,makespan,lower_bound,exact_opt,ratio,millis,status");
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        if (line.find(",greedy,") != std::string::npos) {
            std::vector<std::string> cols;
            std::stringstream ls(line);
            std::string c;
            while (std::getline(ls, c, ',')) cols.push_back(c);
            REQUIRE(cols.size() == 8);
            CHECK(std::stod(cols[5]) < 2.0);
            CHECK(cols[5].size() - cols[5].find('.') - 1 == 6);
        }
    }
    CHECK(rows == 4);
}

TEST_CASE("simulate the adversary trace") {
    const fs::path dir = work_dir();
    write(dir / "adv.json", R"({"m":2,"s":10,"classes":[[1],[1]],"releases":{"0":0,"1":10}})");
    const Run r = run("simulate " + (dir / "adv.json").string() + " --alg exact --out " + (dir / "adv.timeline.json").string());
    CHECK(r.code == 0);
    CHECK(field(r.out, "clairvoyant_opt") == "11");
    CHECK(std::stoi(field(r.out, "online_makespan")) >= 21);
    CHECK(fs::exists(dir / "adv.timeline.json"));
}
