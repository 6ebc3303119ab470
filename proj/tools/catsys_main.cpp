#include "catsys/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct CliState {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::string bound;
    std::uint64_t seed = 0;
    long trials = -1;
    int threads = 0;
    bool oracle = false;
    bool deep = false;
    bool chamber = false;
};

void add_common(CLI::App* sub, CliState& st, bool has_data_stream) {
    sub->add_option("--config", st.config_path, "JSON config file");
    if (has_data_stream) {
        sub->add_option("--out", st.out_path, "write data rows here instead of stdout");
        sub->add_option("--format", st.format, "data format")
            ->check(CLI::IsMember({"csv", "jsonl"}));
    }
    sub->add_option("--seed", st.seed, "override the config seed");
    sub->add_option("--trials", st.trials, "override the config trial count");
    sub->add_option("--bound", st.bound, "override the ratio bound (rational, e.g. 0.01)");
    sub->add_option("--threads", st.threads, "worker threads (0 = auto)");
    sub->add_flag("--oracle", st.oracle, "re-check every certificate against the brute-force box");
    sub->add_flag("--deep", st.deep, "extend the omega grid down to 1/100");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"systole and volume laboratory for stability conditions"};
    app.require_subcommand(1);
    CliState st;

    CLI::App* scan = app.add_subcommand("scan", "systole/volume sweep over a (beta, omega) grid");
    CLI::App* verify = app.add_subcommand("verify", "run the systolic-bound suites");
    CLI::App* sph = app.add_subcommand("sph", "spherical systole lower bounds on a rank-one slice");
    CLI::App* constructions =
        app.add_subcommand("constructions", "random-input checks of the witness constructions");
    CLI::App* hermite = app.add_subcommand("hermite", "Hermite-bound scan of the elliptic domain");

    add_common(scan, st, true);
    scan->add_flag("--chamber", st.chamber,
                   "bounded heuristic check for geometric-chamber violators per row");
    add_common(verify, st, false);
    add_common(sph, st, true);
    add_common(constructions, st, false);
    add_common(hermite, st, true);

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();

    try {
        catsys::CommandOptions opt;
        opt.config = catsys::load_config(st.config_path);
        if (sub->count("--seed")) opt.config.seed = st.seed;
        if (sub->count("--trials")) {
            opt.config.trials = st.trials;
            opt.config.minkowski_trials = st.trials;
        }
        if (!st.bound.empty()) opt.bound_override = catsys::parse_rational(st.bound);
        if (st.chamber) opt.config.chamber = true;
        opt.format = st.format;
        opt.oracle = st.oracle;
        opt.deep = st.deep;
        opt.threads = st.threads;

        std::ofstream file_out;
        std::ostream* data = &std::cout;
        if (!st.out_path.empty()) {
            file_out.open(st.out_path);
            if (!file_out) throw std::runtime_error("cannot open output file: " + st.out_path);
            data = &file_out;
        }
        // keep the data stream clean: logs go to stderr when data is stdout
        std::ostream& log = (data == &std::cout) ? std::cerr : std::cout;

        if (sub == scan) return catsys::cmd_scan(opt, *data, log);
        if (sub == verify) return catsys::cmd_verify(opt, std::cout);
        if (sub == sph) return catsys::cmd_sph(opt, *data, log);
        if (sub == constructions) return catsys::cmd_constructions(opt, std::cout);
        if (sub == hermite) return catsys::cmd_hermite(opt, *data, log);
        throw std::logic_error("unknown subcommand");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
