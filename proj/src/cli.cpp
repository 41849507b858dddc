#include "goormaghtigh/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "goormaghtigh/abc.hpp"
#include "goormaghtigh/oracle.hpp"
#include "goormaghtigh/report.hpp"
#include "goormaghtigh/search.hpp"
#include "goormaghtigh/tables.hpp"

namespace gm::cli {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kIoError = 2;
constexpr int kAlarm = 3;

/// Report destination: stdout by default, else a file.
class ReportFile {
public:
    ReportFile(const std::string& path, bool append) {
        if (path.empty() || path == "-") {
            sink_ = std::make_unique<StreamSink>(std::cout);
            return;
        }
        file_.open(path, append ? std::ios::app : std::ios::trunc);
        if (!file_)
            throw std::runtime_error("cannot open report file: " + path);
        sink_ = std::make_unique<StreamSink>(file_);
    }
    RecordSink& sink() { return *sink_; }

private:
    std::ofstream file_;
    std::unique_ptr<RecordSink> sink_;
};

bool known_solution(const Solution& s) {
    static const Natural k31(31), k8191(8191);
    return s.value == k31 || s.value == k8191;
}

bool known_survivor(const Candidate& c) {
    return c == Candidate{5, 2, 3} || c == Candidate{13, 2, 3};
}

struct ShardFlag {
    std::uint32_t index = 1;
    std::uint32_t count = 1;
};

std::vector<SieveTable> obtain_tables(const std::string& tables_path, std::uint32_t pmax) {
    if (!tables_path.empty()) return load_tables(tables_path);
    std::cerr << "note: no --tables given, building tables for pmax = " << pmax
              << " in-process\n";
    return build_default_tables(pmax);
}

int run_search(const SearchConfig& cfg, const std::string& tables_path,
               const std::string& checkpoint_path, const std::string& report_path,
               unsigned threads, bool fresh, std::uint64_t max_blocks) {
    std::vector<SieveTable> tables = obtain_tables(tables_path, cfg.sieve_pmax);

    Checkpoint ck;
    bool resuming = false;
    if (!checkpoint_path.empty()) {
        if (std::filesystem::exists(checkpoint_path)) {
            if (!fresh) {
                ck = load_checkpoint(checkpoint_path);
                resuming = true;
            }
        } else if (!fresh) {
            std::cerr << "error: checkpoint " << checkpoint_path
                      << " does not exist (pass --fresh to start a new run)\n";
            return kIoError;
        }
    }

    ReportFile report(report_path, resuming);
    SearchOptions opts;
    opts.resume_from = resuming ? &ck : nullptr;
    opts.checkpoint_path = checkpoint_path;
    opts.threads = threads;
    std::uint64_t blocks_done = 0;
    if (max_blocks > 0)
        opts.keep_going = [&blocks_done, max_blocks]() { return ++blocks_done < max_blocks; };

    ShardReport rep = search_shard(cfg, tables, report.sink(), opts);

    bool unexpected = false;
    for (const Solution& s : rep.solutions)
        if (!known_solution(s)) unexpected = true;
    for (const Candidate& c : rep.survivors)
        if (!known_survivor(c)) unexpected = true;
    return unexpected ? kAlarm : kOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Exhaustive search toolkit for numbers with two repunit representations"};
    app.require_subcommand(1);

    // precompute
    auto* pre = app.add_subcommand("precompute", "Build and save sieve residue tables");
    std::uint32_t pre_pmax = 1024;
    std::string pre_out;
    pre->add_option("--pmax", pre_pmax, "tables for odd primes below this bound")
        ->capture_default_str();
    pre->add_option("--out", pre_out, "output table file")->required();

    // search
    auto* se = app.add_subcommand("search", "Run the sieve search over (m, x, n)");
    SearchConfig cfg;
    ShardFlag shard;
    std::string se_tables, se_checkpoint, se_report, se_shard = "1/1";
    unsigned se_threads = 1;
    bool se_fresh = false, no_y_prune = false, no_ratio = false, no_m_min = false,
         no_n_floor = false;
    std::uint64_t se_max_blocks = 0;
    se->add_option("--digits", cfg.digits, "search below 10^digits")->capture_default_str();
    se->add_option("--m-min", cfg.m_min, "smallest m when the m floor is enabled")
        ->capture_default_str();
    se->add_option("--x-min", cfg.x_min, "smallest searched base x")->capture_default_str();
    se->add_option("--pmax", cfg.sieve_pmax, "sieve primes below this bound")
        ->capture_default_str();
    se->add_option("--y-floor", cfg.y_floor, "exclusive lower bound on y for the n prune")
        ->capture_default_str();
    se->add_option("--x-block", cfg.x_block, "x values per work block")->capture_default_str();
    se->add_option("--shard", se_shard, "shard spec i/k (this run takes blocks i-1 mod k)")
        ->capture_default_str();
    se->add_option("--threads", se_threads, "worker threads over x-blocks")
        ->capture_default_str();
    se->add_option("--tables", se_tables, "precomputed table file (built in-process if absent)");
    se->add_option("--checkpoint", se_checkpoint, "checkpoint file, written at block boundaries");
    se->add_option("--report", se_report, "JSONL report path (default stdout)");
    se->add_flag("--fresh", se_fresh, "start over, ignoring an existing checkpoint");
    se->add_flag("--no-y-prune", no_y_prune, "disable the y-floor prune on n");
    se->add_flag("--no-ratio-exclusion", no_ratio, "disable the (m-1) = 3(n-1) exclusion");
    se->add_flag("--no-m-min", no_m_min, "disable the m floor");
    se->add_flag("--no-n-floor", no_n_floor, "search n down to 3 instead of 7");
    se->add_flag("--adaptive-order", cfg.adaptive_order,
                 "reorder table trial by witness success at m boundaries");
    se->add_option("--max-blocks", se_max_blocks,
                   "stop after this many blocks (0 = run to completion)");
    se->set_config("--config", "", "key=value configuration file (flags take precedence)");

    // oracle / bateman
    auto* orc = app.add_subcommand("oracle", "Brute-force enumeration of repunit coincidences");
    std::string orc_limit, orc_report;
    orc->add_option("--limit", orc_limit, "inclusive decimal bound on N")->required();
    orc->add_option("--report", orc_report, "JSONL report path (default stdout)");

    auto* bat = app.add_subcommand("bateman",
                                   "Coincidences with x, y and N all prime (brute force)");
    std::string bat_limit, bat_report;
    bat->add_option("--limit", bat_limit, "inclusive decimal bound on N")->required();
    bat->add_option("--report", bat_report, "JSONL report path (default stdout)");

    // mersenne
    auto* mer = app.add_subcommand("mersenne", "Exhaustive x = 2 scan below 10^digits");
    std::uint32_t mer_digits = 100;
    std::string mer_report;
    mer->add_option("--digits", mer_digits, "scan 2^m - 1 below 10^digits")
        ->capture_default_str();
    mer->add_option("--report", mer_report, "JSONL report path (default stdout)");

    // abc
    auto* ab = app.add_subcommand("abc", "abc triple of a repunit coincidence");
    std::uint64_t ab_x = 0, ab_y = 0;
    std::uint32_t ab_m = 0, ab_n = 0;
    std::string ab_report;
    ab->add_option("--x", ab_x)->required();
    ab->add_option("--y", ab_y)->required();
    ab->add_option("--m", ab_m)->required();
    ab->add_option("--n", ab_n)->required();
    ab->add_option("--report", ab_report, "JSON output path (default stdout)");

    // verify
    auto* ver = app.add_subcommand("verify", "Exactly verify one candidate (m, x, n)");
    std::uint64_t ver_x = 0;
    std::uint32_t ver_m = 0, ver_n = 0;
    std::string ver_y, ver_report;
    ver->add_option("--x", ver_x)->required();
    ver->add_option("--m", ver_m)->required();
    ver->add_option("--n", ver_n)->required();
    ver->add_option("--y", ver_y, "check this y instead of searching");
    ver->add_option("--report", ver_report, "JSONL report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*pre) {
            save_tables(build_default_tables(pre_pmax), pre_out);
            return kOk;
        }
        if (*se) {
            if (std::sscanf(se_shard.c_str(), "%u/%u", &shard.index, &shard.count) != 2) {
                std::cerr << "error: --shard expects i/k\n";
                return kUsage;
            }
            cfg.shard = {shard.index, shard.count};
            cfg.filters.use_y_prune = !no_y_prune;
            cfg.filters.use_ratio_exclusion = !no_ratio;
            cfg.filters.use_m_min = !no_m_min;
            cfg.filters.use_n_ge_7 = !no_n_floor;
            cfg.validate();
            return run_search(cfg, se_tables, se_checkpoint, se_report, se_threads, se_fresh,
                              se_max_blocks);
        }
        if (*orc || *bat) {
            const bool bateman = bool(*bat);
            Natural limit(bateman ? bat_limit : orc_limit);
            ReportFile report(bateman ? bat_report : orc_report, false);
            auto hits = bateman ? bateman_stemmler(limit) : oracle_enumerate(limit);
            for (const RepunitHit& h : hits) report.sink().emit(hit_record(h));
            return kOk;
        }
        if (*mer) {
            ReportFile report(mer_report, false);
            bool unexpected = false;
            for (const Solution& s : mersenne_scan(mer_digits)) {
                report.sink().emit(solution_record(s));
                if (!known_solution(s)) unexpected = true;
            }
            return unexpected ? kAlarm : kOk;
        }
        if (*ab) {
            ReportFile report(ab_report, false);
            report.sink().emit(abc_record(abc_triple(ab_x, ab_y, ab_m, ab_n)));
            return kOk;
        }
        if (*ver) {
            ReportFile report(ver_report, false);
            std::optional<Solution> sol;
            if (!ver_y.empty()) {
                Natural y(ver_y);
                Natural value = repunit_exact(ver_x, ver_m);
                if (repunit_exact(y, ver_n) == value) {
                    Solution s;
                    s.x = ver_x;
                    s.m = ver_m;
                    s.y = y;
                    s.n = ver_n;
                    s.value = value;
                    s.n_prime = is_prime_small(ver_n);
                    s.value_probable_prime = is_probable_prime(value);
                    sol = std::move(s);
                }
            } else {
                sol = verify_candidate(ver_m, ver_x, ver_n);
            }
            if (!sol) return kOk;
            report.sink().emit(solution_record(*sol));
            return known_solution(*sol) ? kOk : kAlarm;
        }
    } catch (const TableIoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const CheckpointError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const MissingTablesError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const FactorError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    }
    return kUsage;  // unreachable with require_subcommand(1)
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("goormaghtigh");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace gm::cli
