#include "goormaghtigh/search.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <numeric>
#include <set>
#include <sstream>

namespace gm {

void SearchConfig::validate() const {
    if (digits < 1)
        throw std::invalid_argument("config: digits must be >= 1");
    if (m_min < 3)
        throw std::invalid_argument("config: m_min must be >= 3");
    if (x_min < 2)
        throw std::invalid_argument("config: x_min must be >= 2");
    if (sieve_pmax < 4)
        throw std::invalid_argument("config: sieve_pmax must be >= 4");
    if (x_block < 1)
        throw std::invalid_argument("config: x_block must be >= 1");
    if (shard.count < 1 || shard.index < 1 || shard.index > shard.count)
        throw std::invalid_argument("config: shard index must be in [1, count]");
}

std::string SearchConfig::canonical_text() const {
    std::ostringstream os;
    os << "digits=" << digits << '\n'
       << "m_min=" << m_min << '\n'
       << "x_min=" << x_min << '\n'
       << "sieve_pmax=" << sieve_pmax << '\n'
       << "y_floor=" << y_floor << '\n'
       << "x_block=" << x_block << '\n'
       << "shard=" << shard.index << '/' << shard.count << '\n'
       << "use_m_min=" << int(filters.use_m_min) << '\n'
       << "use_n_ge_7=" << int(filters.use_n_ge_7) << '\n'
       << "use_ratio_exclusion=" << int(filters.use_ratio_exclusion) << '\n'
       << "use_y_prune=" << int(filters.use_y_prune) << '\n'
       << "adaptive_order=" << int(adaptive_order) << '\n';
    return os.str();
}

std::vector<std::uint32_t> m_candidates(const SearchConfig& cfg) {
    cfg.validate();
    const std::uint32_t base = std::max<std::uint32_t>(2, cfg.x_min);
    const std::uint32_t m_lo = cfg.filters.use_m_min ? cfg.m_min : 3;
    const Natural bound = Natural::pow10(cfg.digits);
    // float overestimate of the largest possible m, then exact comparison
    double est = double(cfg.digits) * std::log(10.0) / std::log(double(base));
    std::vector<std::uint32_t> out;
    for (std::uint64_t m : primes_in(m_lo, static_cast<std::int64_t>(est) + 8)) {
        if (repunit_exact(base, static_cast<std::uint32_t>(m)) < bound)
            out.push_back(static_cast<std::uint32_t>(m));
        else
            break;  // f_m(base) is increasing in m
    }
    return out;
}

XRange x_range(std::uint32_t m, const SearchConfig& cfg) {
    cfg.validate();
    if (m < 3)
        throw std::invalid_argument("x_range: m must be >= 3");
    const std::uint64_t lo = std::max<std::uint32_t>(2, cfg.x_min);
    const Natural bound = Natural::pow10(cfg.digits);
    if (!(repunit_exact(lo, m) < bound)) return {lo, lo - 1};

    // x_max^(m-1) < f_m(x_max) < 10^digits, so x_max < 10^(digits/(m-1))
    const double log10_cap = double(cfg.digits) / (m - 1);
    if (log10_cap > 18.7)
        throw std::overflow_error("x_range: x bound exceeds the machine word; "
                                  "raise m_min or lower digits");
    std::uint64_t good = lo;  // f_m(good) < bound
    std::uint64_t bad = static_cast<std::uint64_t>(std::pow(10.0, log10_cap) * 1.001) + 16;
    if (repunit_exact(bad, m) < bound)
        throw std::logic_error("x_range: bracket estimate failed");
    while (bad - good > 1) {
        std::uint64_t mid = good + (bad - good) / 2;
        if (repunit_exact(mid, m) < bound)
            good = mid;
        else
            bad = mid;
    }
    return {lo, good};
}

bool excluded_pair(std::uint32_t m, std::uint32_t n) {
    if (n >= m)
        throw std::invalid_argument("excluded_pair: requires m > n");
    if (!is_prime_small(m) || !is_prime_small(n))
        throw std::invalid_argument("excluded_pair: m and n must be prime");
    return (m - 1) == 3 * (n - 1);
}

namespace {

// Upper bound on ln f_m(x): f_m(x) = (x^m - 1)/(x - 1) < x^m/(x - 1).
double ln_repunit_upper(std::uint32_t m, std::uint64_t x) {
    return double(m) * std::log(double(x)) - std::log(double(x) - 1.0);
}

void n_list(std::uint32_t m, std::uint64_t x, const SearchConfig& cfg,
            const std::vector<std::uint32_t>& primes_below_m,
            std::vector<std::uint32_t>& out) {
    out.clear();
    const std::uint32_t n_floor = cfg.filters.use_n_ge_7 ? 7 : 3;
    double cap = 0;
    if (cfg.filters.use_y_prune) {
        const std::uint64_t y_min = std::max(x + 1, cfg.y_floor + 1);
        cap = ln_repunit_upper(m, x) / std::log(double(y_min)) + 1e-9;
    }
    for (std::uint32_t n : primes_below_m) {
        if (n < n_floor) continue;
        if (n >= m) break;
        if (cfg.filters.use_y_prune && double(n - 1) > cap) break;  // primes ascend
        if (cfg.filters.use_ratio_exclusion && (m - 1) == 3 * (n - 1)) continue;
        out.push_back(n);
    }
}

std::vector<std::uint32_t> primes_below(std::uint32_t m) {
    std::vector<std::uint32_t> out;
    if (m > 2)
        for (std::uint64_t p : primes_in(2, static_cast<std::int64_t>(m) - 1))
            out.push_back(static_cast<std::uint32_t>(p));
    return out;
}

}  // namespace

std::vector<std::uint32_t> n_candidates(std::uint32_t m, std::uint64_t x,
                                        const SearchConfig& cfg) {
    cfg.validate();
    if (!is_prime_small(m))
        throw std::invalid_argument("n_candidates: m must be prime");
    if (x < 2)
        throw std::invalid_argument("n_candidates: x must be >= 2");
    std::vector<std::uint32_t> out;
    n_list(m, x, cfg, primes_below(m), out);
    return out;
}

std::optional<std::uint32_t> rule_out(const std::vector<SieveTable>& tables,
                                      std::uint32_t m, std::uint64_t x, std::uint32_t n) {
    if (x < 2 || n < 2 || m <= n)
        throw std::invalid_argument("rule_out: requires x >= 2 and m > n >= 2");
    for (const SieveTable& t : tables) {
        std::uint32_t a = t.lookup_a(static_cast<std::uint32_t>(x % t.p()), m);
        if (!t.n_feasible(a, n)) return t.p();
    }
    return std::nullopt;
}

std::optional<Solution> verify_candidate(std::uint32_t m, std::uint64_t x, std::uint32_t n) {
    if (x < 2)
        throw std::invalid_argument("verify_candidate: x must be >= 2");
    if (n < 3)
        throw std::invalid_argument("verify_candidate: n must be >= 3");
    if (m < 2)
        throw std::invalid_argument("verify_candidate: m must be >= 2");
    const Natural value = repunit_exact(x, m);
    // y^(n-1) < f_n(y) <= value, so y < 2^(bits(value)/(n-1) + 1)
    Natural hi = Natural::pow(Natural(2), value.bit_length() / (n - 1) + 2);
    if (value < hi) hi = value;
    Natural lo = Natural(x + 1);
    while (lo <= hi) {
        Natural mid = (lo + hi) / Natural(2);
        const Natural probe = repunit_exact(mid, n);
        if (probe == value) {
            Solution s;
            s.x = x;
            s.m = m;
            s.y = mid;
            s.n = n;
            s.value = value;
            s.n_prime = is_prime_small(n);
            s.value_probable_prime = is_probable_prime(value);
            return s;
        }
        if (probe < value)
            lo = mid + Natural(1);
        else
            hi = mid - Natural(1);
    }
    return std::nullopt;
}

namespace {

struct BlockResult {
    std::uint64_t g = 0;  // global block index
    std::vector<std::string> records;
    std::vector<Solution> solutions;
    std::vector<Candidate> survivors;
    std::vector<std::uint64_t> kills;  // indexed by ascending-p table position
    std::uint64_t ruled_out = 0;
};

BlockResult process_block(std::uint32_t m, std::uint64_t g, std::uint64_t blo,
                          std::uint64_t bhi, const SearchConfig& cfg,
                          const std::vector<const SieveTable*>& tables,
                          const std::vector<std::uint32_t>& trial,
                          const std::vector<std::uint32_t>& primes_below_m) {
    BlockResult res;
    res.g = g;
    res.kills.assign(tables.size(), 0);
    std::vector<std::int32_t> a_cache(tables.size());
    std::vector<std::uint32_t> ns;
    for (std::uint64_t x = blo; x <= bhi; ++x) {
        n_list(m, x, cfg, primes_below_m, ns);
        if (ns.empty()) continue;
        std::fill(a_cache.begin(), a_cache.end(), -1);
        for (std::uint32_t n : ns) {
            std::int32_t witness = -1;
            for (std::uint32_t ti : trial) {
                const SieveTable& t = *tables[ti];
                std::int32_t a = a_cache[ti];
                if (a < 0) {
                    a = static_cast<std::int32_t>(
                        t.lookup_a(static_cast<std::uint32_t>(x % t.p()), m));
                    a_cache[ti] = a;
                }
                if (!t.n_feasible(static_cast<std::uint32_t>(a), n)) {
                    witness = static_cast<std::int32_t>(ti);
                    break;
                }
            }
            if (witness >= 0) {
                ++res.kills[static_cast<std::size_t>(witness)];
                ++res.ruled_out;
                continue;
            }
            Candidate c{m, x, n};
            res.survivors.push_back(c);
            res.records.push_back(survivor_record(c));
            if (auto sol = verify_candidate(m, x, n)) {
                res.records.push_back(solution_record(*sol));
                res.solutions.push_back(std::move(*sol));
            }
        }
    }
    res.records.push_back(progress_record(m, blo, bhi));
    for (std::size_t i = 0; i < res.kills.size(); ++i)
        if (res.kills[i] > 0) res.records.push_back(stats_record(tables[i]->p(), res.kills[i]));
    return res;
}

}  // namespace

ShardReport search_shard(const SearchConfig& cfg, const std::vector<SieveTable>& tables,
                         RecordSink& sink, const SearchOptions& opts) {
    cfg.validate();

    // ascending-p table list covering every odd prime below sieve_pmax
    std::vector<const SieveTable*> base;
    {
        std::vector<const SieveTable*> sorted;
        sorted.reserve(tables.size());
        for (const SieveTable& t : tables) sorted.push_back(&t);
        std::sort(sorted.begin(), sorted.end(),
                  [](const SieveTable* a, const SieveTable* b) { return a->p() < b->p(); });
        auto needed = primes_in(3, static_cast<std::int64_t>(cfg.sieve_pmax) - 1);
        std::size_t j = 0;
        for (std::uint64_t p : needed) {
            while (j < sorted.size() && sorted[j]->p() < p) ++j;
            if (j == sorted.size() || sorted[j]->p() != p)
                throw MissingTablesError("no sieve table for p = " + std::to_string(p) +
                                         " (tables do not cover sieve_pmax)");
            base.push_back(sorted[j]);
        }
    }

    ShardReport rep;
    std::set<std::uint32_t> completed;
    std::uint32_t resume_m = 0;
    std::uint64_t resume_x = 0;
    const std::uint64_t cfg_hash = cfg.config_hash();
    if (opts.resume_from) {
        const Checkpoint& ck = *opts.resume_from;
        if (ck.config_hash != cfg_hash)
            throw CheckpointError("checkpoint was written by a different configuration");
        completed.insert(ck.completed_m.begin(), ck.completed_m.end());
        resume_m = ck.current_m;
        resume_x = ck.next_x;
        if (resume_m == 0) return rep;  // run already complete
    }

    const std::vector<std::uint32_t> m_list = m_candidates(cfg);
    if (resume_m && std::find(m_list.begin(), m_list.end(), resume_m) == m_list.end())
        throw CheckpointError("checkpoint m = " + std::to_string(resume_m) +
                              " is not in the search plan");

    const std::uint64_t B = cfg.x_block;
    const std::uint64_t x0 = std::max<std::uint32_t>(2, cfg.x_min);
    const std::uint32_t scount = cfg.shard.count;
    const std::uint32_t sindex = cfg.shard.index - 1;

    std::vector<std::uint64_t> kills_total(base.size(), 0);

    auto write_checkpoint = [&](std::uint32_t cur_m, std::uint64_t next_x) {
        if (opts.checkpoint_path.empty()) return;
        Checkpoint ck;
        ck.config_hash = cfg_hash;
        ck.current_m = cur_m;
        ck.next_x = next_x;
        ck.completed_m.assign(completed.begin(), completed.end());
        save_checkpoint(opts.checkpoint_path, ck);
    };
    auto next_pending_m = [&](std::size_t after) -> std::uint32_t {
        for (std::size_t i = after; i < m_list.size(); ++i)
            if (!completed.count(m_list[i])) return m_list[i];
        return 0;
    };

    bool stopped = false;
    for (std::size_t mi = 0; mi < m_list.size() && !stopped; ++mi) {
        const std::uint32_t m = m_list[mi];
        if (completed.count(m)) continue;
        if (resume_m && m != resume_m) {
            // checkpoint points into a later m; anything earlier was never
            // part of this plan state
            throw CheckpointError("checkpoint skipped over pending m = " + std::to_string(m));
        }

        // an m with no admissible n below it contributes nothing; skip the
        // x sweep entirely (the structural case m <= n_floor)
        {
            const std::uint32_t n_floor = cfg.filters.use_n_ge_7 ? 7 : 3;
            bool any_n = false;
            for (std::uint32_t n = n_floor; n < m && !any_n; ++n)
                any_n = is_prime_small(n);
            if (!any_n) {
                if (resume_m == m) {
                    resume_m = 0;
                    resume_x = 0;
                }
                completed.insert(m);
                write_checkpoint(next_pending_m(mi + 1), 0);
                continue;
            }
        }

        const XRange xr = x_range(m, cfg);

        std::vector<std::uint32_t> trial(base.size());
        std::iota(trial.begin(), trial.end(), 0);
        if (cfg.adaptive_order)
            std::stable_sort(trial.begin(), trial.end(), [&](std::uint32_t a, std::uint32_t b) {
                return kills_total[a] > kills_total[b];
            });

        const std::vector<std::uint32_t> nprimes = primes_below(m);

        // this shard's block indices form { g : g = sindex (mod scount) }
        std::uint64_t g = sindex;
        if (resume_m == m) {
            if (resume_x != 0) {
                if ((resume_x - x0) % B != 0)
                    throw CheckpointError("checkpoint next_x is not on a block boundary");
                std::uint64_t g0 = (resume_x - x0) / B;
                if (g0 % scount != sindex)
                    throw CheckpointError("checkpoint next_x is not in this shard");
                g = g0;
            }
            resume_m = 0;
            resume_x = 0;
        }

        auto block_live = [&](std::uint64_t gi) { return !xr.empty() && x0 + gi * B <= xr.hi; };

        std::deque<std::pair<std::uint64_t, std::future<BlockResult>>> window;
        const unsigned width = std::max(1u, opts.threads);
        const auto policy = opts.threads > 1 ? std::launch::async : std::launch::deferred;
        auto launch = [&]() {
            if (!block_live(g)) return;
            const std::uint64_t gi = g;
            const std::uint64_t blo = std::max(xr.lo, x0 + gi * B);
            const std::uint64_t bhi = std::min(xr.hi, x0 + gi * B + (B - 1));
            window.emplace_back(gi, std::async(policy, process_block, m, gi, blo, bhi,
                                               std::cref(cfg), std::cref(base), std::cref(trial),
                                               std::cref(nprimes)));
            g += scount;
        };
        for (unsigned i = 0; i < width; ++i) launch();

        while (!window.empty() && !stopped) {
            BlockResult res = window.front().second.get();
            window.pop_front();
            launch();
            for (const std::string& line : res.records) sink.emit(line);
            for (auto& s : res.solutions) rep.solutions.push_back(std::move(s));
            for (const auto& c : res.survivors) rep.survivors.push_back(c);
            rep.ruled_out_count += res.ruled_out;
            ++rep.blocks_processed;
            for (std::size_t i = 0; i < kills_total.size(); ++i) kills_total[i] += res.kills[i];

            const std::uint64_t g_next = res.g + scount;
            if (block_live(g_next)) {
                write_checkpoint(m, x0 + g_next * B);
            } else {
                completed.insert(m);
                write_checkpoint(next_pending_m(mi + 1), 0);
            }
            if (opts.keep_going && !opts.keep_going()) {
                stopped = true;
                rep.completed = false;
            }
        }
        if (!stopped && !completed.count(m)) {
            // no blocks belonged to this shard for this m
            completed.insert(m);
            write_checkpoint(next_pending_m(mi + 1), 0);
        }
    }
    if (!stopped && m_list.empty()) write_checkpoint(0, 0);
    return rep;
}

}  // namespace gm
