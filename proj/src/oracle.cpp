#include "goormaghtigh/oracle.hpp"

#include <algorithm>
#include <queue>

namespace gm {

namespace {

struct StreamHead {
    Natural value;
    std::uint64_t base;
    std::uint32_t length;
};

struct HeadGreater {
    bool operator()(const StreamHead& a, const StreamHead& b) const {
        if (a.value != b.value) return a.value > b.value;
        if (a.base != b.base) return a.base > b.base;
        return a.length > b.length;
    }
};

}  // namespace

std::vector<RepunitHit> oracle_enumerate(const Natural& limit) {
    std::vector<RepunitHit> hits;
    // one stream per length k >= 3: f_k(2) < f_k(3) < ...; merge ascending
    std::priority_queue<StreamHead, std::vector<StreamHead>, HeadGreater> heap;
    for (std::uint32_t k = 3;; ++k) {
        Natural v = repunit_exact(2, k);
        if (v > limit) break;
        heap.push({std::move(v), 2, k});
    }
    while (!heap.empty()) {
        RepunitHit hit;
        hit.value = heap.top().value;
        while (!heap.empty() && heap.top().value == hit.value) {
            StreamHead head = heap.top();
            heap.pop();
            hit.representations.emplace_back(head.base, head.length);
            Natural next = repunit_exact(head.base + 1, head.length);
            if (!(next > limit)) heap.push({std::move(next), head.base + 1, head.length});
        }
        if (hit.representations.size() >= 2) {
            std::sort(hit.representations.begin(), hit.representations.end());
            hits.push_back(std::move(hit));
        }
    }
    return hits;
}

std::vector<RepunitHit> bateman_stemmler(const Natural& limit) {
    std::vector<RepunitHit> out;
    for (RepunitHit& hit : oracle_enumerate(limit)) {
        if (!is_probable_prime(hit.value)) continue;
        int prime_bases = 0;
        for (const auto& [base, length] : hit.representations)
            if (is_prime_small(base)) ++prime_bases;
        if (prime_bases >= 2) out.push_back(std::move(hit));
    }
    return out;
}

std::vector<Solution> mersenne_scan(std::uint32_t digits) {
    if (digits < 1)
        throw std::invalid_argument("mersenne_scan: digits must be >= 1");
    const Natural bound = Natural::pow10(digits);
    // 2^m - 1 < 10^digits  =>  m <= digits * log2(10) + 1
    const std::int64_t m_cap = static_cast<std::int64_t>(double(digits) * 3.3220) + 4;
    std::vector<Solution> out;
    for (std::uint64_t m : primes_in(2, m_cap)) {
        if (!(repunit_exact(2, static_cast<std::uint32_t>(m)) < bound)) break;
        for (std::uint32_t n = 3; n < m; ++n)
            if (auto sol = verify_candidate(static_cast<std::uint32_t>(m), 2, n))
                out.push_back(std::move(*sol));
    }
    return out;
}

}  // namespace gm
