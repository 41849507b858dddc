#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "goormaghtigh/tables.hpp"
#include "helpers.hpp"

using namespace gm;

namespace {

std::vector<char> read_all(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void write_all(const std::filesystem::path& p, const std::vector<char>& bytes) {
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_SUITE_BEGIN("tables");

TEST_CASE("exponent class representative") {
    // k = r(k) (mod p-1), 1 <= r(k) <= p-1
    for (std::uint32_t p : {3u, 5u, 11u}) {
        for (std::uint64_t k = 1; k <= 4ull * p; ++k) {
            std::uint32_t r = exponent_class(k, p);
            CHECK(r >= 1);
            CHECK(r <= p - 1);
            CHECK(k % (p - 1) == r % (p - 1));
        }
    }
    CHECK(exponent_class(53, 11) == 3);
    CHECK(exponent_class(13, 5) == 1);
}

TEST_CASE("build_table p=5 row and feasible sets") {
    // oracle: f_1..f_4(2) = 1, 3, 7, 15 reduced mod 5
    SieveTable t = SieveTable::build(5);
    CHECK(t.value(2, 1) == 1);
    CHECK(t.value(2, 2) == 3);
    CHECK(t.value(2, 3) == 2);
    CHECK(t.value(2, 4) == 0);
    // f_3(2)=7, f_3(3)=13, f_3(4)=21 mod 5 -> {2, 3, 1}
    CHECK(t.feasible_residues(3) == std::vector<std::uint32_t>{1, 2, 3});
    SieveTable t3 = SieveTable::build(3);
    CHECK(t3.feasible_residues(1) == std::vector<std::uint32_t>{1});
}

TEST_CASE("build_table rejects bad moduli") {
    CHECK_THROWS_AS(SieveTable::build(2), std::invalid_argument);
    CHECK_THROWS_AS(SieveTable::build(9), std::invalid_argument);
    CHECK_THROWS_AS(SieveTable::build(1), std::invalid_argument);
    CHECK_THROWS_AS(SieveTable::build(65537), std::invalid_argument);
}

TEST_CASE("lookup_a matches repunit_mod") {
    SieveTable t11 = SieveTable::build(11);
    CHECK(t11.lookup_a(7, 53) == 2);  // r(53)=3, f_3(7)=57=2 mod 11
    CHECK(t11.lookup_a(7, 53) == repunit_mod(7, 53, 11));
    CHECK(t11.lookup_a(0, 97) == 1);
    SieveTable t7 = SieveTable::build(7);
    CHECK(t7.lookup_a(1, 53) == 4);  // f = m mod p when x = 1

    for (std::uint64_t p : primes_in(3, 47)) {
        SieveTable t = SieveTable::build(static_cast<std::uint32_t>(p));
        for (std::uint32_t x = 0; x < p; ++x)
            for (std::uint64_t m = 1; m <= 3 * p; ++m)
                CHECK(t.lookup_a(x, m) == repunit_mod(x, m, p));
    }
}

TEST_CASE("n_feasible examples") {
    SieveTable t = SieveTable::build(5);
    CHECK(!t.n_feasible(0, 3));
    CHECK(t.n_feasible(2, 3));
    CHECK(t.n_feasible(3, 13));  // 13 = 3 mod 5: the y = 1 branch
    CHECK(t.n_feasible(1, 13));  // the y = 0 branch
    CHECK_THROWS_AS(t.n_feasible(5, 3), std::invalid_argument);
}

TEST_CASE("n_feasible is exactly the mod-p solvability predicate") {
    // brute force over all residues y in [0, p), including 0 and 1
    for (std::uint64_t p : primes_in(3, 47)) {
        SieveTable t = SieveTable::build(static_cast<std::uint32_t>(p));
        for (std::uint64_t n = 2; n <= 2 * p; ++n) {
            std::vector<bool> reachable(p, false);
            for (std::uint64_t y = 0; y < p; ++y) reachable[repunit_mod(y, n, p)] = true;
            for (std::uint32_t a = 0; a < p; ++a)
                CHECK(t.n_feasible(a, n) == reachable[a]);
        }
    }
}

TEST_CASE("stored residues equal direct evaluation") {
    for (const SieveTable& t : gmtest::default_tables()) {
        if (t.p() > 100) break;
        for (std::uint32_t b = 2; b <= t.p() - 1; ++b)
            for (std::uint32_t q = 1; q <= t.p() - 1; ++q)
                CHECK(t.value(b, q) == repunit_mod(b, q, t.p()));
    }
    // spot checks on the larger default tables
    std::mt19937_64 rng(20260810);
    const auto& tables = gmtest::default_tables();
    for (int i = 0; i < 10000; ++i) {
        const SieveTable& t = tables[rng() % tables.size()];
        std::uint32_t b = 2 + static_cast<std::uint32_t>(rng() % (t.p() - 2));
        std::uint32_t q = 1 + static_cast<std::uint32_t>(rng() % (t.p() - 1));
        CHECK(t.value(b, q) == repunit_mod(b, q, t.p()));
    }
}

TEST_CASE("table file round-trip") {
    auto dir = gmtest::scratch_dir();
    auto path = dir / "tables.bin";
    std::vector<SieveTable> tables;
    for (std::uint32_t p : {3u, 5u, 7u}) tables.push_back(SieveTable::build(p));
    save_tables(tables, path);
    auto loaded = load_tables(path);
    REQUIRE(loaded.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(loaded[i].p() == tables[i].p());
        CHECK(loaded[i].values() == tables[i].values());
        for (std::uint32_t r = 1; r < loaded[i].p(); ++r)
            CHECK(loaded[i].feasible_residues(r) == tables[i].feasible_residues(r));
    }
}

TEST_CASE("table file bytes are pinned") {
    auto dir = gmtest::scratch_dir();
    auto path = dir / "p3.bin";
    save_tables({SieveTable::build(3)}, path);
    // "GMSV", version 1, count 1, p = 3, residues f_1(2)=1, f_2(2)=0
    const std::vector<char> want = {'G', 'M', 'S', 'V', 1, 1, 0, 0, 0,
                                    3, 0, 0, 0, 1, 0, 0, 0};
    CHECK(read_all(path) == want);
}

TEST_CASE("table file failure kinds are distinct") {
    auto dir = gmtest::scratch_dir();
    auto good_path = dir / "good.bin";
    save_tables({SieveTable::build(3), SieveTable::build(5)}, good_path);
    auto bytes = read_all(good_path);

    auto expect_kind = [&](std::vector<char> mutated, TableIoError::Kind kind) {
        auto path = dir / "mutated.bin";
        write_all(path, mutated);
        try {
            load_tables(path);
            FAIL("expected a TableIoError");
        } catch (const TableIoError& e) {
            CHECK(e.kind() == kind);
        }
    };

    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    expect_kind(bad_magic, TableIoError::Kind::bad_magic);

    auto bad_version = bytes;
    bad_version[4] = 9;
    expect_kind(bad_version, TableIoError::Kind::bad_version);

    auto truncated = bytes;
    truncated.resize(bytes.size() - 3);
    expect_kind(truncated, TableIoError::Kind::truncated);
    expect_kind(std::vector<char>(bytes.begin(), bytes.begin() + 2),
                TableIoError::Kind::truncated);

    auto corrupt = bytes;
    corrupt[14] = 9;  // residue 9 >= p = 3
    expect_kind(corrupt, TableIoError::Kind::corrupt);

    CHECK_THROWS_AS(load_tables(dir / "does_not_exist.bin"), TableIoError);
}

TEST_CASE("build_default_tables covers the odd primes below pmax") {
    auto tables = build_default_tables(16);
    std::vector<std::uint32_t> ps;
    for (const auto& t : tables) ps.push_back(t.p());
    CHECK(ps == std::vector<std::uint32_t>{3, 5, 7, 11, 13});
}

TEST_SUITE_END();
