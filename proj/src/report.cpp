#include "goormaghtigh/report.hpp"

#include <fstream>

#include <json.hpp>

#include "goormaghtigh/oracle.hpp"
#include "goormaghtigh/search.hpp"

namespace gm {

using ojson = nlohmann::ordered_json;

std::string solution_record(const Solution& s) {
    ojson j;
    j["type"] = "solution";
    j["x"] = s.x;
    j["m"] = s.m;
    j["y"] = s.y.str();
    j["n"] = s.n;
    j["N"] = s.value.str();
    j["n_prime"] = s.n_prime;
    j["N_probable_prime"] = s.value_probable_prime;
    return j.dump();
}

std::string survivor_record(const Candidate& c) {
    ojson j;
    j["type"] = "survivor";
    j["m"] = c.m;
    j["x"] = std::to_string(c.x);
    j["n"] = c.n;
    return j.dump();
}

std::string progress_record(std::uint32_t m, std::uint64_t x_block_start,
                            std::uint64_t x_block_end) {
    ojson j;
    j["type"] = "progress";
    j["m"] = m;
    j["x_block_start"] = x_block_start;
    j["x_block_end"] = x_block_end;
    return j.dump();
}

std::string stats_record(std::uint32_t p, std::uint64_t kills) {
    ojson j;
    j["type"] = "stats";
    j["p"] = p;
    j["kills"] = kills;
    return j.dump();
}

std::string hit_record(const RepunitHit& h) {
    ojson j;
    j["type"] = "hit";
    j["N"] = h.value.str();
    ojson reps = ojson::array();
    for (const auto& [base, length] : h.representations) {
        ojson r;
        r["base"] = base;
        r["length"] = length;
        reps.push_back(std::move(r));
    }
    j["representations"] = std::move(reps);
    return j.dump();
}

std::uint64_t fnv1a_64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace {

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is)
        throw CheckpointError("cannot open checkpoint: " + path.string());
    ojson j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw CheckpointError("malformed checkpoint " + path.string() + ": " + e.what());
    }
    Checkpoint ck;
    try {
        ck.config_hash = std::stoull(j.at("config_hash").get<std::string>(), nullptr, 16);
        ck.current_m = j.at("m").get<std::uint32_t>();
        ck.next_x = Natural(j.at("next_x").get<std::string>()).to_u64();
        ck.completed_m = j.at("completed_m").get<std::vector<std::uint32_t>>();
    } catch (const std::exception& e) {
        throw CheckpointError("malformed checkpoint " + path.string() + ": " + e.what());
    }
    return ck;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ck) {
    ojson j;
    j["config_hash"] = hash_hex(ck.config_hash);
    j["m"] = ck.current_m;
    j["next_x"] = std::to_string(ck.next_x);
    j["completed_m"] = ck.completed_m;

    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        if (!os)
            throw CheckpointError("cannot write checkpoint: " + tmp.string());
        os << j.dump() << '\n';
        if (!os.flush())
            throw CheckpointError("cannot write checkpoint: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw CheckpointError("cannot replace checkpoint " + path.string() + ": " + ec.message());
}

}  // namespace gm
