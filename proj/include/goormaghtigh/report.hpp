#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gm {

struct Solution;
struct Candidate;
struct RepunitHit;

/// Destination for JSONL report records, one complete line per emit.
class RecordSink {
public:
    virtual ~RecordSink() = default;
    virtual void emit(std::string_view line) = 0;
};

class StreamSink : public RecordSink {
public:
    explicit StreamSink(std::ostream& os) : os_(os) {}
    void emit(std::string_view line) override {
        os_ << line << '\n';
        os_.flush();
    }

private:
    std::ostream& os_;
};

class VectorSink : public RecordSink {
public:
    void emit(std::string_view line) override { lines.emplace_back(line); }
    std::vector<std::string> lines;
};

// record builders (compact JSON, fixed key order)
std::string solution_record(const Solution& s);
std::string survivor_record(const Candidate& c);
std::string progress_record(std::uint32_t m, std::uint64_t x_block_start,
                            std::uint64_t x_block_end);
std::string stats_record(std::uint32_t p, std::uint64_t kills);
std::string hit_record(const RepunitHit& h);

/// 64-bit FNV-1a, used to fingerprint the canonical config text.
std::uint64_t fnv1a_64(std::string_view text);

class CheckpointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Search progress marker, written atomically at x-block boundaries.
/// current_m = 0 means the shard completed; next_x = 0 means "start of m".
struct Checkpoint {
    std::uint64_t config_hash = 0;
    std::uint32_t current_m = 0;
    std::uint64_t next_x = 0;
    std::vector<std::uint32_t> completed_m;
};

Checkpoint load_checkpoint(const std::filesystem::path& path);
/// Write-temp-then-rename so readers never observe a partial file.
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ck);

}  // namespace gm
