#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "furst/json_io.hpp"

namespace furst::verify {

enum class Level { fast, full };

inline constexpr std::uint64_t kDefaultSeed = 20240611;
inline constexpr int kCriterionCount = 12;

struct Options {
    Level level = Level::fast;
    bool inject_sign_flip = false;  // corrupts one exponential term in the lemma 5 scan
    std::uint64_t seed = kDefaultSeed;
};

struct Record {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::string detail;
    io::Json data = io::Json::object();  // observed values, including the frozen ones
};

struct Summary {
    std::vector<Record> records;
    bool pass() const;
    /// Observed values of every frozen regression constant.
    io::Json constants() const;
};

Record run_criterion(int id, const Options& options);
Summary verify_all(const Options& options);

io::Json to_json(const Record& r);
io::Json to_json(const Summary& s);

}  // namespace furst::verify
