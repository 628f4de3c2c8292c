#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "zsq/decompose.hpp"
#include "zsq/structure.hpp"

namespace zsq {

inline constexpr int kReportSchemaVersion = 1;

/// Result envelope for search and verification runs. Serialization is
/// deterministic: identical parameters and seed give identical bytes, so
/// wall-clock timing stays out of to_json().
struct SearchReport {
    std::string task;
    nlohmann::json params = nlohmann::json::object();
    bool pass = true;
    nlohmann::json result = nlohmann::json::object();
    std::vector<std::string> witnesses;
    std::vector<std::string> counterexamples;
    std::uint64_t nodes = 0;
    std::uint64_t pruned = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;
    double elapsed_ms = 0.0;

    std::string verdict() const { return pass ? "pass" : "fail"; }
    nlohmann::json to_json() const;
};

nlohmann::json to_json(const ConjectureReport& r);
nlohmann::json to_json(const BlockDecomposition& d);
nlohmann::json to_json(const DecompositionReport& r);
nlohmann::json to_json(const AssociatedSequence& a);

}  // namespace zsq
