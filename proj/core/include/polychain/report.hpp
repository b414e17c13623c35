#pragma once

#include "polychain/chain.hpp"
#include "polychain/jsonio.hpp"
#include "polychain/radical.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polychain {

// FNV-1a 64-bit hash; used to fingerprint command inputs in reports.
std::uint64_t fnv64(std::string_view bytes);
std::string fnv64_hex(std::string_view bytes);

// Exact value as JSON: rationals appear as "p/q" strings, irrational
// radical sums as {"terms": [[radicand, coeff]...], "interval": [lo, hi]}
// with both interval endpoints printed.
Json rat_json(const Rat& r);
Json certified_json(const CertifiedReal& v);
Json mass_json(const MassReport& m);

// Machine-readable run report.  Reports are deterministic for identical
// inputs and seeds: timing is only attached when explicitly enabled.
struct RunReport {
    std::string command;                 // subcommand echo
    std::string inputs_hash;             // fnv64 over canonical input bytes
    Json results = Json::object();       // exact rationals / intervals
    std::vector<std::pair<std::string, bool>> verdicts;
    bool include_timing = false;
    double elapsed_s = 0.0;

    void add_input(std::string_view bytes); // folds into inputs_hash
    Json to_json() const;
    // Plain-text rendering of the same content, one line per entry.
    std::string to_text() const;

private:
    std::uint64_t hash_state_ = 1469598103934665603ull; // FNV offset basis
};

} // namespace polychain
