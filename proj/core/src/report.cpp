#include "polychain/report.hpp"

#include <cstdio>
#include <sstream>

namespace polychain {

namespace {

std::uint64_t fnv64_fold(std::uint64_t h, std::string_view bytes) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

std::uint64_t fnv64(std::string_view bytes) {
    return fnv64_fold(1469598103934665603ull, bytes);
}

std::string fnv64_hex(std::string_view bytes) { return hex64(fnv64(bytes)); }

Json rat_json(const Rat& r) { return rat_to_string(r); }

Json certified_json(const CertifiedReal& v) {
    if (v.is_rational())
        return rat_json(v.rational_part());
    Json terms = Json::array();
    for (const auto& [radicand, coeff] : v.terms())
        terms.push_back({radicand.get_str(), rat_to_string(coeff)});
    auto iv = v.interval();
    Json j;
    j["terms"] = std::move(terms);
    j["interval"] = {iv.first, iv.second};
    return j;
}

Json mass_json(const MassReport& m) {
    Json j;
    j["value"] = certified_json(m.value);
    j["interval"] = {m.interval.first, m.interval.second};
    j["certified"] = m.certified;
    if (m.overlap_unknown)
        j["overlap_unknown"] = true;
    return j;
}

void RunReport::add_input(std::string_view bytes) {
    hash_state_ = fnv64_fold(hash_state_, bytes);
    inputs_hash = hex64(hash_state_);
}

Json RunReport::to_json() const {
    Json j;
    j["command"] = command;
    j["inputs_hash"] = inputs_hash.empty() ? hex64(hash_state_) : inputs_hash;
    j["results"] = results;
    if (!verdicts.empty()) {
        Json v = Json::object();
        for (const auto& [name, ok] : verdicts)
            v[name] = ok;
        j["verdicts"] = std::move(v);
    }
    if (include_timing)
        j["timing_s"] = elapsed_s;
    return j;
}

std::string RunReport::to_text() const {
    std::ostringstream os;
    os << "command: " << command << "\n";
    os << "inputs_hash: " << (inputs_hash.empty() ? hex64(hash_state_) : inputs_hash)
       << "\n";
    for (const auto& [key, value] : results.items())
        os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
           << "\n";
    for (const auto& [name, ok] : verdicts)
        os << name << ": " << (ok ? "pass" : "FAIL") << "\n";
    if (include_timing)
        os << "timing_s: " << elapsed_s << "\n";
    return os.str();
}

} // namespace polychain
