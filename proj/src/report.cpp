#include "zsq/report.hpp"

namespace zsq {

using nlohmann::json;

json SearchReport::to_json() const {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["task"] = task;
    j["params"] = params;
    j["verdict"] = verdict();
    j["result"] = result;
    j["witnesses"] = witnesses;
    j["counterexamples"] = counterexamples;
    j["counters"] = json{{"nodes", nodes}, {"pruned", pruned}};
    j["seed"] = seed;
    j["notes"] = notes;
    return j;
}

json to_json(const ConjectureReport& r) {
    json j;
    j["matched"] = r.matched;
    if (r.matched) {
        j["item"] = r.item;
        j["basis"] = json::array({to_string(r.basis.first), to_string(r.basis.second)});
        json params = json::object();
        if (r.item == 1 || r.item == 2) {
            if (r.item == 1) params["appended"] = to_string(*r.appended);
            params["xs"] = r.xs;
            long long total = 0;
            for (int x : r.xs) total += x;
            if (r.modulus > 0) params["xs_sum_mod_n"] = static_cast<int>(total % r.modulus);
        } else if (r.item == 4) {
            params["x"] = r.x;
        }
        j["params"] = params;
    } else {
        j["item"] = nullptr;
        j["basis"] = nullptr;
        j["params"] = json::object();
    }
    j["canonical_form"] = r.canonical_form ? json(*r.canonical_form) : json(nullptr);
    return j;
}

json to_json(const BlockDecomposition& d) {
    json j;
    j["kind"] = to_string(d.kind);
    j["m"] = d.hom.multiplier();
    j["n"] = d.hom.image_modulus();
    j["k_m"] = d.k_m;
    j["k_n"] = d.k_n;
    j["g0"] = d.g0 ? json(to_string(*d.g0)) : json(nullptr);
    j["source"] = d.source.str();
    j["head"] = d.head.str();
    json blocks = json::array();
    for (const Sequence& w : d.blocks) blocks.push_back(w.str());
    j["blocks"] = blocks;
    j["assoc_index"] = d.assoc_index ? json(*d.assoc_index) : json(nullptr);
    return j;
}

json to_json(const DecompositionReport& r) {
    json checks = json::array();
    for (const DecompositionCheck& c : r.checks) {
        checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    return json{{"checks", checks}, {"all_pass", r.all_pass()}};
}

json to_json(const AssociatedSequence& a) {
    return json{{"sequence", a.seq.str()}, {"provenance", a.provenance}};
}

}  // namespace zsq
