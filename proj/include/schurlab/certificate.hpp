/**
 * @file certificate.hpp
 * @brief Verification reports.
 */
#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace schurlab {

inline constexpr const char* kVersion = "schurlab 1.0.0";

struct Certificate {
    std::string theorem;
    nlohmann::json parameters = nlohmann::json::object();
    bool pass = true;
    long long checked = 0;
    nlohmann::json witnesses = nlohmann::json::array();

    /// Records one check; failures keep up to 20 witnesses.
    void check(bool ok, const nlohmann::json& witness) {
        ++checked;
        if (ok) return;
        pass = false;
        if (witnesses.size() < 20) witnesses.push_back(witness);
    }

    void merge(const Certificate& o) {
        checked += o.checked;
        if (!o.pass) pass = false;
        for (const auto& w : o.witnesses)
            if (witnesses.size() < 20) witnesses.push_back(w);
    }

    nlohmann::json to_json() const {
        return {{"theorem", theorem},
                {"parameters", parameters},
                {"status", pass ? "pass" : "fail"},
                {"checked", checked},
                {"witnesses", witnesses},
                {"version", kVersion}};
    }
};

}  // namespace schurlab
