#pragma once

#include <string>
#include <utility>
#include <vector>

namespace vcut {

/// Outcome of a structural validation: a list of named violations plus measured facts.
struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::pair<std::string, std::string>> facts;

    bool ok() const noexcept { return violations.empty(); }
    void violation(std::string what) { violations.push_back(std::move(what)); }
    void fact(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }

    bool has_violation(const std::string& prefix) const {
        for (const auto& v : violations)
            if (v.rfind(prefix, 0) == 0) return true;
        return false;
    }

    std::string fact_value(const std::string& key) const {
        for (const auto& [k, v] : facts)
            if (k == key) return v;
        return {};
    }
};

}  // namespace vcut
