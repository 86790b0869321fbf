#pragma once

#include <string>
#include <vector>

namespace mixfrob {

// Named pass/fail residuals collected by the checkers.  A residual is "0" when
// the identity holds exactly; otherwise detail says where it first failed.
struct Check {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct Certificate {
    std::vector<Check> checks;

    void add(std::string name, bool ok, std::string detail = {}) {
        checks.push_back({std::move(name), ok, std::move(detail)});
    }
    void merge(const std::string& prefix, const Certificate& other) {
        for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.ok, c.detail});
    }
    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
    // First failing check, for error messages.
    std::string first_failure() const {
        for (const auto& c : checks)
            if (!c.ok) return c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
        return {};
    }
};

}  // namespace mixfrob
