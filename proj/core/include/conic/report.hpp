#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace conic {

struct Check {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
    double elapsed_ms = 0.0;
};

struct Report {
    std::vector<Check> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    template <typename A, typename B>
    void add(const std::string& name, const A& expected, const B& actual, double ms = 0.0) {
        std::ostringstream e, a;
        e << expected;
        a << actual;
        checks.push_back({name, e.str(), a.str(), e.str() == a.str(), ms});
    }
    void add_flag(const std::string& name, bool ok, double ms = 0.0) {
        checks.push_back({name, "pass", ok ? "pass" : "fail", ok, ms});
    }
};

}  // namespace conic
