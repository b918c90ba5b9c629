#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace kkcoeff {

// One verified statement.  The anchor is the mathematical identity the check
// instantiates ("K_0(C_q) = Z/q", "q . H^(q)_n = 0", ...); a check without
// one is rejected, which is the report schema's self-validation.
struct CheckItem {
    std::string name;
    std::string anchor;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;  // echoed, in order
    std::vector<CheckItem> items;

    // Throws std::logic_error on an empty anchor.
    void add(std::string name, std::string anchor, bool pass, std::string detail = "");

    std::size_t failed() const;
    bool all_pass() const { return failed() == 0; }

    // Identical reports serialize to identical bytes; no environment leaks
    // into either format.
    std::string to_json() const;
    void print_text(std::ostream& out) const;
};

}  // namespace kkcoeff
