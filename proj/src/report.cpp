#include "kkcoeff/report.hpp"

#include <json.hpp>

#include <stdexcept>

namespace kkcoeff {

void Report::add(std::string name, std::string anchor, bool pass, std::string detail) {
    if (anchor.empty())
        throw std::logic_error("report: check '" + name + "' carries no anchor");
    items.push_back({std::move(name), std::move(anchor), pass, std::move(detail)});
}

std::size_t Report::failed() const {
    std::size_t n = 0;
    for (const CheckItem& c : items)
        if (!c.pass) ++n;
    return n;
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["command"] = command;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = std::move(cfg);
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const CheckItem& c : items) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["anchor"] = c.anchor;
        e["pass"] = c.pass;
        if (!c.detail.empty()) e["detail"] = c.detail;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    j["summary"] = {{"total", items.size()},
                    {"passed", items.size() - failed()},
                    {"failed", failed()},
                    {"pass", all_pass()}};
    return j.dump(2) + "\n";
}

void Report::print_text(std::ostream& out) const {
    out << "== " << command;
    for (const auto& [k, v] : config) out << "  " << k << "=" << v;
    out << "\n";
    for (const CheckItem& c : items) {
        out << (c.pass ? "PASS  " : "FAIL  ") << c.name << "  |  " << c.anchor;
        if (!c.detail.empty()) out << "  |  " << c.detail;
        out << "\n";
    }
    out << (items.size() - failed()) << "/" << items.size() << " checks passed\n";
}

}  // namespace kkcoeff
