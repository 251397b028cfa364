#include "catdga/report.hpp"

#include <sstream>

namespace catdga {

const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::info: return "info";
    }
    return "?";
}

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::paper: return "PAPER";
        case Provenance::trivial: return "TRIVIAL";
        case Provenance::derived: return "DERIVED";
    }
    return "?";
}

void Report::add(std::string name, bool ok, std::string expected, std::string got, Provenance prov) {
    checks.push_back({std::move(name), ok ? Status::pass : Status::fail, std::move(expected), std::move(got), prov});
}

void Report::info(std::string name, std::string got, Provenance prov) {
    checks.push_back({std::move(name), Status::info, "", std::move(got), prov});
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (auto c : other.checks) {
        if (!prefix.empty()) c.name = prefix + c.name;
        checks.push_back(std::move(c));
    }
}

bool Report::passed() const {
    for (const auto& c : checks)
        if (c.status == Status::fail) return false;
    return true;
}

std::string Report::summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << "[" << to_string(c.status) << "] " << c.name;
        if (!c.expected.empty() || !c.got.empty()) os << " expected=" << c.expected << " got=" << c.got;
        os << "\n";
    }
    return os.str();
}

const Check* Report::find(const std::string& prefix) const {
    for (const auto& c : checks)
        if (c.name.compare(0, prefix.size(), prefix) == 0) return &c;
    return nullptr;
}

}  // namespace catdga
