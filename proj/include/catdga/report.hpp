#pragma once

#include <string>
#include <utility>
#include <vector>

namespace catdga {

enum class Status { pass, fail, info };

// Where an expected value comes from: a published statement, an immediate
// consequence of definitions, or an independent computation in this code.
enum class Provenance { paper, trivial, derived };

const char* to_string(Status s);
const char* to_string(Provenance p);

struct Check {
    std::string name;
    Status status = Status::pass;
    std::string expected;
    std::string got;
    Provenance provenance = Provenance::derived;
};

struct Report {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<Check> checks;

    void add(std::string name, bool ok, std::string expected, std::string got,
             Provenance prov = Provenance::derived);
    void info(std::string name, std::string got, Provenance prov = Provenance::derived);
    void merge(const Report& other, const std::string& prefix = "");
    bool passed() const;
    // First check whose name starts with `prefix`, or nullptr.
    const Check* find(const std::string& prefix) const;
    std::string summary() const;
};

}  // namespace catdga
