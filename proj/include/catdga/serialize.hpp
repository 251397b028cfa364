#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "catdga/dga.hpp"
#include "catdga/report.hpp"
#include "catdga/surfdga.hpp"

namespace catdga {

// Malformed or inconsistent input document.
struct DocumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Algebra document: name, field (prime p or "rational"), hbar, basis with
// blocks, idempotents, products as [i, j, [[k, "c"], ...]] and d as
// [i, [[k, "c"], ...]]. Coefficients are decimal strings.
nlohmann::json algebra_to_json(const DgAlgebra& a);
DgAlgebra algebra_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const Report& r);

// {segments, matching, n_singular}, 1-based points.
nlohmann::json diagram_to_json(const ArcDiagram& d);
ArcDiagram diagram_from_json(const nlohmann::json& j);

// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const nlohmann::json& j);
nlohmann::json parse_document(const std::string& text);

}  // namespace catdga
