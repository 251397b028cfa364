#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catdga/field.hpp"
#include "catdga/report.hpp"

namespace catdga {

struct BasisElement {
    std::string label;
    int cohdeg = 0;
    std::optional<int> qdeg;
};

using Element = SparseVec;

// Finite-dimensional dg algebra on an explicit basis. Products of basis
// elements are stored sparsely; absent entries are zero. Every basis element
// belongs to one block 1_e A 1_f of the idempotent decomposition.
class DgAlgebra {
public:
    DgAlgebra(std::string name, Field field) : name_(std::move(name)), field_(field) {}

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const Field& field() const { return field_; }
    const std::optional<Scalar>& hbar() const { return hbar_; }
    void set_hbar(std::optional<Scalar> h) { hbar_ = h; }

    int dim() const { return static_cast<int>(basis_.size()); }
    bool has_qdeg() const { return has_qdeg_; }
    const BasisElement& basis(int i) const { return basis_[i]; }
    const std::vector<BasisElement>& basis() const { return basis_; }
    int add_basis(BasisElement b, int left_idem, int right_idem);
    std::optional<int> find_label(const std::string& label) const;

    // Idempotent e is the sum of the listed basis elements.
    int add_idempotent(std::vector<int> members);
    int num_idempotents() const { return static_cast<int>(idempotents_.size()); }
    const std::vector<int>& idempotent(int e) const { return idempotents_[e]; }
    Element idempotent_element(int e) const;
    Element unit() const;
    int left_idem(int i) const { return left_[i]; }
    int right_idem(int i) const { return right_[i]; }
    // Basis ids in 1_e A 1_f, increasing.
    const std::vector<int>& block(int e, int f) const;
    // Basis ids with left idempotent e.
    std::vector<int> left_slice(int e) const;

    void set_product(int i, int j, Element v);
    const Element& product(int i, int j) const;
    const std::vector<std::pair<int, Element>>& product_row(int i) const { return rows_[i]; }
    void set_diff(int i, Element v);
    const Element& diff(int i) const { return diff_[i]; }

    Element multiply(const Element& x, const Element& y) const;
    Element d(const Element& x) const;
    // Cohomological degree of a homogeneous element (throws if mixed or zero).
    int cohdeg_of(const Element& x) const;
    std::optional<int> qdeg_of(const Element& x) const;
    std::string format(const Element& x) const;

private:
    void ensure_blocks() const;

    std::string name_;
    Field field_;
    std::optional<Scalar> hbar_;
    bool has_qdeg_ = false;
    std::vector<BasisElement> basis_;
    std::map<std::string, int> label_index_;
    std::vector<int> left_, right_;
    std::vector<std::vector<int>> idempotents_;
    std::vector<std::vector<std::pair<int, Element>>> rows_;
    std::vector<Element> diff_;
    mutable std::vector<std::vector<int>> blocks_;
    mutable bool blocks_valid_ = false;
};

struct VerifyOptions {
    bool assoc = true;
    bool unit = true;
    bool grading = true;
    bool dsq = true;
    bool leibniz = true;
    // Full triple check when the number of composable triples is below this
    // bound; above it associativity is checked against generators (see
    // verify_dga_with_generators).
    long long full_assoc_limit = 400'000'000;
};

Report verify_dga(const DgAlgebra& a, const VerifyOptions& opt = {});

// Associativity via (xy)g = x(yg) for all basis x, y and g in `generators`,
// together with a certificate that every basis element is a left-normed
// product of generators (`words[i]` lists generator basis ids, empty for
// idempotents). By induction this implies associativity on all triples.
struct GeneratorCertificate {
    std::vector<int> generators;
    std::vector<std::vector<int>> words;
};
Report verify_dga(const DgAlgebra& a, const GeneratorCertificate& cert, const VerifyOptions& opt = {});

}  // namespace catdga
