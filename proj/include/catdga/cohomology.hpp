#pragma once

#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <vector>

#include "catdga/dga.hpp"
#include "catdga/linalg.hpp"

namespace catdga {

using Bidegree = std::pair<int, int>;  // (cohdeg, qdeg); qdeg 0 when ungraded

// A finite bigraded cochain complex on an explicit basis.
struct GradedComplex {
    Field field = Field::prime(3);
    std::vector<int> cohdeg;
    std::vector<int> qdeg;
    std::vector<SparseVec> diff;  // image of each basis vector

    int size() const { return static_cast<int>(cohdeg.size()); }
};

// Cohomology dimensions per bidegree (zero entries omitted).
std::map<Bidegree, int> cohomology_dims(const GradedComplex& c);
// d^2 = 0 and d of bidegree (1, 0).
bool is_complex(const GradedComplex& c);

// Restriction of (A, d) to the span of the given basis ids (which must be
// closed under d).
GradedComplex complex_of(const DgAlgebra& a, const std::vector<int>& ids);
std::map<Bidegree, int> cohomology_dims(const DgAlgebra& a);

// 1_e A 1_f with its restricted differential.
struct IdempotentSlice {
    int left = 0;
    int right = 0;
    std::vector<int> ids;  // global basis ids, increasing
    GradedComplex complex;

    Element to_global(const SparseVec& local) const;
    SparseVec to_local(const Element& x) const;  // throws if x leaves the slice
};
IdempotentSlice idempotent_truncation(const DgAlgebra& a, int e, int f);
// (e,f) x (f,g) -> (e,g) in local coordinates.
SparseVec compose(const DgAlgebra& a, const IdempotentSlice& x, const IdempotentSlice& y, const IdempotentSlice& xy,
                  const SparseVec& u, const SparseVec& v);

struct CellKey {
    int left;
    int right;
    int cohdeg;
    int qdeg;
    auto operator<=>(const CellKey&) const = default;
};

struct CohomologyClass {
    Element rep;
    CellKey cell;
};

// Cohomology of a dga over F_p, computed block by block and bidegree by
// bidegree, with induced products.
class CohomologyRing {
public:
    explicit CohomologyRing(const DgAlgebra& a);

    const DgAlgebra& algebra() const { return *a_; }
    const std::vector<CohomologyClass>& classes() const { return classes_; }
    int dim() const { return static_cast<int>(classes_.size()); }
    std::map<Bidegree, int> dims() const;
    std::vector<int> classes_in(const CellKey& k) const;

    // Class ids are global; `z` must be a cycle lying in a single cell.
    SparseVec class_of(const Element& z) const;
    bool is_boundary(const Element& z) const;
    std::optional<Element> preimage(const Element& z) const;
    // [x][y] in class coordinates.
    SparseVec product(int x, int y) const;
    SparseVec product_of(const SparseVec& x, const SparseVec& y) const;
    Element lift(const SparseVec& classes) const;
    // Cell of a nonzero element; throws unless homogeneous in block and degree.
    CellKey cell_of(const Element& z) const;

private:
    struct Cell {
        std::vector<int> ids;  // global basis ids, increasing
        std::unique_ptr<HomologyReducer> reducer;
        int first_class = 0;
    };
    const Cell* find_cell(const CellKey& k) const;
    SparseVec to_local(const Cell& c, const Element& z) const;
    Element to_global(const Cell& c, const SparseVec& v) const;

    const DgAlgebra* a_;
    std::map<CellKey, Cell> cells_;
    std::vector<CohomologyClass> classes_;
};

struct MasseyResult {
    bool nontrivial = false;
    Element g;
    Element f;
    Element representative;  // g c + (-1)^{|a|} a f
    SparseVec class_coords;
    int indeterminacy_dim = 0;
};

// <a, b, c> with d g = ab and d f = -bc. Throws std::invalid_argument if an
// input is not closed or if ab or bc is not exact.
MasseyResult massey_triple(const CohomologyRing& h, const Element& a, const Element& b, const Element& c);

struct MasseyWitness {
    int a, b, c;  // class ids
    MasseyResult result;
};

struct MasseySearchOptions {
    std::size_t max_witnesses = 1;
    // Skip classes of cohomological degree 0 in the middle slot when true; a
    // degree-0 middle class can still give nontrivial products, so the
    // default searches everything.
    bool skip_degree0_middle = false;
};

std::vector<MasseyWitness> massey_search(const CohomologyRing& h, const MasseySearchOptions& opt = {});

}  // namespace catdga
