#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "catdga/cohomology.hpp"
#include "catdga/dga.hpp"
#include "catdga/hecke.hpp"
#include "catdga/report.hpp"

namespace catdga {

using Subset = std::vector<int>;  // sorted, 1-based

// All k-subsets of {1..n} in lexicographic order.
std::vector<Subset> k_subsets(int n, int k);
int norm(const Subset& s);                     // sum of elements
bool subset_leq(const Subset& s, const Subset& t);  // s_i <= t_i for all i

// phi: S -> T with phi(s) >= s, stored as phi[a] = position in T of the image
// of S[a].
struct NondecBij {
    Subset S, T;
    std::vector<int> phi;

    static std::optional<NondecBij> make(Subset S, Subset T, std::vector<int> phi);
    int image(int a) const { return T[phi[a]]; }
    int preimage_of(int t) const;  // element of S mapped to t
    // Right endpoints of increasing strands.
    Subset increasing_ends() const;
    // (i, j) in T with i < j and phi^{-1}(i) > phi^{-1}(j).
    std::vector<std::pair<int, int>> inversions() const;
    // phi with the images of phi^{-1}(i), phi^{-1}(j) exchanged.
    NondecBij resolved(int i, int j) const;
    Perm as_perm() const { return Perm(phi); }
    bool operator==(const NondecBij& o) const { return S == o.S && T == o.T && phi == o.phi; }
};

struct StrandGenerator {
    NondecBij bij;
    Subset dots;  // ascending subset of increasing_ends()
    int cohdeg() const { return static_cast<int>(dots.size()); }
    int qdeg() const;  // -2(|D| + |Inv|) + |T| - |S| with |S| = sum
    std::string label() const;
};

// Canonical sign of an ordered dot list: returns {sorted list, sign}, or
// nullopt for a repeated dot (the star element).
std::optional<std::pair<Subset, int>> canonical_dots(const std::vector<int>& ordered);

std::vector<StrandGenerator> enumerate_basis(int n, int k);
// Independent count by recursion over strand assignments.
long long count_basis_recursive(int n, int k);

struct StrandAlgebra {
    int n = 0, k = 0;
    bool nil = false;
    std::vector<Subset> subsets;  // idempotent e is 1_{subsets[e]}
    std::vector<StrandGenerator> gens;
    DgAlgebra algebra{"", Field::prime(3)};
    std::map<std::tuple<int, int, std::vector<int>, Subset>, int> index;

    int idempotent_of(const Subset& s) const;
    std::optional<int> find(const NondecBij& b, const Subset& dots) const;
};

struct StrandOptions {
    Scalar hbar = 1;
    std::optional<std::uint64_t> shuffle_seed;
};

// Products and d through the normalizing embedding of each 1_S A 1_T into R_k.
StrandAlgebra build_rnk(int n, int k, const Field& f, const StrandOptions& opt = {});
StrandAlgebra build_rnk_nil(int n, int k, const Field& f, const StrandOptions& opt = {});

// The nil product by the closed formula.
std::optional<std::pair<StrandGenerator, int>> closed_form_product(const StrandGenerator& x, const StrandGenerator& y);
// d by the resolution-of-crossings formula; with only_length_one, only
// resolutions lowering |Inv| by exactly one are kept.
Element literal_differential(const StrandAlgebra& a, int id, bool only_length_one);

// Checks of the nil algebra against the closed formula and of both
// differentials against the literal formula.
Report verify_strand_construction(const StrandAlgebra& a);
Report verify_hom_cohomology(const StrandAlgebra& a);

struct MasseyWitnessReport {
    Report report;
    std::optional<MasseyWitness> witness;
};
MasseyWitnessReport massey_nonformality_witness(const StrandAlgebra& a);

}  // namespace catdga
