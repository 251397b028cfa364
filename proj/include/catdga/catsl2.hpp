#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "catdga/complexes.hpp"
#include "catdga/linalg.hpp"
#include "catdga/report.hpp"
#include "catdga/strands.hpp"

namespace catdga {

// S in P_k(n) with the indexing of the E/F formulas (all indices 1-based).
struct SubsetState {
    int n = 0;
    Subset S;

    static SubsetState make(int n, Subset S);  // throws unless S is a subset of {1..n}
    int k() const { return static_cast<int>(S.size()); }
    int s(int i) const;       // s_1 > s_2 > ... > s_k
    int sc(int i) const;      // s^c_1 < ... < s^c_{n-k}
    Subset f(int i) const;    // S \ {s_i}
    Subset e(int i) const;    // S u {s^c_i}
    int m(int i) const { return n - s(i) - 2 * i + 2; }
    int l(int i) const { return sc(i) - 2 * i + 1; }
};

// "1101" for {1,2,4} in n = 4, and back.
std::string to_bits(int n, const Subset& s);
Subset from_bits(const std::string& bits);

using TensorVector = std::map<Subset, LaurentPoly>;

// E, F on V^{(x)n} in the tensor basis; column S is the image of v(S).
struct ClassicalAction {
    int n = 0;
    std::map<Subset, TensorVector> E, F;

    TensorVector apply(char which, const TensorVector& v) const;
};

ClassicalAction classical_ef_action(int n);
// Same matrices from the iterated coproduct acting factor by factor.
ClassicalAction coproduct_ef_action(int n);
Report verify_classical_action(int n);

enum class BimoduleKind { E, F };

// E: (R(n;k), R(n;k+1)) bimodule inside R(n+1;k+1)^nil.
// F: (R(n;k), R(n;k-1)) bimodule inside R(n+1;k)^nil.
struct BimoduleSlice {
    BimoduleKind which = BimoduleKind::F;
    int n = 0, k = 0;
    std::shared_ptr<const StrandAlgebra> left, right, ambient;
    std::vector<int> left_map, right_map;            // basis id -> ambient basis id
    std::vector<int> left_idem_map, right_idem_map;  // idempotent -> ambient idempotent
    std::vector<int> ids;                            // ambient ids spanning the bimodule
    Report report;
};

BimoduleSlice build_bimodule(int n, int k, BimoduleKind which, const Field& f);
// A as an (A, A) bimodule over itself.
BimoduleSlice identity_bimodule(std::shared_ptr<const StrandAlgebra> a);

// P(S) (x) B = 1_{lambda(S)} B, with the differential restricted from the
// ambient algebra. The right action is multiplication by right_map images.
struct TensorModule {
    int source = 0;        // idempotent of the left algebra
    std::vector<int> ids;  // ambient ids, increasing
    GradedComplex complex;

    Element to_global(const SparseVec& local) const;
    SparseVec to_local(const Element& x) const;
};
TensorModule module_tensor_bimodule(const BimoduleSlice& b, int source_idem);

struct FunctorResult {
    TensorModule plain;
    ProjectiveComplex complex;  // over the right algebra of the bimodule
    SparseMatrix iso;           // F only: expanded complex -> plain, columns per expanded basis vector
    Report report;
};

// Theorem complexes alone, over R(n;k-1)^nil resp. R(n;k+1)^nil.
ProjectiveComplex theorem_complex_F(const StrandAlgebra& right, const SubsetState& s);
ProjectiveComplex theorem_complex_E(const StrandAlgebra& right, const SubsetState& s);

FunctorResult functor_F_on_projective(const BimoduleSlice& b, const Subset& S);
FunctorResult functor_E_on_projective(const BimoduleSlice& b, const Subset& S);

// K_0 classes of the theorem complexes against (q - q^{-1}) E, F.
Report verify_k0(int n, const Field& f);

// Object shifts of the F complex with the norm term of the q-grading removed
// (the grading used by the worked P(1101) example).
std::vector<int> norm_free_shifts(const ProjectiveComplex& c, const SubsetState& s);

// The worked example P(1101) (x) F: objects, shifts and arrow pattern, with
// the printed sign of the r_{1,2} arrow as a negative control.
Report check_f_example(const Field& f);

}  // namespace catdga
