#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "catdga/cohomology.hpp"
#include "catdga/hecke.hpp"
#include "catdga/linalg.hpp"
#include "catdga/report.hpp"

namespace catdga {

using Exponents = std::vector<int>;

// Polynomial in x_1..x_n; deg_q(x_j) = 2.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(int nvars) : n_(nvars) {}
    static MultiPoly constant(int nvars, Scalar c);
    static MultiPoly monomial(int nvars, Exponents e, Scalar c = 1);
    static MultiPoly variable(int nvars, int j);  // x_j, 1-based
    static MultiPoly elementary(const Field& f, int nvars, int i);

    int nvars() const { return n_; }
    const std::map<Exponents, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Field& f, const Exponents& e, Scalar c);
    MultiPoly plus(const Field& f, const MultiPoly& o, Scalar scale = 1) const;
    MultiPoly times(const Field& f, const MultiPoly& o) const;
    // The transposition x_i <-> x_{i+1}.
    MultiPoly swapped(int i) const;
    bool operator==(const MultiPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

private:
    int n_ = 0;
    std::map<Exponents, Scalar> terms_;
};

MultiPoly divided_difference(const Field& f, int i, const MultiPoly& p);
std::vector<Exponents> monomials_of_degree(int nvars, int degree);

// xi_A (x) x^e in M_k = Lambda_k (x) Pol_k.
struct KoszulMonomial {
    unsigned mask = 0;
    Exponents x;
    auto operator<=>(const KoszulMonomial&) const = default;
};
using KoszulVec = std::map<KoszulMonomial, Scalar>;

// Basis and differential of M_k in one bidegree (cohdeg m, qdeg q).
struct KoszulSlice {
    int cohdeg = 0;
    int qdeg = 0;
    std::vector<KoszulMonomial> basis;
};

// Coordinates of a map of degree (c, q) on the basis of an EndSlice.
struct EndSliceMap {
    int cohdeg = 0;
    int qdeg = 0;
    SparseVec coords;
};

// M_k as a free Sym_k-module with basis beta = xi_A (x) x^a, a in the Artin
// set 0 <= a_i <= k - i, and Sym_k-linear endomorphisms one bidegree at a
// time.
class KoszulModel {
public:
    KoszulModel(int k, Field f);

    int k() const { return k_; }
    const Field& field() const { return f_; }
    static int cohdeg(const KoszulMonomial& m);
    static int qdeg(const KoszulMonomial& m);

    KoszulSlice slice(int m, int q) const;
    KoszulVec d(const KoszulVec& v) const;
    KoszulVec rho_xi(int j, const KoszulVec& v) const;
    KoszulVec rho_s(int i, const KoszulVec& v) const;
    // Action of the R_k^nil basis element s_w xi_A (engine id).
    KoszulVec rho(const HeckeExterior& nil, int id, const KoszulVec& v) const;
    KoszulVec rho(const HeckeExterior& nil, const SparseVec& x, const KoszulVec& v) const;

    const std::vector<KoszulMonomial>& sym_basis() const { return betas_; }
    // x^b = sum over Artin a of S_a x^a with S_a symmetric.
    const std::vector<std::pair<int, MultiPoly>>& sym_coordinates(const Exponents& b) const;

    // Basis of Hom_Sym(M, M) in degree (c, q): pairs (beta, monomial of M).
    int end_dim(int c, int q) const;
    SparseMatrix end_diff(int c, int q) const;  // D f = d f - (-1)^c f d
    // Coordinates of a Sym-linear operator given by its values on the betas.
    template <class Op>
    EndSliceMap end_coords(int c, int q, Op op) const;
    const std::vector<std::pair<int, KoszulMonomial>>& end_basis(int c, int q) const { return end_index(c, q).basis; }

private:
    struct EndIndex {
        std::vector<std::pair<int, KoszulMonomial>> basis;
        std::map<std::pair<int, KoszulMonomial>, int> index;
    };
    const EndIndex& end_index(int c, int q) const;
    void ensure_degree(int n) const;

    int k_;
    Field f_;
    std::vector<Exponents> artin_;
    std::vector<KoszulMonomial> betas_;
    std::map<Exponents, int> artin_index_;
    mutable std::map<Exponents, std::vector<std::pair<int, MultiPoly>>> coords_;
    mutable std::map<int, bool> solved_degree_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<EndIndex>> end_cache_;
    // incoming_[beta0] lists (beta, S) with beta0 appearing in d(beta) with
    // symmetric coefficient S (signs included).
    std::vector<std::vector<std::pair<int, MultiPoly>>> incoming_;
};

template <class Op>
EndSliceMap KoszulModel::end_coords(int c, int q, Op op) const {
    EndSliceMap m{c, q, {}};
    const EndIndex& ix = end_index(c, q);
    std::vector<Entry> raw;
    for (int b = 0; b < static_cast<int>(betas_.size()); ++b) {
        KoszulVec img = op(KoszulVec{{betas_[b], 1}});
        for (const auto& [mono, val] : img) {
            auto it = ix.index.find({b, mono});
            if (it == ix.index.end()) throw std::logic_error("operator leaves the expected bidegree");
            raw.push_back({it->second, val});
        }
    }
    m.coords = canonical(f_, std::move(raw));
    return m;
}

// rho applied to a generator as a family of slice maps.
EndSliceMap rho_generator(const KoszulModel& m, char gen, int index);

// Cohomology dims of the End complex for qdeg in [qcut, 0].
std::map<Bidegree, int> end_cohomology_dims(const KoszulModel& m, int qcut);

Report verify_koszul_duality(int k, int qcut, const Field& f);
inline int default_qcut(int k) { return -k * (k + 1) - 4; }

}  // namespace catdga
