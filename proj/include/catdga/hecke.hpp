#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catdga/dga.hpp"
#include "catdga/report.hpp"

namespace catdga {

// Permutation of {0..k-1} as a map from left positions to right positions.
// Appending the letter i to a word acts by w -> s_i o w.
class Perm {
public:
    explicit Perm(std::vector<int> images);
    static Perm identity(int k);
    static Perm from_word(int k, const std::vector<int>& word);  // letters 1..k-1

    int size() const { return static_cast<int>(w_.size()); }
    int operator()(int a) const { return w_[a]; }
    const std::vector<int>& images() const { return w_; }
    int length() const;
    Perm inverse() const;
    // s_i o w (swap the values i-1, i in one-line notation; i is 1-based).
    Perm left_swap(int i) const;
    // Whether s_i o w is longer than w.
    bool left_swap_increases(int i) const;
    std::vector<int> lehmer_code() const;
    // Canonical reduced word: lexicographically minimal (or maximal).
    std::vector<int> reduced_word(bool lex_max = false) const;
    bool operator==(const Perm& o) const { return w_ == o.w_; }
    bool operator<(const Perm& o) const { return w_ < o.w_; }

private:
    std::vector<int> w_;
};

// All permutations of size k in lexicographic order of one-line notation.
std::vector<Perm> all_perms(int k);

struct BuildOptions {
    // When set, internal enumeration and processing orders are shuffled with
    // this seed; the resulting algebra must not depend on it.
    std::optional<std::uint64_t> shuffle_seed;
    // Use the lexicographically maximal reduced words instead.
    bool alternate_words = false;
};

// Normal-form engine for H_k (x) Lambda_k with the twisted relations, or its
// associated graded (nil) version. Basis id = perm_index * 2^k + ximask.
class HeckeExterior {
public:
    HeckeExterior(int k, Field f, Scalar hbar, bool nil, bool alternate_words = false);

    int k() const { return k_; }
    bool nil() const { return nil_; }
    const Field& field() const { return f_; }
    Scalar hbar() const { return hbar_; }
    int dim() const { return static_cast<int>(perms_.size()) << k_; }
    int id(int perm_index, unsigned mask) const { return (perm_index << k_) | static_cast<int>(mask); }
    int perm_index(int id) const { return id >> k_; }
    unsigned mask(int id) const { return static_cast<unsigned>(id) & ((1u << k_) - 1); }
    int index_of(const Perm& p) const;
    const Perm& perm(int perm_index) const { return perms_[perm_index]; }
    const std::vector<int>& word(int perm_index) const { return words_[perm_index]; }

    SparseVec right_T(const SparseVec& x, int i) const;     // x * T_i
    SparseVec right_Tinv(const SparseVec& x, int i) const;  // x * T_i^{-1}
    SparseVec right_xi(const SparseVec& x, int j) const;    // x * xi_j
    SparseVec product(int a, int b) const;
    SparseVec product(const SparseVec& x, const SparseVec& y) const;
    SparseVec diff(int a) const;
    int cohdeg(int id) const;
    int qdeg(int id) const;  // -2 (l(w) + |xi|)
    std::string label(int id) const;

private:
    int k_;
    Field f_;
    Scalar hbar_;
    bool nil_;
    std::vector<Perm> perms_;
    std::vector<std::vector<int>> words_;
    std::vector<std::vector<int>> swap_;        // swap_[p][i-1] = index of s_i o w
    std::vector<std::vector<char>> increases_;  // whether length increases
};

// Word symbols for normal_form.
struct HeckeSymbol {
    enum Kind { T, Tinv, xi } kind;
    int index;
};
std::vector<HeckeSymbol> parse_hecke_word(const std::string& text);  // e.g. "x2 T1 t1" (t = inverse)

SparseVec normal_form(const HeckeExterior& h, const std::vector<HeckeSymbol>& word);

DgAlgebra build_rk(int k, const Field& f, Scalar hbar, const BuildOptions& opt = {});
DgAlgebra build_rk_nil(int k, const Field& f, const BuildOptions& opt = {});
DgAlgebra algebra_from_engine(const HeckeExterior& h, const std::string& name, const BuildOptions& opt);

// h_{k,i} in R_k (or R_k^nil, where T^{-1} is replaced by its leading term).
SparseVec h_element(const HeckeExterior& h, int kk, int i);

Report verify_h_closed(int k, const Field& f, Scalar hbar);
Report verify_formality_conjecture(int k, bool nil, const Field& f, Scalar hbar = 1);
// Leading-q-term agreement of the R_k table with the R_k^nil table.
Report verify_filtration(int k, const Field& f, Scalar hbar);

}  // namespace catdga
