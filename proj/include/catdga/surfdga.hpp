#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "catdga/dga.hpp"
#include "catdga/report.hpp"
#include "catdga/strands.hpp"

namespace catdga {

// Paths in a quiver over F_2. A word lists letters left to right; x*y is
// defined when the target of x is the source of y.
using Word = std::vector<int>;
// F_2 linear combination of words, sorted by the monomial order, largest first.
using Poly = std::vector<Word>;

struct WordHash {
    std::size_t operator()(const Word& w) const;
};

struct Letter {
    std::string name;
    int source = 0, target = 0;
    int cohdeg = 0;
    std::string kind;  // census label: crossing, dot, strand, singular
};

struct Presentation {
    std::vector<std::string> vertices;
    std::vector<Letter> letters;
    std::vector<int> rank;          // letter order used by the monomial order
    std::vector<Poly> relations;    // each poly is zero in the algebra
    std::vector<std::string> relation_tags;
    std::vector<Poly> differential;  // d(letter)

    int add_vertex(std::string name);
    int add_letter(Letter l);
    void add_relation(std::vector<Word> terms, std::string tag);
};

struct RewriteLimits {
    int max_rules = 200000;
    int max_word_length = 40;
    long long max_normal_words = 2'000'000;
};

// Bergman completion of the relations for the degree-lexicographic order.
class Rewriter {
public:
    Rewriter(const Presentation& p, RewriteLimits lim = {}, std::optional<std::uint64_t> shuffle_seed = {});

    Poly reduce(std::vector<Word> terms) const;
    bool less(const Word& a, const Word& b) const;
    int num_rules() const { return static_cast<int>(leads_.size()); }
    // Reduced Groebner basis as (leading word, tail), sorted by leading word.
    std::vector<std::pair<Word, Poly>> rules() const;
    // All irreducible paths, including the empty path at each vertex.
    std::vector<std::pair<int, Word>> normal_words() const;

private:
    struct Match {
        int rule;
        int pos;
    };
    std::optional<Match> find_match(const Word& w, int from = 0) const;
    bool has_suffix_match(const Word& w) const;
    void complete(std::optional<std::uint64_t> seed);
    void insert(Poly p, std::vector<Poly>& pending);

    const Presentation* p_;
    RewriteLimits lim_;
    std::vector<Word> leads_;
    std::vector<Poly> tails_;
    std::vector<char> alive_;
    std::unordered_map<Word, int, WordHash> index_;
    std::map<int, int> lengths_;  // lead length -> count of alive rules
};

struct PresentedAlgebra {
    Presentation pres;
    std::vector<std::pair<int, Word>> words;  // basis: (vertex, word)
    std::unordered_map<Word, int, WordHash> word_index;
    std::vector<int> vertex_unit;  // basis id of the empty path at each vertex
    DgAlgebra algebra{"", Field::prime(2)};
    int num_rules = 0;
    // Each letter and its d as elements of the algebra.
    std::vector<Element> letter_image, letter_diff;

    std::string word_label(int vertex, const Word& w) const;
    // Coordinates of a reduced polynomial of paths starting at `source`.
    Element to_element(const Poly& p, int source) const;
};

struct SurfaceOptions {
    RewriteLimits limits;
    int max_k = 3;  // build_surface_dga rejects larger k
    std::optional<std::uint64_t> shuffle_seed;
};

PresentedAlgebra build_presented(Presentation p, const std::string& name, const SurfaceOptions& opt = {});

// d of a polynomial via the Leibniz rule on letters, reduced.
Poly differential_of(const Presentation& p, const Rewriter& rw, const std::vector<Word>& terms);

// R(A,0,a;k): letters T_i, x_j (xi_j), b.
Presentation annulus_presentation(int k);
PresentedAlgebra build_annulus_dga(int k, Scalar hbar = 1, const SurfaceOptions& opt = {});

// H_k (x) Lambda(xi_1..xi_k, b_1..b_k) over F_2 with b_j twisted like xi_j,
// with b = b_k. Independent model of the annulus algebra.
class AnnulusPbw {
public:
    explicit AnnulusPbw(int k);
    int k() const { return k_; }
    int dim() const { return static_cast<int>(perms_.size()) << (2 * k_); }
    SparseVec unit() const { return unit_vector(0); }
    SparseVec right_T(const SparseVec& x, int i) const;
    SparseVec right_xi(const SparseVec& x, int j) const;
    SparseVec right_b(const SparseVec& x, int j) const;
    // Image of a word in the letters of annulus_presentation(k).
    SparseVec image(const Presentation& p, const Word& w) const;

private:
    int id(int perm, unsigned xi, unsigned b) const { return (((perm << k_) | static_cast<int>(xi)) << k_) | static_cast<int>(b); }
    int k_;
    std::vector<Perm> perms_;
    std::map<Perm, int> perm_index_;
};

// Relations vanish in the PBW model and normal words map to a basis of it.
Report compare_annulus_with_pbw(const PresentedAlgebra& a, int k);
// The k = 1 ring and the listed dotless basis for k = 2.
Report check_annulus_examples(const Field& f = Field::prime(2));

struct ArcDiagram {
    std::vector<int> segments;                  // marked points per segment
    std::vector<std::pair<int, int>> matching;  // 1-based point indices, pair j is arc n+j
    int n_singular = 0;

    static ArcDiagram make(std::vector<int> segments, std::vector<std::pair<int, int>> matching, int n_singular);
    int num_points() const;
    int s() const { return static_cast<int>(matching.size()); }
    int num_arcs() const { return n_singular + s(); }
    int segment_of(int point) const;
    int arc_of(int point) const;        // 1..n+s
    int degree_of(int point) const;     // 1 for the larger point of a pair
    std::pair<int, int> pair_of(int j) const;  // points of arc n+j, increasing
    // Primitive strand between consecutive matched points on one segment.
    struct Primitive {
        int from = 0, to = 0;  // points
        int degree = 0;        // deg(to) - deg(from)
    };
    std::vector<Primitive> primitives() const;
    int arc_point_n1() const;  // arc of the point n+1 (s >= 1)

    static ArcDiagram annulus();
    static ArcDiagram torus();
    static ArcDiagram disk(int n);
};

// Exponent vectors i with |i| = k and i_j <= 1 for singular arcs.
std::vector<std::vector<int>> arc_states(const ArcDiagram& d, int k);
std::string state_label(const std::vector<int>& state);

Presentation surface_presentation(const ArcDiagram& d, int k, const Field& f = Field::prime(2));
PresentedAlgebra build_surface_dga(const ArcDiagram& d, int k, const SurfaceOptions& opt = {});

// verify_dga plus d of every defining relation vanishing, evaluated through
// the structure constants.
Report verify_surface_well_defined(const PresentedAlgebra& a);

// Expected dim 1(i) A 1(i') by counting strand diagrams: a path for each
// strand, at most one dot on a strand that moves or sits on a matched arc, and
// the orderings of the copies on each target arc.
long long diagram_count(const ArcDiagram& d, const std::vector<int>& from, const std::vector<int>& to);

struct CensusRow {
    std::string kind;   // idempotent, crossing, dot, strand, singular
    int number = 0;     // kind number in the generator list for this k
    int count = 0;
    std::vector<std::string> labels;
    std::vector<int> degrees;
};
std::vector<CensusRow> generator_census(const ArcDiagram& d, int k);

// The torus census, the k = 2 idempotent count, the disk
// against R(n+1;k) and the annulus diagram against the annulus dga.
Report check_surface_examples();

}  // namespace catdga
