#pragma once

#include <map>
#include <string>
#include <vector>

#include "catdga/cohomology.hpp"
#include "catdga/dga.hpp"
#include "catdga/report.hpp"

namespace catdga {

// Integer Laurent polynomial in q.
class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly monomial(long long c, int power);
    static LaurentPoly q(int power = 1) { return monomial(1, power); }

    long long coeff(int power) const;
    const std::map<int, long long>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    // Exact division; throws if the quotient is not a Laurent polynomial.
    LaurentPoly divide_exact(const LaurentPoly& d) const;
    std::string to_string() const;

private:
    void add_term(int power, long long c);
    std::map<int, long long> terms_;
};

// P(e)[a]{b}: the projective 1_e A shifted so that an element of bidegree
// (c, q) sits in bidegree (c - a, q + b).
struct PObject {
    int idem = 0;
    int a = 0;
    int b = 0;
    std::string label;
};

// Entry (source, target, x) acts by y |-> x y with x in 1_target A 1_source.
// On P[a] the internal differential is (-1)^a d.
struct ComplexEntry {
    int source = 0;
    int target = 0;
    Element x;
};

struct ProjectiveComplex {
    std::vector<PObject> objects;
    std::vector<ComplexEntry> entries;
};

Report complex_verify(const ProjectiveComplex& c, const DgAlgebra& a);

// Underlying bigraded complex of the total module; basis element t is
// (objects[obj[t]], algebra basis id alg[t]).
struct ExpandedComplex {
    GradedComplex complex;
    std::vector<int> obj;
    std::vector<int> alg;
};

ExpandedComplex expand(const ProjectiveComplex& c, const DgAlgebra& a);
std::map<Bidegree, int> total_complex_cohomology(const ProjectiveComplex& c, const DgAlgebra& a);

// Sum over objects of (-1)^a q^b [P(e)], keyed by idempotent.
std::map<int, LaurentPoly> euler_char_q(const ProjectiveComplex& c);

// Graded Euler characteristic of a finite complex: sum (-1)^c q^q dim.
LaurentPoly euler_char(const std::map<Bidegree, int>& dims);

}  // namespace catdga
