#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace catdga {

// Coefficients are stored as 64-bit integers. Over F_p they are residues in
// [0, p); over Q they are integers (builders only ever produce integral
// structure constants, rational arithmetic happens inside elimination).
using Scalar = std::int64_t;

class Field {
public:
    static Field prime(std::int64_t p);
    static Field rational();

    bool is_prime() const { return p_ > 0; }
    bool is_rational() const { return p_ == 0; }
    std::int64_t characteristic() const { return p_; }

    Scalar reduce(std::int64_t v) const;
    Scalar add(Scalar a, Scalar b) const;
    Scalar sub(Scalar a, Scalar b) const;
    Scalar mul(Scalar a, Scalar b) const;
    Scalar neg(Scalar a) const;
    // Over Q only the units +-1 are invertible as Scalars.
    Scalar inv(Scalar a) const;
    Scalar pow_sign(int exponent) const { return (exponent & 1) ? neg(1) : 1; }

    // Decimal form; residues over F_p are printed in [0, p).
    std::string format(Scalar a) const;
    // Parses a decimal integer (optionally "a/1") into the field.
    Scalar parse(const std::string& text) const;
    std::string describe() const;

    bool operator==(const Field& other) const { return p_ == other.p_; }

private:
    explicit Field(std::int64_t p) : p_(p) {}
    std::int64_t p_;
};

bool is_prime_number(std::int64_t p);

struct Entry {
    int index;
    Scalar value;
    bool operator==(const Entry&) const = default;
};

// Sorted by index, no zero values.
using SparseVec = std::vector<Entry>;

SparseVec canonical(const Field& f, std::vector<Entry> raw);
// y += a * x
void axpy(const Field& f, SparseVec& y, Scalar a, const SparseVec& x);
SparseVec add(const Field& f, const SparseVec& x, const SparseVec& y);
SparseVec sub(const Field& f, const SparseVec& x, const SparseVec& y);
SparseVec scale(const Field& f, Scalar a, const SparseVec& x);
Scalar coefficient(const SparseVec& v, int index);
SparseVec unit_vector(int index);

// Dense accumulator for repeated sparse updates over a fixed-size space.
class Accumulator {
public:
    Accumulator(const Field& f, int size) : f_(f), values_(size, 0), seen_(size, 0) {}
    void add(int index, Scalar a);
    void add(Scalar a, const SparseVec& x);
    SparseVec take();
    int size() const { return static_cast<int>(values_.size()); }

private:
    Field f_;
    std::vector<Scalar> values_;
    std::vector<char> seen_;
    std::vector<int> touched_;
};

}  // namespace catdga
