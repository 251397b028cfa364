#include "catdga/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace catdga {

bool is_prime_number(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Field Field::prime(std::int64_t p) {
    if (!is_prime_number(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (p > (std::int64_t{1} << 31)) throw std::invalid_argument("prime too large for 64-bit products");
    return Field(p);
}

Field Field::rational() { return Field(0); }

Scalar Field::reduce(std::int64_t v) const {
    if (p_ == 0) return v;
    v %= p_;
    return v < 0 ? v + p_ : v;
}

namespace {
Scalar checked(bool overflow, Scalar r) {
    if (overflow) throw std::overflow_error("integer coefficient overflow over Q");
    return r;
}
}  // namespace

Scalar Field::add(Scalar a, Scalar b) const {
    if (p_ == 0) {
        Scalar r;
        bool overflow = __builtin_add_overflow(a, b, &r);
        return checked(overflow, r);
    }
    Scalar r = a + b;
    return r >= p_ ? r - p_ : r;
}

Scalar Field::sub(Scalar a, Scalar b) const {
    if (p_ == 0) {
        Scalar r;
        bool overflow = __builtin_sub_overflow(a, b, &r);
        return checked(overflow, r);
    }
    Scalar r = a - b;
    return r < 0 ? r + p_ : r;
}

Scalar Field::mul(Scalar a, Scalar b) const {
    if (p_ == 0) {
        Scalar r;
        bool overflow = __builtin_mul_overflow(a, b, &r);
        return checked(overflow, r);
    }
    return (a * b) % p_;
}

Scalar Field::neg(Scalar a) const {
    if (p_ == 0) return checked(a == INT64_MIN, -a);
    return a == 0 ? 0 : p_ - a;
}

Scalar Field::inv(Scalar a) const {
    if (a == 0) throw std::domain_error("division by zero");
    if (p_ == 0) {
        if (a == 1 || a == -1) return a;
        throw std::domain_error("non-unit integer has no integral inverse");
    }
    // extended Euclid
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return reduce(t);
}

std::string Field::format(Scalar a) const { return std::to_string(a); }

Scalar Field::parse(const std::string& text) const {
    std::string s = text;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        if (s.substr(slash + 1) != "1") throw std::invalid_argument("non-integral coefficient '" + text + "'");
        s = s.substr(0, slash);
    }
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed coefficient '" + text + "'");
    }
    if (used != s.size()) throw std::invalid_argument("malformed coefficient '" + text + "'");
    return reduce(v);
}

std::string Field::describe() const { return p_ == 0 ? "Q" : "F_" + std::to_string(p_); }

SparseVec canonical(const Field& f, std::vector<Entry> raw) {
    std::sort(raw.begin(), raw.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    SparseVec out;
    out.reserve(raw.size());
    for (const auto& e : raw) {
        Scalar v = f.reduce(e.value);
        if (!out.empty() && out.back().index == e.index) {
            out.back().value = f.add(out.back().value, v);
            if (out.back().value == 0) out.pop_back();
        } else if (v != 0) {
            out.push_back({e.index, v});
        }
    }
    return out;
}

void axpy(const Field& f, SparseVec& y, Scalar a, const SparseVec& x) {
    if (a == 0 || x.empty()) return;
    SparseVec out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].index < x[j].index)) {
            out.push_back(y[i++]);
        } else if (i == y.size() || x[j].index < y[i].index) {
            out.push_back({x[j].index, f.mul(a, x[j].value)});
            ++j;
        } else {
            Scalar v = f.add(y[i].value, f.mul(a, x[j].value));
            if (v != 0) out.push_back({y[i].index, v});
            ++i;
            ++j;
        }
    }
    y.swap(out);
}

SparseVec add(const Field& f, const SparseVec& x, const SparseVec& y) {
    SparseVec r = x;
    axpy(f, r, 1, y);
    return r;
}

SparseVec sub(const Field& f, const SparseVec& x, const SparseVec& y) {
    SparseVec r = x;
    axpy(f, r, f.neg(1), y);
    return r;
}

SparseVec scale(const Field& f, Scalar a, const SparseVec& x) {
    SparseVec r;
    if (a == 0) return r;
    r.reserve(x.size());
    for (const auto& e : x) r.push_back({e.index, f.mul(a, e.value)});
    return r;
}

Scalar coefficient(const SparseVec& v, int index) {
    auto it = std::lower_bound(v.begin(), v.end(), index, [](const Entry& e, int i) { return e.index < i; });
    return (it != v.end() && it->index == index) ? it->value : 0;
}

SparseVec unit_vector(int index) { return SparseVec{{index, 1}}; }

void Accumulator::add(int index, Scalar a) {
    if (a == 0) return;
    if (!seen_[index]) {
        seen_[index] = 1;
        touched_.push_back(index);
        values_[index] = a;
    } else {
        values_[index] = f_.add(values_[index], a);
    }
}

void Accumulator::add(Scalar a, const SparseVec& x) {
    if (a == 0) return;
    for (const auto& e : x) add(e.index, f_.mul(a, e.value));
}

SparseVec Accumulator::take() {
    std::sort(touched_.begin(), touched_.end());
    SparseVec out;
    out.reserve(touched_.size());
    for (int i : touched_) {
        if (values_[i] != 0) out.push_back({i, values_[i]});
        values_[i] = 0;
        seen_[i] = 0;
    }
    touched_.clear();
    return out;
}

}  // namespace catdga
