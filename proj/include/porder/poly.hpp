#ifndef PORDER_POLY_HPP
#define PORDER_POLY_HPP

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace porder {

// Polynomial with nonnegative integer coefficients, evaluated over the
// naturals, optionally clamped from below by a constant floor:
//   eval(n) = max(floor, c0 + c1*n + c2*n^2 + ...)
struct Poly {
    std::vector<uint64_t> coeffs;  // ascending degree
    uint64_t floor = 0;

    Poly() = default;
    Poly(std::initializer_list<uint64_t> cs) : coeffs(cs) {}
    explicit Poly(std::vector<uint64_t> cs, uint64_t fl = 0) : coeffs(std::move(cs)), floor(fl) {}

    static Poly constant(uint64_t c) { return Poly{c}; }
    static Poly identity() { return Poly{0, 1}; }

    uint64_t eval(uint64_t n) const {
        // Horner, with a crude overflow guard; desk-scale arguments only.
        unsigned __int128 acc = 0;
        for (size_t i = coeffs.size(); i-- > 0;) {
            acc = acc * n + coeffs[i];
            if (acc > (unsigned __int128)UINT64_MAX)
                throw std::overflow_error("Poly::eval overflow");
        }
        uint64_t v = (uint64_t)acc;
        return v < floor ? floor : v;
    }

    uint64_t operator()(uint64_t n) const { return eval(n); }

    bool has_floor() const { return floor != 0; }

    // Strictly increasing over all of N. A clamped poly is flat below the
    // floor, so it never qualifies.
    bool strictly_increasing() const {
        if (floor > coeffs_eval0()) return false;
        for (size_t i = 1; i < coeffs.size(); ++i)
            if (coeffs[i] > 0) return true;
        return false;
    }

    bool nondecreasing() const { return true; }  // nonneg coeffs + floor

    Poly plus_const(uint64_t k) const {
        Poly p = *this;
        if (p.coeffs.empty()) p.coeffs.push_back(0);
        p.coeffs[0] += k;
        if (p.floor) p.floor += k;
        return p;
    }

    // this + other, coefficientwise. Floors do not mix.
    Poly plus(const Poly& other) const {
        if (has_floor() || other.has_floor())
            throw std::invalid_argument("Poly::plus: clamped polynomial");
        Poly out;
        out.coeffs.resize(std::max(coeffs.size(), other.coeffs.size()), 0);
        for (size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i] += coeffs[i];
        for (size_t i = 0; i < other.coeffs.size(); ++i) out.coeffs[i] += other.coeffs[i];
        return out;
    }

    // this(inner(n)), pure polynomials only.
    Poly compose(const Poly& inner) const {
        if (has_floor() || inner.has_floor())
            throw std::invalid_argument("Poly::compose: clamped polynomial");
        Poly out = Poly::constant(0);
        for (size_t i = coeffs.size(); i-- > 0;) {
            out = out.times(inner);
            out.coeffs.resize(std::max<size_t>(1, out.coeffs.size()));
            out.coeffs[0] += coeffs[i];
        }
        return out;
    }

    Poly times(const Poly& other) const {
        if (has_floor() || other.has_floor())
            throw std::invalid_argument("Poly::times: clamped polynomial");
        if (coeffs.empty() || other.coeffs.empty()) return Poly::constant(0);
        Poly out;
        out.coeffs.assign(coeffs.size() + other.coeffs.size() - 1, 0);
        for (size_t i = 0; i < coeffs.size(); ++i)
            for (size_t j = 0; j < other.coeffs.size(); ++j) out.coeffs[i + j] += coeffs[i] * other.coeffs[j];
        return out;
    }

private:
    uint64_t coeffs_eval0() const { return coeffs.empty() ? 0 : coeffs[0]; }
};

}  // namespace porder

#endif
