#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>

#include "ramweil/errors.hpp"

namespace ramweil {

// A unit-modulus complex number exp(2*pi*i * num/den), kept as a reduced
// fraction with 0 <= num < den. All linear-character values in this library
// are roots of unity, so storing the angle exactly keeps character algebra
// (products, inverses, root extraction) free of floating-point drift; only
// sums of phases ever become complex doubles.
struct Phase {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Phase of(std::int64_t n, std::int64_t d) {
        if (d <= 0) throw DomainError("Phase: denominator must be positive");
        n %= d;
        if (n < 0) n += d;
        std::int64_t g = std::gcd(n, d);
        if (g == 0) g = 1;
        return Phase{n / g, d / g};
    }

    static Phase one() { return Phase{0, 1}; }
    static Phase minusOne() { return Phase{1, 2}; }

    friend Phase operator*(Phase a, Phase b) {
        // exp angles add; common denominator is bounded by den_a*den_b
        return of(a.num * b.den + b.num * a.den, a.den * b.den);
    }

    Phase conj() const { return of(-num, den); }

    Phase pow(std::int64_t e) const {
        std::int64_t n = (e % den) * (num % den);
        return of(n, den);
    }

    // n-th root with smallest argument in [0, 2*pi). The argument of *this
    // is 2*pi*num/den, so the smallest root argument is that divided by n.
    Phase root(std::int64_t n) const {
        if (n <= 0) throw DomainError("Phase: root index must be positive");
        return of(num, den * n);
    }

    // Alternate extension rule (largest argument); used to confirm that
    // constituent degree/multiplicity data does not depend on the root choice.
    Phase rootLargest(std::int64_t n) const {
        if (n <= 0) throw DomainError("Phase: root index must be positive");
        return of(num + (n - 1) * den, den * n);
    }

    bool isOne() const { return num == 0; }

    friend bool operator==(const Phase& a, const Phase& b) {
        return a.num == b.num && a.den == b.den;
    }

    std::complex<double> value() const {
        if (num == 0) return {1.0, 0.0};
        if (2 * num == den) return {-1.0, 0.0};
        double t = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(den);
        return {std::cos(t), std::sin(t)};
    }
};

}  // namespace ramweil
