#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ramweil/errors.hpp"
#include "ramweil/phase.hpp"

namespace ramweil {

// An element of F_q is stored as its index in the canonical enumeration:
// the polynomial c_0 + c_1 t + ... + c_{k-1} t^{k-1} over Z/p has index
// sum c_i p^i. Index 0 is zero, index 1 is one.
using Fq = std::uint32_t;

// The residue field F_q, q = p^k with p an odd prime. For k > 1 a monic
// irreducible modulus of degree k must be supplied (no Conway table is
// bundled). All operations go through precomputed tables, so q is capped.
class Field {
  public:
    static constexpr std::uint32_t kMaxQ = 2048;

    static Field make(int p, int k = 1, std::vector<std::uint32_t> modulus = {}) {
        Field F;
        if (p < 3 || p % 2 == 0) throw DomainError("odd characteristic required");
        if (!isPrime(p)) throw DomainError("characteristic must be prime");
        if (p > 251) throw ResourceError("characteristic exceeds the byte encoding range");
        if (k < 1) throw DomainError("field degree must be positive");
        F.p_ = p;
        F.k_ = k;
        std::uint64_t q = 1;
        for (int i = 0; i < k; ++i) {
            q *= static_cast<std::uint64_t>(p);
            if (q > kMaxQ) throw ResourceError("field size exceeds table capacity");
        }
        F.q_ = static_cast<std::uint32_t>(q);
        if (k == 1) {
            F.modulus_ = {0, 1};  // t - 0, unused
        } else {
            if (modulus.size() != static_cast<std::size_t>(k + 1))
                throw DomainError("modulus must list k+1 coefficients, constant first");
            for (auto& c : modulus) c %= static_cast<std::uint32_t>(p);
            if (modulus.back() != 1) throw DomainError("modulus must be monic");
            F.modulus_ = modulus;
            if (!F.modulusIrreducible()) throw DomainError("modulus is reducible over Z/p");
        }
        F.buildTables();
        return F;
    }

    int p() const { return p_; }
    int k() const { return k_; }
    std::uint32_t q() const { return q_; }

    Fq add(Fq a, Fq b) const { return add_[a * q_ + b]; }
    Fq sub(Fq a, Fq b) const { return add_[a * q_ + neg_[b]]; }
    Fq neg(Fq a) const { return neg_[a]; }
    Fq mul(Fq a, Fq b) const { return mul_[a * q_ + b]; }
    Fq inv(Fq a) const {
        if (a == 0) throw DomainError("division by zero in F_q");
        return inv_[a];
    }
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }

    Fq fromInt(long long v) const {
        long long r = v % p_;
        if (r < 0) r += p_;
        return static_cast<Fq>(r);
    }

    bool isSquare(Fq a) const { return square_[a]; }

    // First non-square unit in the canonical enumeration order.
    Fq nonsquareUnit() const {
        for (Fq a = 1; a < q_; ++a)
            if (!square_[a]) return a;
        throw DomainError("no non-square unit found");  // unreachable for odd q
    }

    // Absolute trace F_q -> F_p, as a residue in [0, p).
    int trace(Fq a) const { return trace_[a]; }

    // The additive character psi(a) = exp(2*pi*i * Tr(a) / p).
    Phase psi(Fq a) const { return Phase::of(trace_[a], p_); }

  private:
    int p_ = 3, k_ = 1;
    std::uint32_t q_ = 3;
    std::vector<std::uint32_t> modulus_;
    std::vector<Fq> add_, mul_, neg_, inv_;
    std::vector<char> square_;
    std::vector<int> trace_;

    static bool isPrime(int n) {
        if (n < 2) return false;
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    // --- polynomial helpers on digit vectors (index <-> base-p digits) ---

    std::vector<std::uint32_t> digitsOf(Fq a) const {
        std::vector<std::uint32_t> d(k_, 0);
        for (int i = 0; i < k_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    }

    Fq indexOf(const std::vector<std::uint32_t>& d) const {
        Fq a = 0;
        for (int i = k_ - 1; i >= 0; --i) a = a * p_ + d[i];
        return a;
    }

    static std::vector<std::uint32_t> polyMulMod(const std::vector<std::uint32_t>& a,
                                                 const std::vector<std::uint32_t>& b,
                                                 const std::vector<std::uint32_t>& mod, int p) {
        std::vector<std::uint32_t> prod(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        // reduce by the monic modulus
        int deg = static_cast<int>(mod.size()) - 1;
        for (int i = static_cast<int>(prod.size()) - 1; i >= deg; --i) {
            std::uint32_t c = prod[i];
            if (c == 0) continue;
            for (int j = 0; j <= deg; ++j) {
                std::uint32_t& slot = prod[i - deg + j];
                slot = (slot + (p - 1) * c % p * mod[j]) % p;
            }
        }
        prod.resize(deg);
        return prod;
    }

    bool modulusIrreducible() const {
        // Exhaustive trial division by monic polynomials of degree 1..k/2.
        for (int d = 1; 2 * d <= k_; ++d) {
            std::uint64_t count = 1;
            for (int i = 0; i < d; ++i) count *= p_;
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                std::vector<std::uint32_t> div(d + 1, 0);
                std::uint64_t t = idx;
                for (int i = 0; i < d; ++i) {
                    div[i] = t % p_;
                    t /= p_;
                }
                div[d] = 1;
                if (polyDivides(div)) return false;
            }
        }
        return true;
    }

    bool polyDivides(const std::vector<std::uint32_t>& div) const {
        std::vector<std::uint32_t> rem = modulus_;
        int dd = static_cast<int>(div.size()) - 1;
        for (int i = static_cast<int>(rem.size()) - 1; i >= dd; --i) {
            std::uint32_t c = rem[i] % p_;
            if (c == 0) continue;
            for (int j = 0; j <= dd; ++j)
                rem[i - dd + j] = (rem[i - dd + j] + (p_ - 1) * c % p_ * div[j]) % p_;
        }
        for (int i = 0; i < dd; ++i)
            if (rem[i] % p_ != 0) return false;
        return true;
    }

    void buildTables() {
        add_.assign(static_cast<std::size_t>(q_) * q_, 0);
        mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
        neg_.assign(q_, 0);
        for (Fq a = 0; a < q_; ++a) {
            auto da = digitsOf(a);
            std::vector<std::uint32_t> dn(k_);
            for (int i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
            neg_[a] = indexOf(dn);
            for (Fq b = 0; b < q_; ++b) {
                auto db = digitsOf(b);
                std::vector<std::uint32_t> ds(k_);
                for (int i = 0; i < k_; ++i) ds[i] = (da[i] + db[i]) % p_;
                add_[a * q_ + b] = indexOf(ds);
                mul_[a * q_ + b] = indexOf(polyMulMod(da, db, modulus_, p_));
            }
        }
        inv_.assign(q_, 0);
        square_.assign(q_, 0);
        square_[0] = 1;
        for (Fq a = 1; a < q_; ++a) square_[mul(a, a)] = 1;
        for (Fq a = 1; a < q_; ++a) {
            // a^(q-2) by square-and-multiply
            Fq acc = 1, base = a;
            std::uint32_t e = q_ - 2;
            while (e) {
                if (e & 1) acc = mul(acc, base);
                base = mul(base, base);
                e >>= 1;
            }
            inv_[a] = acc;
        }
        trace_.assign(q_, 0);
        for (Fq a = 0; a < q_; ++a) {
            Fq s = 0, t = a;
            for (int i = 0; i < k_; ++i) {
                s = add(s, t);
                // Frobenius t -> t^p
                Fq f = 1;
                for (int j = 0; j < p_; ++j) f = mul(f, t);
                t = f;
            }
            if (s >= static_cast<Fq>(p_)) throw NumericalError("trace left the prime field");
            trace_[a] = static_cast<int>(s);
        }
    }
};

}  // namespace ramweil
