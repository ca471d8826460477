#pragma once

#include <algorithm>
#include <vector>

#include "klein/common.hpp"

namespace klein {

/// Field automorphism of GF(p^k): x -> x^(p^j). j = 0 is the identity;
/// composition adds exponents mod k.
struct FieldAut {
    int j = 0;

    friend bool operator==(const FieldAut&, const FieldAut&) = default;
};

/// GF(p^k) with exact table-based arithmetic.
///
/// Elements are integers in [0, q). Index encoding: the element with
/// polynomial coefficients c_0..c_{k-1} (low degree first) has index
/// sum(c_i * p^i). 0 is the zero element, 1 the unit.
///
/// The modulus is the lexicographically smallest monic irreducible of
/// degree k over GF(p), coefficients compared low-degree-first, so the
/// encoding is identical across runs.
class Field {
public:
    static constexpr int default_order_cap = 64;

    static Field make(int p, int k, int order_cap = default_order_cap) {
        detail::require(k >= 1, "extension degree must be >= 1");
        detail::require(is_prime(p), "characteristic must be prime: " + std::to_string(p));
        std::uint64_t q = 1;
        for (int i = 0; i < k; ++i) {
            q *= static_cast<std::uint64_t>(p);
            if (q > static_cast<std::uint64_t>(order_cap))
                throw cap_exceeded("field order p^k exceeds cap", order_cap, q);
        }
        Field f;
        f.p_ = p;
        f.k_ = k;
        f.q_ = static_cast<int>(q);
        f.modulus_ = smallest_irreducible(p, k);
        f.build_tables();
        return f;
    }

    int p() const { return p_; }
    int k() const { return k_; }
    int order() const { return q_; }

    /// Monic modulus polynomial, coefficients c_0..c_k (c_k = 1).
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const { return add_[check(a) * q_ + check(b)]; }
    int sub(int a, int b) const { return add_[check(a) * q_ + neg_[check(b)]]; }
    int mul(int a, int b) const { return mul_[check(a) * q_ + check(b)]; }
    int neg(int a) const { return neg_[check(a)]; }

    int inv(int a) const {
        check(a);
        if (a == 0) throw std::domain_error("inversion of zero");
        return inv_[a];
    }

    int pow(int a, long long e) const {
        check(a);
        if (e < 0) return pow(inv(a), -e);
        int acc = 1, base = a;
        while (e > 0) {
            if (e & 1) acc = mul_[acc * q_ + base];
            base = mul_[base * q_ + base];
            e >>= 1;
        }
        return acc;
    }

    /// Polynomial coefficients of an element, low degree first, length k.
    std::vector<int> digits_of(int a) const {
        check(a);
        std::vector<int> d(k_);
        for (int i = 0; i < k_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    }

    int index_of(const std::vector<int>& digits) const {
        detail::require(static_cast<int>(digits.size()) == k_, "coefficient list has wrong length");
        int idx = 0;
        for (int i = k_ - 1; i >= 0; --i) {
            detail::require(digits[i] >= 0 && digits[i] < p_, "coefficient out of range");
            idx = idx * p_ + digits[i];
        }
        return idx;
    }

    int apply(const FieldAut& h, int x) const {
        detail::require(h.j >= 0 && h.j < k_, "automorphism exponent out of range");
        return frob_[static_cast<std::size_t>(h.j) * q_ + check(x)];
    }

    FieldAut compose(const FieldAut& a, const FieldAut& b) const {
        return FieldAut{(a.j + b.j) % k_};
    }

    FieldAut inverse_aut(const FieldAut& a) const {
        return FieldAut{(k_ - a.j) % k_};
    }

    /// All k field automorphisms (Frobenius powers j = 0..k-1), each
    /// re-verified against every element pair before being returned.
    std::vector<FieldAut> automorphisms() const {
        std::vector<FieldAut> auts;
        for (int j = 0; j < k_; ++j) {
            FieldAut h{j};
            verify_automorphism(h);
            auts.push_back(h);
        }
        return auts;
    }

    friend bool operator==(const Field& a, const Field& b) {
        return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
    }

    static bool is_prime(int n) {
        if (n < 2) return false;
        for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    Field() = default;

    int check(int a) const {
        detail::require(a >= 0 && a < q_, "element index out of range");
        return a;
    }

    // --- polynomial helpers over GF(p), dense low-degree-first vectors ---

    static std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
        std::vector<int> c(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                c[i + j] = (c[i + j] + a[i] * b[j]) % p;
        return c;
    }

    static int poly_degree(const std::vector<int>& a) {
        for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
            if (a[i] != 0) return i;
        return -1;
    }

    /// Remainder of a modulo the monic polynomial m.
    static std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m, int p) {
        const int dm = poly_degree(m);
        for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) {
            const int c = a[da];
            for (int i = 0; i <= dm; ++i) {
                int& t = a[da - dm + i];
                t = ((t - c * m[i]) % p + p) % p;
            }
        }
        a.resize(dm);
        return a;
    }

    static bool divides(const std::vector<int>& d, const std::vector<int>& f, int p) {
        return poly_degree(poly_mod(f, d, p)) < 0;
    }

    /// Irreducibility by trial division against every monic polynomial of
    /// degree 1..k/2.
    static bool is_irreducible(const std::vector<int>& f, int p) {
        const int k = poly_degree(f);
        for (int d = 1; 2 * d <= k; ++d) {
            std::uint64_t count = 1;
            for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p);
            for (std::uint64_t t = 0; t < count; ++t) {
                std::vector<int> g(d + 1, 0);
                std::uint64_t tt = t;
                for (int i = 0; i < d; ++i) {
                    g[i] = static_cast<int>(tt % p);
                    tt /= p;
                }
                g[d] = 1;
                if (divides(g, f, p)) return false;
            }
        }
        return true;
    }

    /// First monic irreducible of degree k in ascending low-degree-first
    /// lexicographic order of (c_0..c_{k-1}).
    static std::vector<int> smallest_irreducible(int p, int k) {
        std::uint64_t count = 1;
        for (int i = 0; i < k; ++i) count *= static_cast<std::uint64_t>(p);
        for (std::uint64_t t = 0; t < count; ++t) {
            std::vector<int> f(k + 1, 0);
            std::uint64_t tt = t;
            // c_0 is the most significant digit of t, so tuples come out in
            // lexicographic order with position 0 compared first.
            for (int i = k - 1; i >= 0; --i) {
                f[i] = static_cast<int>(tt % p);
                tt /= p;
            }
            f[k] = 1;
            if (is_irreducible(f, p)) return f;
        }
        throw internal_check_failure("no monic irreducible of requested degree found");
    }

    void build_tables() {
        add_.assign(static_cast<std::size_t>(q_) * q_, 0);
        mul_.assign(static_cast<std::size_t>(q_) * q_, 0);
        neg_.assign(q_, 0);
        inv_.assign(q_, 0);

        std::vector<std::vector<int>> digits(q_);
        for (int a = 0; a < q_; ++a) {
            digits[a].resize(k_);
            int t = a;
            for (int i = 0; i < k_; ++i) {
                digits[a][i] = t % p_;
                t /= p_;
            }
        }
        auto index_of_poly = [&](const std::vector<int>& d) {
            int idx = 0;
            for (int i = k_ - 1; i >= 0; --i) idx = idx * p_ + (i < static_cast<int>(d.size()) ? d[i] : 0);
            return idx;
        };

        for (int a = 0; a < q_; ++a) {
            for (int b = 0; b < q_; ++b) {
                std::vector<int> s(k_);
                for (int i = 0; i < k_; ++i) s[i] = (digits[a][i] + digits[b][i]) % p_;
                add_[static_cast<std::size_t>(a) * q_ + b] = index_of_poly(s);
                auto prod = poly_mod(poly_mul(digits[a], digits[b], p_), modulus_, p_);
                mul_[static_cast<std::size_t>(a) * q_ + b] = index_of_poly(prod);
            }
        }
        for (int a = 0; a < q_; ++a) {
            std::vector<int> s(k_);
            for (int i = 0; i < k_; ++i) s[i] = (p_ - digits[a][i]) % p_;
            neg_[a] = index_of_poly(s);
        }
        inv_[0] = -1;
        for (int a = 1; a < q_; ++a) {
            int found = -1;
            for (int b = 1; b < q_; ++b) {
                if (mul_[static_cast<std::size_t>(a) * q_ + b] == 1) {
                    found = b;
                    break;
                }
            }
            detail::ensure(found != -1, "nonzero element without inverse");
            inv_[a] = found;
        }

        frob_.assign(static_cast<std::size_t>(k_) * q_, 0);
        for (int j = 0; j < k_; ++j) {
            long long e = 1;
            for (int i = 0; i < j; ++i) e *= p_;
            for (int x = 0; x < q_; ++x)
                frob_[static_cast<std::size_t>(j) * q_ + x] = pow(x, e);
        }
    }

    void verify_automorphism(const FieldAut& h) const {
        std::vector<char> hit(q_, 0);
        for (int x = 0; x < q_; ++x) hit[apply(h, x)] = 1;
        for (int x = 0; x < q_; ++x)
            detail::ensure(hit[x], "automorphism candidate is not a bijection");
        for (int a = 0; a < q_; ++a) {
            for (int b = 0; b < q_; ++b) {
                detail::ensure(apply(h, add(a, b)) == add(apply(h, a), apply(h, b)),
                               "automorphism candidate not additive");
                detail::ensure(apply(h, mul(a, b)) == mul(apply(h, a), apply(h, b)),
                               "automorphism candidate not multiplicative");
            }
        }
    }

    int p_ = 0;
    int k_ = 0;
    int q_ = 0;
    std::vector<int> modulus_;
    std::vector<int> add_, mul_, neg_, inv_;
    std::vector<int> frob_;
};

} // namespace klein
