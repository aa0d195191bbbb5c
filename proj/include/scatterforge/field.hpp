#pragma once

// Finite-field tower F_p ⊆ F_q ⊆ F_{q^m} ⊆ F_{q^{2m}}.
//
// Every level is an explicit extension of the level below it. An element is a dense
// coefficient vector over the immediate subfield, packed into one integer:
//
//     index(x) = c_0 + c_1 Q + c_2 Q^2 + ... + c_{d-1} Q^{d-1},   Q = |subfield|,
//
// where each c_i is itself the packed index of a subfield element. Flattening the
// recursion, the index is the base-p number whose digits are the F_p-coordinates of x
// in the product power basis, little-endian. The subfield therefore embeds as the
// identity on indices (constant coefficient only), and zero/one are 0/1.
//
// Multiplication is defined by schoolbook multiplication and reduction modulo the
// defining polynomial (mul_reference). Log/antilog tables are built from it once and
// used afterwards; the tests check both agree on every pair for small fields.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace scatterforge {

enum class Level { base, q, qm, q2m };

std::string_view to_string(Level level);

/// Packed field element; only meaningful together with the Field it came from.
struct Elem {
    std::uint32_t v = 0;

    friend constexpr bool operator==(Elem, Elem) = default;
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Field {
  public:
    /// Largest field for which tables are built.
    static constexpr std::uint64_t kMaxSize = std::uint64_t{1} << 24;

    static std::shared_ptr<const Field> prime(std::uint32_t p);

    /// Extension of `sub` by a monic polynomial (low degree first) verified irreducible here.
    static std::shared_ptr<const Field> extension(std::shared_ptr<const Field> sub, std::vector<Elem> modulus,
                                                  Level level);

    Level level() const { return level_; }
    std::uint32_t characteristic() const { return p_; }
    std::uint32_t size() const { return size_; }
    /// Degree over the immediate subfield (1 for a prime field).
    unsigned degree() const { return degree_; }
    /// Degree over F_p.
    unsigned absolute_degree() const { return abs_degree_; }
    const Field* subfield() const { return sub_.get(); }
    std::shared_ptr<const Field> subfield_ptr() const { return sub_; }
    std::uint32_t subfield_size() const { return sub_size_; }
    /// Defining polynomial over the subfield, monic, low degree first. Empty for F_p.
    std::span<const Elem> modulus() const { return modulus_; }

    Elem zero() const { return {0}; }
    Elem one() const { return {1}; }
    Elem element(std::uint64_t index) const;

    Elem add(Elem a, Elem b) const {
        if (p_ == 2) return {a.v ^ b.v};
        if (a.v == 0) return b;
        if (b.v == 0) return a;
        std::uint32_t la = log_[a.v];
        std::uint32_t d = log_[b.v] >= la ? log_[b.v] - la : log_[b.v] + order_ - la;
        std::uint32_t z = zech_[d];
        if (z == kNoLog) return {0};
        return {exp_[la + z]};
    }
    Elem neg(Elem a) const {
        if (p_ == 2 || a.v == 0) return a;
        return {exp_[log_[a.v] + order_ / 2]};
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (a.v == 0 || b.v == 0) return {0};
        return {exp_[log_[a.v] + log_[b.v]]};
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t k) const;
    /// Signed exponent; negative powers require a != 0.
    Elem pow_signed(Elem a, std::int64_t k) const;

    /// Reference arithmetic straight from the representation (no tables).
    Elem add_reference(Elem a, Elem b) const;
    Elem mul_reference(Elem a, Elem b) const;

    /// x^(Q^k) with Q = |subfield|: the k-th power of the relative Frobenius.
    Elem frobenius(Elem a, std::uint64_t k) const;
    /// x^(p^k).
    Elem frobenius_p(Elem a, std::uint64_t k) const;

    /// Norm and trace down to the immediate subfield (results are subfield indices).
    Elem relative_norm(Elem a) const;
    Elem relative_trace(Elem a) const;

    bool in_subfield(Elem a) const { return a.v < sub_size_; }

    /// Coefficients over the immediate subfield, length degree().
    std::vector<Elem> coefficients(Elem a) const;
    Elem from_coefficients(std::span<const Elem> coeffs) const;
    /// Flat F_p coordinates, little-endian, length absolute_degree().
    std::vector<std::uint32_t> prime_digits(Elem a) const;
    Elem from_prime_digits(std::span<const std::uint32_t> digits) const;

    Elem primitive() const { return {exp_[1 % order_]}; }
    std::uint32_t log(Elem a) const;  // a != 0
    Elem exp(std::uint64_t k) const { return {exp_[k % order_]}; }

  private:
    Field() = default;
    void build_tables();
    Elem find_primitive() const;

    static constexpr std::uint32_t kNoLog = 0xffffffffu;

    Level level_ = Level::base;
    std::uint32_t p_ = 0;
    std::uint32_t size_ = 0;
    std::uint32_t order_ = 0;  // size_ - 1
    unsigned degree_ = 1;
    unsigned abs_degree_ = 1;
    std::uint32_t sub_size_ = 1;
    std::shared_ptr<const Field> sub_;
    std::vector<Elem> modulus_;
    std::vector<std::uint32_t> exp_;  // length 2*order_
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> zech_;    // odd p only: log(1 + g^i)
    std::vector<std::uint64_t> frob_q_;  // Q^k mod order, k < degree
    std::vector<std::uint64_t> frob_p_;  // p^k mod order, k < abs_degree
};

/// Optional user-supplied defining polynomials, coefficients little-endian.
/// poly_q over F_p; poly_qm coefficients are F_q elements given by their F_p digits;
/// poly_q2m coefficients are F_{q^m} elements given by their flat F_p digits.
struct SeedPolynomials {
    std::optional<std::vector<std::uint32_t>> poly_q;
    std::optional<std::vector<std::vector<std::uint32_t>>> poly_qm;
    std::optional<std::vector<std::vector<std::uint32_t>>> poly_q2m;
};

/// The tower F_p ⊆ F_q ⊆ F_{q^m} (⊆ F_{q^{2m}} when extended). Immutable and shareable.
class Tower {
  public:
    static Tower build(std::uint32_t p, unsigned e, unsigned m, const SeedPolynomials& seeds = {});

    /// Same tower with F_{q^{2m}} attached.
    Tower with_quadratic_extension(const std::optional<std::vector<std::vector<std::uint32_t>>>& poly = {}) const;

    std::uint32_t p() const { return p_; }
    unsigned e() const { return e_; }
    unsigned m() const { return m_; }
    std::uint32_t q() const { return fq_->size(); }
    std::uint32_t qm() const { return fqm_->size(); }

    const Field& base() const { return *fp_; }
    const Field& fq() const { return *fq_; }
    const Field& fqm() const { return *fqm_; }
    bool has_q2m() const { return static_cast<bool>(fq2m_); }
    const Field& fq2m() const;

    /// x -> x^(q^s) on F_{q^m}; requires 0 <= s < m.
    Elem frobenius(Elem x, int s) const;
    Elem norm(Elem x) const { return fqm_->relative_norm(x); }
    Elem trace(Elem x) const { return fqm_->relative_trace(x); }

  private:
    std::uint32_t p_ = 0;
    unsigned e_ = 0;
    unsigned m_ = 0;
    std::shared_ptr<const Field> fp_, fq_, fqm_, fq2m_;
};

/// Smallest prime factor of n >= 2.
std::uint64_t smallest_prime_factor(std::uint64_t n);
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

}  // namespace scatterforge
