#include "scatterforge/field.hpp"

#include <string>

#include "scatterforge/errors.hpp"
#include "scatterforge/polynomial.hpp"

namespace scatterforge {

std::string_view to_string(Level level) {
    switch (level) {
        case Level::base: return "base";
        case Level::q: return "q";
        case Level::qm: return "qm";
        case Level::q2m: return "q2m";
    }
    return "?";
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t smallest_prime_factor(std::uint64_t n) {
    require(n >= 2, "smallest_prime_factor: n must be >= 2");
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % mod);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    if (mod == 1) return 0;
    std::uint64_t r = 1;
    base %= mod;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, mod);
        base = mulmod(base, base, mod);
        exp >>= 1;
    }
    return r;
}

}  // namespace

std::shared_ptr<const Field> Field::prime(std::uint32_t p) {
    require(is_prime(p), "Field::prime: " + std::to_string(p) + " is not prime");
    require(p <= kMaxSize, "Field::prime: characteristic too large");
    auto f = std::shared_ptr<Field>(new Field());
    f->level_ = Level::base;
    f->p_ = p;
    f->size_ = p;
    f->degree_ = 1;
    f->abs_degree_ = 1;
    f->sub_size_ = p;  // F_p is its own subfield
    f->build_tables();
    return f;
}

std::shared_ptr<const Field> Field::extension(std::shared_ptr<const Field> sub, std::vector<Elem> modulus,
                                              Level level) {
    require(sub != nullptr, "Field::extension: null subfield");
    poly::trim(modulus);
    const int d = poly::degree(modulus);
    require(d >= 1, "Field::extension: modulus must have degree >= 1");
    require(modulus[d] == sub->one(), "Field::extension: modulus must be monic");
    for (Elem c : modulus) require(c.v < sub->size(), "Field::extension: coefficient outside subfield");
    require(poly::is_irreducible(*sub, modulus), "Field::extension: modulus is not irreducible");
    const std::uint64_t n = ipow(sub->size(), static_cast<unsigned>(d));
    require(n <= kMaxSize, "Field::extension: field too large for table construction");

    auto f = std::shared_ptr<Field>(new Field());
    f->level_ = level;
    f->p_ = sub->characteristic();
    f->size_ = static_cast<std::uint32_t>(n);
    f->degree_ = static_cast<unsigned>(d);
    f->abs_degree_ = sub->absolute_degree() * static_cast<unsigned>(d);
    f->sub_size_ = sub->size();
    f->sub_ = std::move(sub);
    f->modulus_ = std::move(modulus);
    f->build_tables();
    return f;
}

Elem Field::element(std::uint64_t index) const {
    require(index < size_, "Field::element: index out of range");
    return Elem{static_cast<std::uint32_t>(index)};
}

Elem Field::add_reference(Elem a, Elem b) const {
    // Digitwise addition in base p of the flat F_p coordinates.
    std::uint32_t r = 0, place = 1;
    std::uint32_t x = a.v, y = b.v;
    for (unsigned i = 0; i < abs_degree_; ++i) {
        r += ((x % p_ + y % p_) % p_) * place;
        x /= p_;
        y /= p_;
        place *= p_;
    }
    return Elem{r};
}

Elem Field::mul_reference(Elem a, Elem b) const {
    if (!sub_) return Elem{static_cast<std::uint32_t>((std::uint64_t{a.v} * b.v) % p_)};
    const Field& K = *sub_;
    const auto ca = coefficients(a);
    const auto cb = coefficients(b);
    std::vector<Elem> prod(2 * degree_ - 1, K.zero());
    for (unsigned i = 0; i < degree_; ++i)
        for (unsigned j = 0; j < degree_; ++j) prod[i + j] = K.add(prod[i + j], K.mul(ca[i], cb[j]));
    // Reduce by the monic modulus from the top.
    for (int i = static_cast<int>(prod.size()) - 1; i >= static_cast<int>(degree_); --i) {
        const Elem c = prod[i];
        if (c.v == 0) continue;
        for (unsigned j = 0; j <= degree_; ++j) {
            const int idx = i - static_cast<int>(degree_) + static_cast<int>(j);
            prod[idx] = K.sub(prod[idx], K.mul(c, modulus_[j]));
        }
    }
    prod.resize(degree_);
    return from_coefficients(prod);
}

Elem Field::find_primitive() const {
    if (size_ == 2) return one();
    const std::uint64_t order = size_ - 1;
    const auto factors = prime_factors(order);
    auto slow_pow = [&](Elem a, std::uint64_t k) {
        Elem r = one();
        while (k) {
            if (k & 1) r = mul_reference(r, a);
            a = mul_reference(a, a);
            k >>= 1;
        }
        return r;
    };
    for (std::uint32_t c = 2; c < size_; ++c) {
        bool primitive = true;
        for (std::uint64_t r : factors) {
            if (slow_pow(Elem{c}, order / r) == one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) return Elem{c};
    }
    throw InvariantViolation("Field: no primitive element found");
}

void Field::build_tables() {
    order_ = size_ - 1;
    const Elem g = find_primitive();
    exp_.assign(2 * std::size_t{order_}, 0);
    log_.assign(size_, kNoLog);
    Elem x = one();
    for (std::uint32_t i = 0; i < order_; ++i) {
        if (log_[x.v] != kNoLog) throw InvariantViolation("Field: generator order too small");
        exp_[i] = x.v;
        exp_[i + order_] = x.v;
        log_[x.v] = i;
        x = mul_reference(x, g);
    }
    if (x != one()) throw InvariantViolation("Field: generator power cycle broken");
    if (p_ != 2) {
        zech_.assign(order_, kNoLog);
        for (std::uint32_t i = 0; i < order_; ++i) {
            const Elem s = add_reference(one(), Elem{exp_[i]});
            zech_[i] = s.v == 0 ? kNoLog : log_[s.v];
        }
    }
    const std::uint64_t Q = sub_ ? sub_size_ : p_;
    frob_q_.resize(degree_);
    for (unsigned k = 0; k < degree_; ++k) frob_q_[k] = powmod(Q, k, order_);
    frob_p_.resize(abs_degree_);
    for (unsigned k = 0; k < abs_degree_; ++k) frob_p_[k] = powmod(p_, k, order_);
}

Elem Field::inv(Elem a) const {
    require(a.v != 0, "Field::inv: zero has no inverse");
    const std::uint32_t l = log_[a.v];
    return Elem{exp_[l == 0 ? 0 : order_ - l]};
}

Elem Field::pow(Elem a, std::uint64_t k) const {
    if (k == 0) return one();
    if (a.v == 0) return zero();
    return Elem{exp_[mulmod(log_[a.v], k % order_, order_)]};
}

Elem Field::pow_signed(Elem a, std::int64_t k) const {
    if (k >= 0) return pow(a, static_cast<std::uint64_t>(k));
    return pow(inv(a), static_cast<std::uint64_t>(-k));
}

std::uint32_t Field::log(Elem a) const {
    require(a.v != 0 && a.v < size_, "Field::log: argument must be a nonzero element");
    return log_[a.v];
}

Elem Field::frobenius(Elem a, std::uint64_t k) const {
    if (a.v == 0 || degree_ == 1) return a;
    return Elem{exp_[mulmod(log_[a.v], frob_q_[k % degree_], order_)]};
}

Elem Field::frobenius_p(Elem a, std::uint64_t k) const {
    if (a.v == 0) return a;
    return Elem{exp_[mulmod(log_[a.v], frob_p_[k % abs_degree_], order_)]};
}

Elem Field::relative_norm(Elem a) const {
    Elem r = one();
    for (unsigned i = 0; i < degree_; ++i) r = mul(r, frobenius(a, i));
    return r;
}

Elem Field::relative_trace(Elem a) const {
    Elem r = zero();
    for (unsigned i = 0; i < degree_; ++i) r = add(r, frobenius(a, i));
    return r;
}

std::vector<Elem> Field::coefficients(Elem a) const {
    std::vector<Elem> c(degree_);
    if (!sub_) {
        c[0] = a;
        return c;
    }
    std::uint32_t x = a.v;
    for (unsigned i = 0; i < degree_; ++i) {
        c[i] = Elem{x % sub_size_};
        x /= sub_size_;
    }
    return c;
}

Elem Field::from_coefficients(std::span<const Elem> coeffs) const {
    require(coeffs.size() == degree_, "Field::from_coefficients: wrong length");
    if (!sub_) return coeffs[0];
    std::uint32_t r = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        require(coeffs[i].v < sub_size_, "Field::from_coefficients: coefficient outside subfield");
        r = r * sub_size_ + coeffs[i].v;
    }
    return Elem{r};
}

std::vector<std::uint32_t> Field::prime_digits(Elem a) const {
    std::vector<std::uint32_t> d(abs_degree_);
    std::uint32_t x = a.v;
    for (unsigned i = 0; i < abs_degree_; ++i) {
        d[i] = x % p_;
        x /= p_;
    }
    return d;
}

Elem Field::from_prime_digits(std::span<const std::uint32_t> digits) const {
    require(digits.size() == abs_degree_, "Field::from_prime_digits: wrong length");
    std::uint32_t r = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
        require(digits[i] < p_, "Field::from_prime_digits: digit out of range");
        r = r * p_ + digits[i];
    }
    return Elem{r};
}

// --- Tower -----------------------------------------------------------------------

namespace {

std::vector<Elem> lift_digits(const Field& F, const std::vector<std::vector<std::uint32_t>>& coeffs) {
    std::vector<Elem> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) out.push_back(F.from_prime_digits(c));
    return out;
}

}  // namespace

Tower Tower::build(std::uint32_t p, unsigned e, unsigned m, const SeedPolynomials& seeds) {
    require(is_prime(p), "build_tower: p = " + std::to_string(p) + " is not prime");
    require(e >= 1, "build_tower: e >= 1 required");
    require(m >= 2, "build_tower: m >= 2 required");
    Tower t;
    t.p_ = p;
    t.e_ = e;
    t.m_ = m;
    t.fp_ = Field::prime(p);

    std::vector<Elem> poly_q;
    if (seeds.poly_q) {
        for (auto c : *seeds.poly_q) {
            require(c < p, "build_tower: poly_q coefficient out of range");
            poly_q.push_back(Elem{c});
        }
        require(poly::degree(poly_q) == static_cast<int>(e), "build_tower: poly_q must have degree e");
    } else {
        poly_q = poly::smallest_monic_irreducible(*t.fp_, e);
    }
    t.fq_ = Field::extension(t.fp_, poly_q, Level::q);

    std::vector<Elem> poly_qm;
    if (seeds.poly_qm) {
        for (const auto& c : *seeds.poly_qm) require(c.size() == e, "build_tower: poly_qm coefficient needs e digits");
        poly_qm = lift_digits(*t.fq_, *seeds.poly_qm);
        require(poly::degree(poly_qm) == static_cast<int>(m), "build_tower: poly_qm must have degree m");
    } else {
        poly_qm = poly::smallest_monic_irreducible(*t.fq_, m);
    }
    t.fqm_ = Field::extension(t.fq_, poly_qm, Level::qm);

    if (seeds.poly_q2m) return t.with_quadratic_extension(seeds.poly_q2m);
    return t;
}

Tower Tower::with_quadratic_extension(const std::optional<std::vector<std::vector<std::uint32_t>>>& poly) const {
    Tower t = *this;
    std::vector<Elem> f;
    if (poly) {
        for (const auto& c : *poly)
            require(c.size() == fqm_->absolute_degree(), "poly_q2m coefficient needs e*m digits");
        f = lift_digits(*fqm_, *poly);
        require(poly::degree(f) == 2, "poly_q2m must have degree 2");
    } else {
        f = poly::smallest_monic_irreducible(*fqm_, 2);
    }
    t.fq2m_ = Field::extension(fqm_, f, Level::q2m);
    return t;
}

const Field& Tower::fq2m() const {
    require(has_q2m(), "Tower: quadratic extension not built");
    return *fq2m_;
}

Elem Tower::frobenius(Elem x, int s) const {
    require(s >= 0 && static_cast<unsigned>(s) < m_, "frobenius: 0 <= s < m required");
    require(x.v < fqm_->size(), "frobenius: element not at level qm");
    return fqm_->frobenius(x, static_cast<std::uint64_t>(s));
}

}  // namespace scatterforge
