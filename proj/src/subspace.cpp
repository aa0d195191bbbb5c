#include "scatterforge/subspace.hpp"

#include <algorithm>

#include "scatterforge/errors.hpp"

namespace scatterforge {

// --- ProjectiveSpace ---------------------------------------------------------------

ProjectiveSpace::ProjectiveSpace(const Field& F, unsigned k) : F_(&F), k_(k), n_(F.size()), offset_(k) {
    require(k >= 1, "ProjectiveSpace: k >= 1 required");
    std::uint64_t acc = 0;
    for (unsigned i = k; i-- > 0;) {
        offset_[i] = acc;
        acc += ipow(n_, k - 1 - i);
    }
    size_ = acc;
}

void ProjectiveSpace::point(std::uint64_t rank, std::span<Elem> out) const {
    require(rank < size_ && out.size() == k_, "ProjectiveSpace::point: bad rank or buffer");
    unsigned lead = k_ - 1;
    while (lead > 0 && rank >= offset_[lead - 1]) --lead;
    std::uint64_t tail = rank - offset_[lead];
    for (unsigned j = 0; j < lead; ++j) out[j] = Elem{0};
    out[lead] = Elem{1};
    for (unsigned j = k_; j-- > lead + 1;) {
        out[j] = Elem{static_cast<std::uint32_t>(tail % n_)};
        tail /= n_;
    }
}

Vec ProjectiveSpace::point(std::uint64_t rank) const {
    Vec v(k_);
    point(rank, v);
    return v;
}

bool ProjectiveSpace::normalize(std::span<Elem> v) const {
    unsigned lead = 0;
    while (lead < v.size() && v[lead].v == 0) ++lead;
    if (lead == v.size()) return false;
    if (v[lead].v != 1) {
        const Elem s = F_->inv(v[lead]);
        for (unsigned j = lead; j < v.size(); ++j) v[j] = F_->mul(v[j], s);
    }
    return true;
}

std::uint64_t ProjectiveSpace::rank_of(std::span<const Elem> v) const {
    require(v.size() == k_, "ProjectiveSpace::rank_of: wrong length");
    unsigned lead = 0;
    while (lead < k_ && v[lead].v == 0) ++lead;
    require(lead < k_, "ProjectiveSpace::rank_of: zero vector");
    const Elem s = F_->inv(v[lead]);
    std::uint64_t tail = 0;
    for (unsigned j = lead + 1; j < k_; ++j) tail = tail * n_ + F_->mul(v[j], s).v;
    return offset_[lead] + tail;
}

// --- FqSubspace -----------------------------------------------------------------------

namespace {

void expand_into(const Tower& T, std::span<const Elem> v, std::span<Elem> out) {
    const std::uint32_t q = T.q();
    const unsigned m = T.m();
    for (std::size_t j = 0; j < v.size(); ++j) {
        std::uint32_t x = v[j].v;
        for (unsigned i = 0; i < m; ++i) {
            out[j * m + i] = Elem{x % q};
            x /= q;
        }
    }
}

}  // namespace

FqSubspace::FqSubspace(Tower tower, unsigned ambient_k, std::vector<Vec> basis)
    : tower_(std::move(tower)), k_(ambient_k), basis_(std::move(basis)) {
    require(k_ >= 1, "FqSubspace: ambient dimension >= 1 required");
    const unsigned len = k_ * tower_.m();
    Matrix a(0, len);
    std::vector<Elem> buf(len);
    for (const auto& v : basis_) {
        require(v.size() == k_, "FqSubspace: basis vector has wrong length");
        for (Elem x : v) require(x.v < tower_.qm(), "FqSubspace: coordinate outside F_{q^m}");
        expand_into(tower_, v, buf);
        a.append_row(buf);
    }
    const auto piv = rref(tower_.fq(), a);
    require(piv.size() == basis_.size(), "FqSubspace: basis vectors are F_q-dependent");
    canonical_ = std::move(a);
}

FqSubspace FqSubspace::span(Tower tower, unsigned ambient_k, const std::vector<Vec>& generators) {
    const unsigned len = ambient_k * tower.m();
    FqEchelon ech(tower.fq(), len);
    std::vector<Elem> buf(len);
    std::vector<Vec> basis;
    for (const auto& v : generators) {
        require(v.size() == ambient_k, "FqSubspace::span: generator has wrong length");
        expand_into(tower, v, buf);
        if (ech.insert(buf)) basis.push_back(v);
    }
    return FqSubspace(std::move(tower), ambient_k, std::move(basis));
}

std::vector<Elem> FqSubspace::expand(std::span<const Elem> v) const {
    require(v.size() == k_, "FqSubspace::expand: wrong length");
    std::vector<Elem> out(k_ * tower_.m());
    expand_into(tower_, v, out);
    return out;
}

Vec FqSubspace::collapse(std::span<const Elem> coords) const {
    const unsigned m = tower_.m();
    require(coords.size() == k_ * m, "FqSubspace::collapse: wrong length");
    Vec v(k_);
    for (unsigned j = 0; j < k_; ++j) v[j] = tower_.fqm().from_coefficients(coords.subspan(j * m, m));
    return v;
}

bool FqSubspace::contains(std::span<const Elem> v) const {
    Matrix a = canonical_;
    a.append_row(expand(v));
    return rank(tower_.fq(), std::move(a)) == dim();
}

void FqSubspace::for_each_vector(const std::function<void(std::span<const Elem>)>& fn) const {
    const Field& F = tower_.fqm();
    const std::uint32_t q = tower_.q();
    const unsigned n = dim();
    // multiples[i*q + c] = c·b_i
    std::vector<Vec> multiples(std::size_t{n} * q);
    for (unsigned i = 0; i < n; ++i)
        for (std::uint32_t c = 0; c < q; ++c) {
            Vec w(k_);
            for (unsigned j = 0; j < k_; ++j) w[j] = F.mul(Elem{c}, basis_[i][j]);
            multiples[std::size_t{i} * q + c] = std::move(w);
        }
    // Depth-first over coefficient tuples; partial[i] = Σ_{t<i} c_t b_t.
    std::vector<Vec> partial(n + 1, Vec(k_, F.zero()));
    std::vector<std::uint32_t> digit(n, 0);
    auto fill = [&](unsigned from) {
        for (unsigned i = from; i < n; ++i) {
            const Vec& w = multiples[std::size_t{i} * q + digit[i]];
            for (unsigned j = 0; j < k_; ++j) partial[i + 1][j] = F.add(partial[i][j], w[j]);
        }
    };
    fill(0);
    while (true) {
        fn(partial[n]);
        // Increment the last digit with carry.
        int i = static_cast<int>(n) - 1;
        while (i >= 0 && digit[i] == q - 1) {
            digit[i] = 0;
            --i;
        }
        if (i < 0) break;
        ++digit[i];
        fill(static_cast<unsigned>(i));
    }
}

Vec FqSubspace::vector_at(std::uint64_t index) const {
    const Field& F = tower_.fqm();
    Vec v(k_, F.zero());
    for (unsigned i = 0; i < dim(); ++i) {
        const Elem c{static_cast<std::uint32_t>(index % tower_.q())};
        index /= tower_.q();
        if (c.v == 0) continue;
        for (unsigned j = 0; j < k_; ++j) v[j] = F.add(v[j], F.mul(c, basis_[i][j]));
    }
    return v;
}

std::vector<Vec> FqSubspace::kernel_of_functionals(const std::vector<Vec>& functionals) const {
    const Field& F = tower_.fqm();
    const unsigned m = tower_.m();
    const unsigned n = dim();
    const std::size_t r = functionals.size();
    for (const auto& f : functionals) require(f.size() == k_, "kernel_of_functionals: functional has wrong length");
    if (r == 0) return basis_;
    const std::size_t left = r * m;
    Matrix a(n, left + n);
    Vec img(r);
    std::vector<Elem> buf(left);
    for (unsigned i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < r; ++t) {
            Elem acc = F.zero();
            for (unsigned j = 0; j < k_; ++j) acc = F.add(acc, F.mul(functionals[t][j], basis_[i][j]));
            img[t] = acc;
        }
        expand_into(tower_, img, buf);
        for (std::size_t c = 0; c < left; ++c) a(i, c) = buf[c];
        a(i, left + i) = F.one();
    }
    rref(tower_.fq(), a);
    std::vector<Vec> out;
    for (std::size_t row = 0; row < a.rows(); ++row) {
        bool left_zero = true;
        for (std::size_t c = 0; c < left && left_zero; ++c) left_zero = a(row, c).v == 0;
        if (!left_zero) continue;
        Vec v(k_, F.zero());
        for (unsigned i = 0; i < n; ++i) {
            const Elem c = a(row, left + i);
            if (c.v == 0) continue;
            for (unsigned j = 0; j < k_; ++j) v[j] = F.add(v[j], F.mul(c, basis_[i][j]));
        }
        out.push_back(std::move(v));
    }
    return out;
}

unsigned FqSubspace::span_rank() const { return scatterforge::span_rank(tower_.fqm(), basis_, k_); }

bool operator==(const FqSubspace& a, const FqSubspace& b) {
    return a.k_ == b.k_ && a.tower_.q() == b.tower_.q() && a.tower_.m() == b.tower_.m() &&
           a.canonical_ == b.canonical_;
}

unsigned span_rank(const Field& F, const std::vector<Vec>& vectors, unsigned ambient_k) {
    Matrix a(0, ambient_k);
    for (const auto& v : vectors) a.append_row(v);
    if (a.rows() == 0) return 0;
    return static_cast<unsigned>(rank(F, std::move(a)));
}

// --- ProjectiveSubspace ---------------------------------------------------------------

ProjectiveSubspace::ProjectiveSubspace(const Field& F, unsigned ambient_k, std::vector<Vec> basis)
    : F_(&F), k_(ambient_k), rref_(0, ambient_k) {
    for (const auto& v : basis) {
        require(v.size() == k_, "ProjectiveSubspace: vector has wrong length");
        rref_.append_row(v);
    }
    rref(F, rref_);
}

ProjectiveSubspace ProjectiveSubspace::point(const Field& F, Vec v) {
    const unsigned k = static_cast<unsigned>(v.size());
    require(std::any_of(v.begin(), v.end(), [](Elem x) { return x.v != 0; }), "point: zero vector");
    return ProjectiveSubspace(F, k, {std::move(v)});
}

ProjectiveSubspace ProjectiveSubspace::hyperplane(const Field& F, const Vec& c) {
    require(std::any_of(c.begin(), c.end(), [](Elem x) { return x.v != 0; }), "hyperplane: zero functional");
    return from_equations(F, static_cast<unsigned>(c.size()), {c});
}

ProjectiveSubspace ProjectiveSubspace::from_equations(const Field& F, unsigned ambient_k, const std::vector<Vec>& eqs) {
    Matrix a(0, ambient_k);
    for (const auto& e : eqs) a.append_row(e);
    const Matrix ker = right_kernel(F, a);
    std::vector<Vec> basis;
    for (std::size_t r = 0; r < ker.rows(); ++r) basis.emplace_back(ker.row(r).begin(), ker.row(r).end());
    return ProjectiveSubspace(F, ambient_k, std::move(basis));
}

ProjectiveSubspace ProjectiveSubspace::whole(const Field& F, unsigned ambient_k) {
    std::vector<Vec> basis;
    for (unsigned i = 0; i < ambient_k; ++i) {
        Vec v(ambient_k, F.zero());
        v[i] = F.one();
        basis.push_back(std::move(v));
    }
    return ProjectiveSubspace(F, ambient_k, std::move(basis));
}

ProjectiveSubspace ProjectiveSubspace::zero(const Field& F, unsigned ambient_k) {
    return ProjectiveSubspace(F, ambient_k, {});
}

std::vector<Vec> ProjectiveSubspace::basis() const {
    std::vector<Vec> out;
    for (std::size_t r = 0; r < rref_.rows(); ++r) out.emplace_back(rref_.row(r).begin(), rref_.row(r).end());
    return out;
}

std::vector<Vec> ProjectiveSubspace::equations() const {
    Matrix ker = rref_.rows() == 0 ? Matrix::identity(k_) : right_kernel(*F_, rref_);
    std::vector<Vec> out;
    for (std::size_t r = 0; r < ker.rows(); ++r) out.emplace_back(ker.row(r).begin(), ker.row(r).end());
    return out;
}

bool ProjectiveSubspace::contains(std::span<const Elem> v) const {
    Matrix a = rref_;
    a.append_row(v);
    return rank(*F_, std::move(a)) == dim();
}

}  // namespace scatterforge
