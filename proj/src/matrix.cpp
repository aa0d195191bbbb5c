#include "scatterforge/matrix.hpp"

#include <algorithm>
#include <bit>

#include "scatterforge/errors.hpp"

namespace scatterforge {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Elem{1};
    return m;
}

void Matrix::append_row(std::span<const Elem> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    require(r.size() == cols_, "Matrix::append_row: length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
}

Matrix multiply(const Field& F, const Matrix& a, const Matrix& b) {
    require(a.cols() == b.rows(), "multiply: dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Elem x = a(i, k);
            if (x.v == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = F.add(c(i, j), F.mul(x, b(k, j)));
        }
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
    return t;
}

std::vector<std::size_t> rref(const Field& F, Matrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && a(piv, c).v == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(piv, j));
        const Elem s = F.inv(a(r, c));
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = F.mul(a(r, j), s);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).v == 0) continue;
            const Elem f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = F.sub(a(i, j), F.mul(f, a(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix trimmed(r, a.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) trimmed(i, j) = a(i, j);
    a = std::move(trimmed);
    return pivots;
}

std::size_t rank(const Field& F, Matrix a) { return rref(F, a).size(); }

Elem determinant(const Field& F, Matrix a) {
    require(a.rows() == a.cols(), "determinant: square matrix required");
    const std::size_t n = a.rows();
    Elem det = F.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c).v == 0) ++piv;
        if (piv == n) return F.zero();
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
            det = F.neg(det);
        }
        det = F.mul(det, a(c, c));
        const Elem s = F.inv(a(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a(i, c).v == 0) continue;
            const Elem f = F.mul(a(i, c), s);
            for (std::size_t j = c; j < n; ++j) a(i, j) = F.sub(a(i, j), F.mul(f, a(c, j)));
        }
    }
    return det;
}

Elem trace(const Field& F, const Matrix& a) {
    require(a.rows() == a.cols(), "trace: square matrix required");
    Elem t = F.zero();
    for (std::size_t i = 0; i < a.rows(); ++i) t = F.add(t, a(i, i));
    return t;
}

Matrix right_kernel(const Field& F, const Matrix& a) {
    Matrix r = a;
    const auto pivots = rref(F, r);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    Matrix ker(0, a.cols());
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Elem> v(a.cols(), F.zero());
        v[free] = F.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(r(i, free));
        ker.append_row(v);
    }
    return ker;
}

// --- FqEchelon -------------------------------------------------------------------

FqEchelon::FqEchelon(const Field& fq, std::size_t len) : fq_(&fq), len_(len), scratch_(len) {}

bool FqEchelon::reduce(std::span<Elem> v) const {
    const Field& F = *fq_;
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const Elem c = v[pivots_[i]];
        if (c.v == 0) continue;
        const Elem* row = rows_.data() + i * len_;
        for (std::size_t j = 0; j < len_; ++j)
            if (row[j].v != 0) v[j] = F.sub(v[j], F.mul(c, row[j]));
    }
    return std::all_of(v.begin(), v.end(), [](Elem x) { return x.v == 0; });
}

bool FqEchelon::insert(std::span<const Elem> v) {
    require(v.size() == len_, "FqEchelon::insert: length mismatch");
    std::copy(v.begin(), v.end(), scratch_.begin());
    if (reduce(scratch_)) return false;
    std::size_t piv = 0;
    while (scratch_[piv].v == 0) ++piv;
    const Elem s = fq_->inv(scratch_[piv]);
    for (auto& x : scratch_) x = fq_->mul(x, s);
    rows_.insert(rows_.end(), scratch_.begin(), scratch_.end());
    pivots_.push_back(piv);
    return true;
}

bool FqEchelon::contains(std::span<const Elem> v) const {
    std::copy(v.begin(), v.end(), scratch_.begin());
    return reduce(scratch_);
}

bool FqEchelon::insert_bits(std::uint64_t v) {
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if ((v >> pivots_[i]) & 1u) v ^= bits_[i];
    if (v == 0) return false;
    const auto piv = static_cast<std::size_t>(std::countr_zero(v));
    bits_.push_back(v);
    pivots_.push_back(piv);
    return true;
}

}  // namespace scatterforge
