#pragma once

// Small dense matrices over a Field, plus an incremental echelon basis used by the
// F_q-rank computations in the enumeration kernels.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scatterforge/field.hpp"

namespace scatterforge {

class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    void append_row(std::span<const Elem> r);

    friend bool operator==(const Matrix&, const Matrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Elem> data_;
};

Matrix multiply(const Field& F, const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

template <class Fn>
Matrix map_entries(const Matrix& a, Fn&& fn) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = fn(a(r, c));
    return out;
}

/// In place reduced row-echelon form; zero rows are dropped. Returns the pivot columns.
std::vector<std::size_t> rref(const Field& F, Matrix& a);
std::size_t rank(const Field& F, Matrix a);
Elem determinant(const Field& F, Matrix a);
Elem trace(const Field& F, const Matrix& a);
/// Rows form a basis of {x : a x^T = 0}.
Matrix right_kernel(const Field& F, const Matrix& a);

/// Incremental echelon basis of an F_q-subspace of F_q^len. Each stored row has a
/// distinct pivot with entry 1 and zeros at the pivots of earlier rows.
class FqEchelon {
  public:
    FqEchelon(const Field& fq, std::size_t len);

    void clear() {
        rows_.clear();
        pivots_.clear();
        bits_.clear();
    }
    std::size_t rank() const { return pivots_.size(); }
    std::size_t length() const { return len_; }

    /// Reduces v against the basis in place; returns true if v reduced to zero.
    bool reduce(std::span<Elem> v) const;
    /// Adds v if independent; returns true if the rank grew.
    bool insert(std::span<const Elem> v);
    bool contains(std::span<const Elem> v) const;

    /// Fast path for q = 2 with len <= 64: vectors as bitmasks.
    bool insert_bits(std::uint64_t v);

  private:
    const Field* fq_;
    std::size_t len_;
    std::vector<Elem> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<std::uint64_t> bits_;
    mutable std::vector<Elem> scratch_;
};

}  // namespace scatterforge
