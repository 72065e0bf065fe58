#pragma once

#include <optional>
#include <vector>

#include "lrc/field.hpp"

namespace lrc {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Fe& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Fe at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::vector<Fe> row(std::size_t i) const;
    void set_row(std::size_t i, const std::vector<Fe>& values);
    void append_row(const std::vector<Fe>& values);

    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    Matrix select_cols(const std::vector<std::size_t>& idx) const;
    Matrix transpose() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Fe> data_;
};

namespace linalg {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(const Field& F, Matrix& M);
std::size_t rank(const Field& F, Matrix M);
Fe det(const Field& F, Matrix M);
// Unique x with A x = b for square invertible A, else nullopt.
std::optional<std::vector<Fe>> solve(const Field& F, const Matrix& A, const std::vector<Fe>& b);
// Basis of {x : M x = 0}, one vector per free column, in column order.
std::vector<std::vector<Fe>> kernel(const Field& F, const Matrix& M);
// v * M.
std::vector<Fe> vec_mul(const Field& F, const std::vector<Fe>& v, const Matrix& M);
// M * v.
std::vector<Fe> mul_vec(const Field& F, const Matrix& M, const std::vector<Fe>& v);
Matrix mul(const Field& F, const Matrix& A, const Matrix& B);

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);
// First set of cols() rows (lexicographic) forming a singular square submatrix, or nullopt.
std::optional<std::vector<std::size_t>> singular_row_subset(const Field& F, const Matrix& L);

}  // namespace linalg
}  // namespace lrc
