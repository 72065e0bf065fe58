#include "lrc/matrix.hpp"

#include "lrc/error.hpp"

namespace lrc {

std::vector<Fe> Matrix::row(std::size_t i) const
{
    return std::vector<Fe>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

void Matrix::set_row(std::size_t i, const std::vector<Fe>& values)
{
    if (values.size() != cols_) {
        throw Error(ErrorCode::DimensionMismatch, "row length");
    }
    std::copy(values.begin(), values.end(), data_.begin() + i * cols_);
}

void Matrix::append_row(const std::vector<Fe>& values)
{
    if (rows_ == 0 && cols_ == 0) {
        cols_ = values.size();
    }
    if (values.size() != cols_) {
        throw Error(ErrorCode::DimensionMismatch, "row length");
    }
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const
{
    Matrix out(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out.at(i, j) = at(idx[i], j);
        }
    }
    return out;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const
{
    Matrix out(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) {
            out.at(i, j) = at(i, idx[j]);
        }
    }
    return out;
}

Matrix Matrix::transpose() const
{
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out.at(j, i) = at(i, j);
        }
    }
    return out;
}

namespace linalg {

std::vector<std::size_t> rref(const Field& F, Matrix& M)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < M.cols() && r < M.rows(); ++c) {
        std::size_t piv = r;
        while (piv < M.rows() && M.at(piv, c).is_zero()) {
            ++piv;
        }
        if (piv == M.rows()) {
            continue;
        }
        if (piv != r) {
            for (std::size_t j = 0; j < M.cols(); ++j) {
                std::swap(M.at(piv, j), M.at(r, j));
            }
        }
        Fe s = F.inv(M.at(r, c));
        for (std::size_t j = c; j < M.cols(); ++j) {
            M.at(r, j) = F.mul(M.at(r, j), s);
        }
        for (std::size_t i = 0; i < M.rows(); ++i) {
            if (i == r || M.at(i, c).is_zero()) {
                continue;
            }
            Fe f = M.at(i, c);
            for (std::size_t j = c; j < M.cols(); ++j) {
                M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(r, j)));
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(const Field& F, Matrix M)
{
    return rref(F, M).size();
}

Fe det(const Field& F, Matrix M)
{
    if (M.rows() != M.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    }
    std::size_t n = M.rows();
    Fe d = F.one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && M.at(piv, c).is_zero()) {
            ++piv;
        }
        if (piv == n) {
            return Fe(0);
        }
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(M.at(piv, j), M.at(c, j));
            }
            d = F.neg(d);
        }
        d = F.mul(d, M.at(c, c));
        Fe s = F.inv(M.at(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (M.at(i, c).is_zero()) {
                continue;
            }
            Fe f = F.mul(M.at(i, c), s);
            for (std::size_t j = c; j < n; ++j) {
                M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(c, j)));
            }
        }
    }
    return d;
}

std::optional<std::vector<Fe>> solve(const Field& F, const Matrix& A, const std::vector<Fe>& b)
{
    std::size_t n = A.rows();
    if (A.cols() != n || b.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "solve needs a square system");
    }
    Matrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug.at(i, j) = A.at(i, j);
        }
        aug.at(i, n) = b[i];
    }
    auto piv = rref(F, aug);
    if (piv.size() < n || piv.back() >= n) {
        return std::nullopt;
    }
    std::vector<Fe> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = aug.at(i, n);
    }
    return x;
}

std::vector<std::vector<Fe>> kernel(const Field& F, const Matrix& M0)
{
    Matrix M = M0;
    auto piv = rref(F, M);
    std::vector<bool> is_piv(M.cols(), false);
    for (auto c : piv) {
        is_piv[c] = true;
    }
    std::vector<std::vector<Fe>> out;
    for (std::size_t f = 0; f < M.cols(); ++f) {
        if (is_piv[f]) {
            continue;
        }
        std::vector<Fe> v(M.cols(), Fe(0));
        v[f] = F.one();
        for (std::size_t r = 0; r < piv.size(); ++r) {
            v[piv[r]] = F.neg(M.at(r, f));
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Fe> vec_mul(const Field& F, const std::vector<Fe>& v, const Matrix& M)
{
    if (v.size() != M.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(v.size()) +
                                                      " vs " + std::to_string(M.rows()) + " rows");
    }
    std::vector<Fe> out(M.cols(), Fe(0));
    for (std::size_t i = 0; i < M.rows(); ++i) {
        if (v[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < M.cols(); ++j) {
            out[j] = F.add(out[j], F.mul(v[i], M.at(i, j)));
        }
    }
    return out;
}

std::vector<Fe> mul_vec(const Field& F, const Matrix& M, const std::vector<Fe>& v)
{
    if (v.size() != M.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "vector length");
    }
    std::vector<Fe> out(M.rows(), Fe(0));
    for (std::size_t i = 0; i < M.rows(); ++i) {
        for (std::size_t j = 0; j < M.cols(); ++j) {
            out[i] = F.add(out[i], F.mul(M.at(i, j), v[j]));
        }
    }
    return out;
}

Matrix mul(const Field& F, const Matrix& A, const Matrix& B)
{
    if (A.cols() != B.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix product");
    }
    Matrix out(A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        out.set_row(i, vec_mul(F, A.row(i), B));
    }
    return out;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    if (k > n) {
        return out;
    }
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) {
        cur[i] = i;
    }
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            cur[j] = cur[j - 1] + 1;
        }
    }
    return out;
}

std::optional<std::vector<std::size_t>> singular_row_subset(const Field& F, const Matrix& L)
{
    std::size_t k = L.cols();
    for (const auto& rows : subsets(L.rows(), k)) {
        if (det(F, L.select_rows(rows)).is_zero()) {
            return rows;
        }
    }
    return std::nullopt;
}

}  // namespace linalg
}  // namespace lrc
