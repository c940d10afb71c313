#pragma once

#include <string>
#include <type_traits>
#include <vector>

#include "cdzero/element.hpp"
#include "cdzero/errors.hpp"
#include "cdzero/rational.hpp"

namespace cdzero {

/// What a materialized operator matrix represents.
enum class MatrixTag { L, R, LSquared, A, S, Composite };

inline std::string to_string(MatrixTag t) {
    switch (t) {
        case MatrixTag::L: return "L";
        case MatrixTag::R: return "R";
        case MatrixTag::LSquared: return "L^2";
        case MatrixTag::A: return "A";
        case MatrixTag::S: return "S";
        default: return "composite";
    }
}

/// Dense row-major matrix over an exact rational or floating scalar.
template <class S>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols, MatrixTag tag = MatrixTag::Composite)
        : rows_(rows), cols_(cols), tag_(tag), data_(std::size_t(rows) * cols, S(0)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    MatrixTag tag() const { return tag_; }
    void set_tag(MatrixTag t) { tag_ = t; }

    S& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
    const S& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
        return r;
    }
    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = -data_[k];
        return r;
    }
    Matrix operator*(const S& c) const {
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] * c;
        return r;
    }
    friend Matrix operator*(const S& c, const Matrix& m) { return m * c; }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw PreconditionError("matrix shape mismatch in product");
        if constexpr (std::is_same_v<S, Rational>) return rational_product(*this, o);
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const S& aik = (*this)(i, k);
                if (aik == S(0)) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    bool is_zero() const {
        for (const S& v : data_)
            if (v != S(0)) return false;
        return true;
    }

    std::vector<S> apply(const std::vector<S>& x) const {
        if (int(x.size()) != cols_) throw PreconditionError("matrix/vector size mismatch");
        std::vector<S> y(std::size_t(rows_), S(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) y[std::size_t(i)] += (*this)(i, j) * x[std::size_t(j)];
        return y;
    }

    Element<S> apply(const Element<S>& x) const {
        if (cols_ != x.dim() || rows_ != x.dim())
            throw PreconditionError("operator matrix does not match element dimension");
        Element<S> y(x.level());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw PreconditionError("matrix shape mismatch");
    }

    /// Exact product over a common denominator: gcd normalisation happens once
    /// per result entry instead of once per multiply-add.
    static Matrix rational_product(const Matrix& a, const Matrix& b) {
        using boost::multiprecision::denominator;
        using boost::multiprecision::lcm;
        using boost::multiprecision::numerator;
        const auto scaled = [](const Matrix& m, std::vector<BigInt>& out) {
            BigInt den = 1;
            for (const S& v : m.data_) den = lcm(den, denominator(v));
            out.resize(m.data_.size());
            for (std::size_t k = 0; k < m.data_.size(); ++k)
                out[k] = numerator(m.data_[k]) * (den / denominator(m.data_[k]));
            return den;
        };
        std::vector<BigInt> ia, ib;
        const BigInt da = scaled(a, ia);
        const BigInt db = scaled(b, ib);
        const int rows = a.rows_, inner = a.cols_, cols = b.cols_;
        std::vector<BigInt> ic(std::size_t(rows) * cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < inner; ++k) {
                const BigInt& aik = ia[std::size_t(i) * inner + k];
                if (aik == 0) continue;
                const std::size_t arow = std::size_t(i) * cols, brow = std::size_t(k) * cols;
                for (int j = 0; j < cols; ++j) ic[arow + j] += aik * ib[brow + j];
            }
        const BigInt den = da * db;
        Matrix r(rows, cols);
        for (std::size_t k = 0; k < ic.size(); ++k) r.data_[k] = Rational(ic[k], den);
        return r;
    }

    int rows_, cols_;
    MatrixTag tag_ = MatrixTag::Composite;
    std::vector<S> data_;
};

/// Operator matrices are square dense matrices with a tag.
template <class S>
using OperatorMatrix = Matrix<S>;

inline Matrix<double> to_double(const Matrix<Rational>& m) {
    Matrix<double> r(m.rows(), m.cols(), m.tag());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = to_double(m(i, j));
    return r;
}

inline const Matrix<double>& to_double(const Matrix<double>& m) { return m; }

/// Plain-text grid for diffing in tests and CLI dumps.
template <class S>
std::string to_text_grid(const Matrix<S>& m) {
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out += ' ';
            out += format_scalar(m(i, j));
        }
        out += '\n';
    }
    return out;
}

inline double max_abs(const Matrix<double>& m) {
    double best = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const double v = m(i, j) < 0 ? -m(i, j) : m(i, j);
            if (v > best) best = v;
        }
    return best;
}

}  // namespace cdzero
