#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

#include "gradwalk/errors.hpp"

namespace gradwalk {

/// Largest spatial dimension supported by the fixed-capacity vector types.
inline constexpr std::size_t kMaxDim = 8;

/// A point (or vector) in R^n with 2 <= n <= kMaxDim, stored inline so the
/// walk loops never touch the heap.
class Point {
public:
    Point() = default;

    explicit Point(std::size_t dim) : dim_(dim) { check_dim(dim); }

    Point(std::initializer_list<double> coords) : dim_(coords.size()) {
        check_dim(dim_);
        std::copy(coords.begin(), coords.end(), data_.begin());
    }

    static Point from_span(std::span<const double> coords) {
        Point p(coords.size());
        std::copy(coords.begin(), coords.end(), p.data_.begin());
        return p;
    }

    static Point zero(std::size_t dim) { return Point(dim); }

    static Point unit(std::size_t dim, std::size_t axis) {
        Point p(dim);
        p[axis] = 1.0;
        return p;
    }

    std::size_t dim() const { return dim_; }

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    std::span<double> coords() { return {data_.data(), dim_}; }
    std::span<const double> coords() const { return {data_.data(), dim_}; }

    double dot(Point const& o) const {
        double s = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) s += data_[i] * o.data_[i];
        return s;
    }

    double norm_sq() const { return dot(*this); }
    double norm() const { return std::sqrt(norm_sq()); }

    bool is_finite() const {
        for (std::size_t i = 0; i < dim_; ++i)
            if (!std::isfinite(data_[i])) return false;
        return true;
    }

    Point& operator+=(Point const& o) {
        for (std::size_t i = 0; i < dim_; ++i) data_[i] += o.data_[i];
        return *this;
    }
    Point& operator-=(Point const& o) {
        for (std::size_t i = 0; i < dim_; ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Point& operator*=(double s) {
        for (std::size_t i = 0; i < dim_; ++i) data_[i] *= s;
        return *this;
    }

    /// this += s * o
    Point& axpy(double s, Point const& o) {
        for (std::size_t i = 0; i < dim_; ++i) data_[i] += s * o.data_[i];
        return *this;
    }

    friend Point operator+(Point a, Point const& b) { return a += b; }
    friend Point operator-(Point a, Point const& b) { return a -= b; }
    friend Point operator*(double s, Point a) { return a *= s; }
    friend Point operator*(Point a, double s) { return a *= s; }

    friend bool operator==(Point const& a, Point const& b) {
        if (a.dim_ != b.dim_) return false;
        for (std::size_t i = 0; i < a.dim_; ++i)
            if (a.data_[i] != b.data_[i]) return false;
        return true;
    }

private:
    static void check_dim(std::size_t dim) {
        if (dim > kMaxDim)
            throw ParameterError("dimension " + std::to_string(dim) +
                                 " exceeds supported maximum " + std::to_string(kMaxDim));
    }

    std::array<double, kMaxDim> data_{};
    std::size_t dim_ = 0;
};

inline double distance(Point const& a, Point const& b) { return (a - b).norm(); }

/// Dense n x n matrix with inline storage, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim) {
        if (dim > kMaxDim) throw ParameterError("matrix dimension exceeds kMaxDim");
    }

    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    /// a * b^T
    static Matrix outer(Point const& a, Point const& b) {
        Matrix m(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a[i] * b[j];
        return m;
    }

    std::size_t dim() const { return dim_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * kMaxDim + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * kMaxDim + j]; }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    Matrix transpose() const {
        Matrix t(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Point operator*(Point const& v) const {
        Point r(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }

    friend Matrix operator*(Matrix const& a, Matrix const& b) {
        Matrix c(a.dim_);
        for (std::size_t i = 0; i < a.dim_; ++i)
            for (std::size_t j = 0; j < a.dim_; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < a.dim_; ++k) s += a(i, k) * b(k, j);
                c(i, j) = s;
            }
        return c;
    }

    Matrix& operator+=(Matrix const& o) {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) (*this)(i, j) += o(i, j);
        return *this;
    }
    Matrix& operator*=(double s) {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) (*this)(i, j) *= s;
        return *this;
    }
    friend Matrix operator+(Matrix a, Matrix const& b) { return a += b; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }

    /// Frobenius inner product sum_ij a_ij b_ij.
    double contract(Matrix const& o) const {
        double s = 0.0;
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * o(i, j);
        return s;
    }

    double max_abs_diff(Matrix const& o) const {
        double m = 0.0;
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - o(i, j)));
        return m;
    }

private:
    std::array<double, kMaxDim * kMaxDim> data_{};
    std::size_t dim_ = 0;
};

}  // namespace gradwalk
