#pragma once

// Dense row-major matrices, plus an exact rational matrix stored as an integer
// matrix over one common denominator.

#include <cassert>
#include <cstddef>
#include <gmpxx.h>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cayleywalk {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(Rational const& q) { return q.get_str(); }

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on junk or q = 0.
inline Rational parse_rational(std::string const& s)
{
    auto slash = s.find('/');
    auto valid_int = [](std::string const& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("not a rational: " + s);
    if (num[0] == '+') num.erase(0, 1);
    if (den[0] == '+') den.erase(0, 1);
    Integer n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    Rational q(n, d);
    q.canonicalize();
    return q;
}

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T const& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    static Matrix identity(std::size_t n, T const& zero = T(0), T const& one = T(1))
    {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    T const& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<T const> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<T>& data() { return data_; }
    std::vector<T> const& data() const { return data_; }

    bool operator==(Matrix const&) const = default;

    Matrix transposed() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    template <typename F>
    auto map(F&& f) const -> Matrix<decltype(f(std::declval<T const&>()))>
    {
        Matrix<decltype(f(std::declval<T const&>()))> out(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) out.data()[k] = f(data_[k]);
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <typename T>
Matrix<T> operator*(Matrix<T> const& a, Matrix<T> const& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix<T> c(a.rows(), b.cols(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto crow = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            T const& aik = a(i, k);
            if (aik == T(0)) continue;
            auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

template <typename T>
Matrix<T> operator+(Matrix<T> a, Matrix<T> const& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
    for (std::size_t k = 0; k < a.data().size(); ++k) a.data()[k] += b.data()[k];
    return a;
}

template <typename T>
Matrix<T> operator-(Matrix<T> a, Matrix<T> const& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference: shape mismatch");
    for (std::size_t k = 0; k < a.data().size(); ++k) a.data()[k] -= b.data()[k];
    return a;
}

/// Kronecker product; row index of the result is i_a * b.rows() + i_b.
template <typename T>
Matrix<T> kron(Matrix<T> const& a, Matrix<T> const& b)
{
    Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            T const& aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

/// Exact rational matrix num / den with den > 0 and gcd(all num, den) = 1.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : num_(rows, cols, Integer(0)), den_(1) {}
    RationalMatrix(Matrix<Integer> num, Integer den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_ == 0) throw std::invalid_argument("rational matrix with zero denominator");
        normalize();
    }

    template <typename I>
    static RationalMatrix from_integers(Matrix<I> const& m)
    {
        return RationalMatrix(m.map([](I const& x) { return Integer(x); }), Integer(1));
    }

    static RationalMatrix from_rationals(Matrix<Rational> const& m)
    {
        Integer den = 1;
        for (auto const& q : m.data()) den = lcm_of(den, q.get_den());
        Matrix<Integer> num(m.rows(), m.cols());
        for (std::size_t k = 0; k < m.data().size(); ++k) {
            auto const& q = m.data()[k];
            num.data()[k] = q.get_num() * (den / q.get_den());
        }
        return RationalMatrix(std::move(num), den);
    }

    static RationalMatrix identity(std::size_t n)
    {
        return RationalMatrix(Matrix<Integer>::identity(n, Integer(0), Integer(1)), Integer(1));
    }

    /// (1/n) J_n
    static RationalMatrix averaging(std::size_t n)
    {
        return RationalMatrix(Matrix<Integer>(n, n, Integer(1)), Integer(static_cast<unsigned long>(n)));
    }

    std::size_t rows() const { return num_.rows(); }
    std::size_t cols() const { return num_.cols(); }
    Matrix<Integer> const& numerators() const { return num_; }
    Integer const& denominator() const { return den_; }

    Rational at(std::size_t i, std::size_t j) const
    {
        Rational q(num_(i, j), den_);
        q.canonicalize();
        return q;
    }

    Matrix<Rational> to_rationals() const
    {
        Matrix<Rational> out(rows(), cols());
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j) out(i, j) = at(i, j);
        return out;
    }

    std::vector<double> column_as_double(std::size_t j) const
    {
        std::vector<double> v(rows());
        double d = den_.get_d();
        for (std::size_t i = 0; i < rows(); ++i) v[i] = num_(i, j).get_d() / d;
        return v;
    }

    Rational trace() const
    {
        Integer t = 0;
        for (std::size_t i = 0; i < rows(); ++i) t += num_(i, i);
        Rational q(t, den_);
        q.canonicalize();
        return q;
    }

    bool is_zero() const
    {
        for (auto const& x : num_.data())
            if (x != 0) return false;
        return true;
    }

    bool is_symmetric() const { return num_ == num_.transposed(); }

    bool operator==(RationalMatrix const& o) const { return den_ == o.den_ && num_ == o.num_; }

    friend RationalMatrix operator+(RationalMatrix const& a, RationalMatrix const& b)
    {
        return combine(a, b, +1);
    }
    friend RationalMatrix operator-(RationalMatrix const& a, RationalMatrix const& b)
    {
        return combine(a, b, -1);
    }
    friend RationalMatrix operator*(RationalMatrix const& a, RationalMatrix const& b)
    {
        return RationalMatrix(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalMatrix operator*(Rational const& s, RationalMatrix const& a)
    {
        Matrix<Integer> num = a.num_;
        for (auto& x : num.data()) x *= s.get_num();
        return RationalMatrix(std::move(num), a.den_ * s.get_den());
    }
    friend RationalMatrix kron(RationalMatrix const& a, RationalMatrix const& b)
    {
        return RationalMatrix(kron(a.num_, b.num_), a.den_ * b.den_);
    }

private:
    static Integer lcm_of(Integer const& a, Integer const& b)
    {
        Integer r;
        mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return r;
    }

    static RationalMatrix combine(RationalMatrix const& a, RationalMatrix const& b, int sign)
    {
        if (a.rows() != b.rows() || a.cols() != b.cols())
            throw std::invalid_argument("rational matrix sum: shape mismatch");
        Integer den = lcm_of(a.den_, b.den_);
        Integer fa = den / a.den_, fb = den / b.den_;
        Matrix<Integer> num(a.rows(), a.cols());
        for (std::size_t k = 0; k < num.data().size(); ++k) {
            if (sign > 0)
                num.data()[k] = a.num_.data()[k] * fa + b.num_.data()[k] * fb;
            else
                num.data()[k] = a.num_.data()[k] * fa - b.num_.data()[k] * fb;
        }
        return RationalMatrix(std::move(num), std::move(den));
    }

    void normalize()
    {
        if (den_ < 0) {
            den_ = -den_;
            for (auto& x : num_.data()) x = -x;
        }
        Integer g = den_;
        for (auto const& x : num_.data()) {
            if (g == 1) break;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        }
        if (g != 1) {
            for (auto& x : num_.data()) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
            den_ /= g;
        }
    }

    Matrix<Integer> num_;
    Integer den_ = 1;
};

}  // namespace cayleywalk
