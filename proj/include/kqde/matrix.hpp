#pragma once
// Small dense matrices over an exact ring.

#include "kqde/scalar.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace kq {

template <class T>
class Mat {
public:
    Mat() = default;
    Mat(int r, int c, const T& zero) : r_(r), c_(c), d_(static_cast<size_t>(r) * c, zero), zero_(zero) {}
    static Mat identity(int n, const T& zero, const T& one) {
        Mat m(n, n, zero);
        for (int i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    const T& zero() const { return zero_; }
    T& operator()(int i, int j) { return d_[static_cast<size_t>(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return d_[static_cast<size_t>(i) * c_ + j]; }

    friend Mat operator+(const Mat& a, const Mat& b) {
        check_same(a, b);
        Mat r = a;
        for (size_t k = 0; k < r.d_.size(); ++k) r.d_[k] = a.d_[k] + b.d_[k];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        check_same(a, b);
        Mat r = a;
        for (size_t k = 0; k < r.d_.size(); ++k) r.d_[k] = a.d_[k] - b.d_[k];
        return r;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("matrix product: shape mismatch");
        Mat r(a.r_, b.c_, a.zero_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (is_zero(x)) continue;
                for (int j = 0; j < b.c_; ++j)
                    if (!is_zero(b(k, j))) r(i, j) = r(i, j) + x * b(k, j);
            }
        return r;
    }
    friend Mat operator*(const T& s, const Mat& a) {
        Mat r = a;
        for (auto& x : r.d_) x = s * x;
        return r;
    }
    bool operator==(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) return false;
        for (size_t k = 0; k < d_.size(); ++k)
            if (!(d_[k] == o.d_[k])) return false;
        return true;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat transpose() const {
        Mat r(c_, r_, zero_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    // conjugate transpose, where conjugation is the coefficient involution conj_coeff
    Mat dagger() const {
        Mat r(c_, r_, zero_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) r(j, i) = conj_coeff((*this)(i, j));
        return r;
    }
    template <class F>
    auto map(F f) const -> Mat<decltype(f(std::declval<T>()))> {
        using U = decltype(f(std::declval<T>()));
        Mat<U> r(r_, c_, f(zero_));
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

    // determinant by Laplace expansion along rows with memoised column subsets;
    // division free, so valid over any commutative ring
    T det() const {
        if (r_ != c_) throw std::invalid_argument("det of non-square matrix");
        if (r_ == 0) throw std::invalid_argument("det of empty matrix");
        std::map<unsigned, T> memo;
        std::function<T(int, unsigned)> rec = [&](int row, unsigned used) -> T {
            if (row == r_) return T(zero_) + one_like();
            auto it = memo.find(used);
            if (it != memo.end()) return it->second;
            T acc = zero_;
            int sign_pos = 0;
            for (int j = 0; j < c_; ++j) {
                if (used & (1u << j)) continue;
                const T& a = (*this)(row, j);
                if (!is_zero(a)) {
                    T sub = a * rec(row + 1, used | (1u << j));
                    if (sign_pos % 2 == 0) acc = acc + sub;
                    else acc = acc - sub;
                }
                ++sign_pos;
            }
            memo.emplace(used, acc);
            return acc;
        };
        return rec(0, 0u);
    }

    bool is_upper_unitriangular() const {
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j <= i && j < c_; ++j) {
                if (i == j && !is_one_like((*this)(i, j))) return false;
                if (i != j && !is_zero((*this)(i, j))) return false;
            }
        return true;
    }
    bool is_lower_unitriangular() const { return transpose().is_upper_unitriangular(); }

    // inverse of an upper unitriangular matrix by back substitution (ring-valid)
    Mat inverse_unitriangular() const {
        if (!is_upper_unitriangular()) {
            if (is_lower_unitriangular()) return transpose().inverse_unitriangular().transpose();
            throw std::domain_error("matrix is not unitriangular");
        }
        int n = r_;
        Mat inv = identity(n, zero_, one_like());
        for (int j = 0; j < n; ++j)
            for (int i = j - 1; i >= 0; --i) {
                T acc = zero_;
                for (int k = i + 1; k <= j; ++k)
                    if (!is_zero((*this)(i, k)) && !is_zero(inv(k, j))) acc = acc + (*this)(i, k) * inv(k, j);
                inv(i, j) = zero_ - acc;
            }
        return inv;
    }

    // Gauss-Jordan inverse; T must be a field (inv(T) defined)
    Mat inverse_field() const {
        if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
        int n = r_;
        Mat a = *this;
        Mat b = identity(n, zero_, one_like());
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int i = col; i < n; ++i)
                if (!is_zero(a(i, col))) {
                    piv = i;
                    break;
                }
            if (piv < 0) throw std::domain_error("singular matrix");
            if (piv != col)
                for (int j = 0; j < n; ++j) {
                    std::swap(a(piv, j), a(col, j));
                    std::swap(b(piv, j), b(col, j));
                }
            T p = inv(a(col, col));
            for (int j = 0; j < n; ++j) {
                a(col, j) = p * a(col, j);
                b(col, j) = p * b(col, j);
            }
            for (int i = 0; i < n; ++i) {
                if (i == col || is_zero(a(i, col))) continue;
                T f = a(i, col);
                for (int j = 0; j < n; ++j) {
                    a(i, j) = a(i, j) - f * a(col, j);
                    b(i, j) = b(i, j) - f * b(col, j);
                }
            }
        }
        return b;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < r_; ++i) {
            s += i ? ", [" : "[";
            for (int j = 0; j < c_; ++j) s += (j ? ", " : "") + to_string((*this)(i, j));
            s += "]";
        }
        return s + "]";
    }

private:
    T one_like() const { return one_of(zero_); }
    bool is_one_like(const T& x) const { return x == one_like(); }
    static void check_same(const Mat& a, const Mat& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
    }

    int r_ = 0, c_ = 0;
    std::vector<T> d_;
    T zero_{};
};

// n x n anti-diagonal permutation J
template <class T>
Mat<T> antidiagonal(int n, const T& zero, const T& one) {
    Mat<T> m(n, n, zero);
    for (int i = 0; i < n; ++i) m(i, n - 1 - i) = one;
    return m;
}

}  // namespace kq
