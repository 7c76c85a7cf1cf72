#pragma once

// Dense LU with complete pivoting for the small extended-precision systems of the
// quadrature solver. Row-major storage.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace pcub::detail {

template <typename T>
class DenseLU {
public:
    DenseLU(std::vector<T> a, std::size_t n) : lu_(std::move(a)), n_(n), row_(n), col_(n) {
        std::iota(row_.begin(), row_.end(), 0);
        std::iota(col_.begin(), col_.end(), 0);
        using std::abs;
        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t pr = k, pc = k;
            T best = 0;
            for (std::size_t i = k; i < n_; ++i)
                for (std::size_t j = k; j < n_; ++j)
                    if (abs(at(i, j)) > best) {
                        best = abs(at(i, j));
                        pr = i;
                        pc = j;
                    }
            if (best == T(0)) {
                singular_ = true;
                return;
            }
            if (pr != k) {
                for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(pr, j));
                std::swap(row_[k], row_[pr]);
            }
            if (pc != k) {
                for (std::size_t i = 0; i < n_; ++i) std::swap(at(i, k), at(i, pc));
                std::swap(col_[k], col_[pc]);
            }
            for (std::size_t i = k + 1; i < n_; ++i) {
                at(i, k) /= at(k, k);
                const T f = at(i, k);
                for (std::size_t j = k + 1; j < n_; ++j) at(i, j) -= f * at(k, j);
            }
        }
    }

    bool singular() const noexcept { return singular_; }

    std::vector<T> solve(const std::vector<T>& b) const {
        std::vector<T> y(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            T s = b[row_[i]];
            for (std::size_t j = 0; j < i; ++j) s -= at(i, j) * y[j];
            y[i] = s;
        }
        for (std::size_t i = n_; i-- > 0;) {
            T s = y[i];
            for (std::size_t j = i + 1; j < n_; ++j) s -= at(i, j) * y[j];
            y[i] = s / at(i, i);
        }
        std::vector<T> x(n_);
        for (std::size_t j = 0; j < n_; ++j) x[col_[j]] = y[j];
        return x;
    }

private:
    T& at(std::size_t i, std::size_t j) { return lu_[i * n_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return lu_[i * n_ + j]; }

    std::vector<T> lu_;
    std::size_t n_;
    std::vector<std::size_t> row_;
    std::vector<std::size_t> col_;
    bool singular_ = false;
};

// x^e for integer e by repeated squaring.
template <typename T>
T ipow(T x, int e) {
    if (e < 0) {
        x = T(1) / x;
        e = -e;
    }
    T result = 1;
    while (e > 0) {
        if (e & 1) result *= x;
        x *= x;
        e >>= 1;
    }
    return result;
}

} // namespace pcub::detail
