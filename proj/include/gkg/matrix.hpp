#ifndef GKG_MATRIX_HPP
#define GKG_MATRIX_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gkg/ffield.hpp"

namespace gkg {

// Row-major square matrix over a finite field, entries stored as field codes.
struct Matrix {
    uint32_t n = 0;
    std::vector<uint32_t> a;

    static Matrix identity(uint32_t n) {
        Matrix m;
        m.n = n;
        m.a.assign(size_t(n) * n, 0);
        for (uint32_t i = 0; i < n; ++i) m.a[size_t(i) * n + i] = 1;
        return m;
    }

    uint32_t& at(uint32_t i, uint32_t j) { return a[size_t(i) * n + j]; }
    uint32_t at(uint32_t i, uint32_t j) const { return a[size_t(i) * n + j]; }

    bool operator==(const Matrix&) const = default;
};

// Arithmetic for matrices of one fixed dimension over one fixed field.
class MatrixSpace {
public:
    MatrixSpace(FieldPtr field, uint32_t n) : f_(std::move(field)), n_(n) {
        if (n_ == 0) throw std::invalid_argument("MatrixSpace: dimension must be positive");
    }

    const Field& field() const { return *f_; }
    FieldPtr field_ptr() const { return f_; }
    uint32_t dim() const { return n_; }

    Matrix mul(const Matrix& x, const Matrix& y) const {
        Matrix r;
        r.n = n_;
        r.a.assign(size_t(n_) * n_, 0);
        for (uint32_t i = 0; i < n_; ++i) {
            for (uint32_t k = 0; k < n_; ++k) {
                uint32_t xik = x.at(i, k);
                if (xik == 0) continue;
                for (uint32_t j = 0; j < n_; ++j) {
                    uint32_t prod = f_->mul(xik, y.at(k, j));
                    r.at(i, j) = f_->add(r.at(i, j), prod);
                }
            }
        }
        return r;
    }

    Matrix scalar_mul(uint32_t c, const Matrix& x) const {
        Matrix r = x;
        for (auto& e : r.a) e = f_->mul(c, e);
        return r;
    }

    uint32_t det(Matrix m) const {
        uint32_t d = 1;
        for (uint32_t col = 0; col < n_; ++col) {
            uint32_t pivot = col;
            while (pivot < n_ && m.at(pivot, col) == 0) ++pivot;
            if (pivot == n_) return 0;
            if (pivot != col) {
                for (uint32_t j = 0; j < n_; ++j) std::swap(m.at(pivot, j), m.at(col, j));
                d = f_->mul(d, f_->neg(1));
            }
            uint32_t pv = m.at(col, col);
            d = f_->mul(d, pv);
            uint32_t pv_inv = f_->inverse(pv);
            for (uint32_t row = col + 1; row < n_; ++row) {
                uint32_t factor = f_->mul(m.at(row, col), pv_inv);
                if (factor == 0) continue;
                for (uint32_t j = col; j < n_; ++j) {
                    uint32_t sub = f_->mul(factor, m.at(col, j));
                    m.at(row, j) = f_->sub(m.at(row, j), sub);
                }
            }
        }
        return d;
    }

    Matrix inverse(const Matrix& src) const {
        Matrix m = src;
        Matrix inv = Matrix::identity(n_);
        for (uint32_t col = 0; col < n_; ++col) {
            uint32_t pivot = col;
            while (pivot < n_ && m.at(pivot, col) == 0) ++pivot;
            if (pivot == n_) throw std::domain_error("Matrix inverse: singular");
            if (pivot != col) {
                for (uint32_t j = 0; j < n_; ++j) {
                    std::swap(m.at(pivot, j), m.at(col, j));
                    std::swap(inv.at(pivot, j), inv.at(col, j));
                }
            }
            uint32_t pv_inv = f_->inverse(m.at(col, col));
            for (uint32_t j = 0; j < n_; ++j) {
                m.at(col, j) = f_->mul(m.at(col, j), pv_inv);
                inv.at(col, j) = f_->mul(inv.at(col, j), pv_inv);
            }
            for (uint32_t row = 0; row < n_; ++row) {
                if (row == col) continue;
                uint32_t factor = m.at(row, col);
                if (factor == 0) continue;
                for (uint32_t j = 0; j < n_; ++j) {
                    m.at(row, j) = f_->sub(m.at(row, j), f_->mul(factor, m.at(col, j)));
                    inv.at(row, j) = f_->sub(inv.at(row, j), f_->mul(factor, inv.at(col, j)));
                }
            }
        }
        return inv;
    }

    // entrywise x -> x^(p^e)
    Matrix apply_frobenius(const Matrix& m, uint32_t e) const {
        Matrix r = m;
        for (auto& x : r.a) x = f_->frobenius(x, e);
        return r;
    }

    // conjugate-transpose with conjugation x -> x^(p^e)
    Matrix conj_transpose(const Matrix& m, uint32_t e) const {
        Matrix r;
        r.n = n_;
        r.a.assign(size_t(n_) * n_, 0);
        for (uint32_t i = 0; i < n_; ++i)
            for (uint32_t j = 0; j < n_; ++j) r.at(j, i) = f_->frobenius(m.at(i, j), e);
        return r;
    }

    bool is_identity(const Matrix& m) const { return m == Matrix::identity(n_); }

    bool is_scalar(const Matrix& m) const {
        uint32_t c = m.at(0, 0);
        if (c == 0) return false;
        for (uint32_t i = 0; i < n_; ++i)
            for (uint32_t j = 0; j < n_; ++j)
                if (m.at(i, j) != (i == j ? c : 0)) return false;
        return true;
    }

    // Projective canonical form: scale so the first nonzero entry in row-major
    // order becomes 1. Deterministic representative per scalar class.
    Matrix normalize_projective(const Matrix& m) const {
        for (uint32_t e : m.a) {
            if (e != 0) {
                if (e == 1) return m;
                return scalar_mul(f_->inverse(e), m);
            }
        }
        throw std::domain_error("normalize_projective: zero matrix");
    }

    std::string to_string(const Matrix& m) const {
        std::string s = "[";
        for (uint32_t i = 0; i < n_; ++i) {
            if (i > 0) s += "; ";
            for (uint32_t j = 0; j < n_; ++j) {
                if (j > 0) s += ",";
                s += std::to_string(m.at(i, j));
            }
        }
        s += "]";
        return s;
    }

private:
    FieldPtr f_;
    uint32_t n_;
};

} // namespace gkg

#endif
