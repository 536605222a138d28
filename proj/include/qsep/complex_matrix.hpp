#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qsep {

using Complex = std::complex<double>;

/// Dense square complex matrix of dimension 2, 3 or 4, stored by value.
/// Row-major storage in a fixed 4x4 backing array, so instances are cheap to
/// copy and never allocate. All binary operations require matching dimensions
/// and throw std::invalid_argument otherwise.
class ComplexMatrix {
public:
    explicit ComplexMatrix(int dim) : dim_(dim) {
        if (dim < 2 || dim > 4)
            throw std::invalid_argument("ComplexMatrix: dimension must be 2, 3 or 4, got " +
                                        std::to_string(dim));
        data_.fill(Complex{0.0, 0.0});
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    Complex& operator()(int r, int c) { return data_[static_cast<size_t>(r) * 4 + c]; }
    const Complex& operator()(int r, int c) const { return data_[static_cast<size_t>(r) * 4 + c]; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_dim(o, "operator+");
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) (*this)(r, c) += o(r, c);
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_dim(o, "operator-");
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) (*this)(r, c) -= o(r, c);
        return *this;
    }

    ComplexMatrix& operator*=(Complex s) {
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) (*this)(r, c) *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_same_dim(b, "operator*");
        ComplexMatrix out(a.dim_);
        for (int r = 0; r < a.dim_; ++r)
            for (int c = 0; c < a.dim_; ++c) {
                Complex acc{0.0, 0.0};
                for (int k = 0; k < a.dim_; ++k) acc += a(r, k) * b(k, c);
                out(r, c) = acc;
            }
        return out;
    }

    bool is_finite() const {
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c)
                if (!std::isfinite((*this)(r, c).real()) || !std::isfinite((*this)(r, c).imag()))
                    return false;
        return true;
    }

private:
    void check_same_dim(const ComplexMatrix& o, const char* op) const {
        if (dim_ != o.dim_)
            throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                        std::to_string(dim_) + " vs " + std::to_string(o.dim_) + ")");
    }

    int dim_;
    std::array<Complex, 16> data_;
};

inline ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) out(r, c) = std::conj(m(c, r));
    return out;
}

inline ComplexMatrix conjugate(const ComplexMatrix& m) {
    ComplexMatrix out(m.dim());
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) out(r, c) = std::conj(m(r, c));
    return out;
}

inline Complex trace(const ComplexMatrix& m) {
    Complex t{0.0, 0.0};
    for (int i = 0; i < m.dim(); ++i) t += m(i, i);
    return t;
}

/// Kronecker product. Result dimension is dim(a)*dim(b) and must not exceed 4,
/// so in practice both factors are 2x2.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int da = a.dim(), db = b.dim();
    if (da * db > 4)
        throw std::invalid_argument("kron: result dimension " + std::to_string(da * db) +
                                    " exceeds 4");
    ComplexMatrix out(da * db);
    for (int ra = 0; ra < da; ++ra)
        for (int ca = 0; ca < da; ++ca)
            for (int rb = 0; rb < db; ++rb)
                for (int cb = 0; cb < db; ++cb)
                    out(ra * db + rb, ca * db + cb) = a(ra, ca) * b(rb, cb);
    return out;
}

inline double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) s += std::norm(m(r, c));
    return std::sqrt(s);
}

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return frobenius_norm(a - b);
}

/// Largest entrywise deviation from Hermitian symmetry, max_ij |m_ij - conj(m_ji)|.
inline double hermitian_asymmetry(const ComplexMatrix& m) {
    double worst = 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c)
            worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
    return worst;
}

inline double max_abs_entry(const ComplexMatrix& m) {
    double worst = 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c) worst = std::max(worst, std::abs(m(r, c)));
    return worst;
}

}  // namespace qsep
