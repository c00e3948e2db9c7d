#include "entrocert/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "entrocert/errors.hpp"
#include "entrocert/tolerances.hpp"

namespace entrocert {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionMismatch("matrix entries do not match rows x cols");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw DimensionMismatch("ragged matrix literal");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v, std::span<const Complex> w) {
    ComplexMatrix m(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
    return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t rows, std::size_t cols, std::size_t a,
                                  std::size_t b) {
    ComplexMatrix m(rows, cols);
    m(a, b) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::hermiticity_residual() const {
    if (!is_square()) return INFINITY;
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

std::vector<Complex> ComplexMatrix::column(std::size_t c) const {
    std::vector<Complex> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw DimensionMismatch("matrix sum shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw DimensionMismatch("matrix difference shape mismatch");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
        throw DimensionMismatch("matrix product shape mismatch");
    }
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).max_abs();
}

ComplexMatrix EigenSystem::reconstruct() const {
    const std::size_t n = eigenvectors.rows();
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < eigenvalues.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) += eigenvalues[k] * eigenvectors(i, k) * std::conj(eigenvectors(j, k));
    return m;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One Jacobi rotation annihilating a(p, q). The rotation is U = P R with
// P = diag(1, e^{-i phi}) making a(p, q) real and R the classical real
// Jacobi rotation; A <- U^dagger A U and V <- V U.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const Complex phase = apq / r;  // e^{i phi}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * r);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // U in the (p, q) plane: [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
    const Complex u_pp = c;
    const Complex u_pq = s;
    const Complex u_qp = -s * std::conj(phase);
    const Complex u_qq = c * std::conj(phase);

    const std::size_t n = a.rows();
    // A <- A U (columns p, q)
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * u_pp + akq * u_qp;
        a(k, q) = akp * u_pq + akq * u_qq;
    }
    // A <- U^dagger A (rows p, q)
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
        a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * u_pp + vkq * u_qp;
        v(k, q) = vkp * u_pq + vkq * u_qq;
    }
}

void fix_phase(std::vector<Complex>& vec) {
    double best = -1.0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < vec.size(); ++i) {
        // Ties within rounding go to the earliest index.
        const double m = std::abs(vec[i]);
        if (m > best + 1e-12) {
            best = m;
            idx = i;
        }
    }
    if (best <= 0.0) return;
    const Complex rot = std::conj(vec[idx]) / std::abs(vec[idx]);
    for (auto& z : vec) z *= rot;
    vec[idx] = std::abs(vec[idx]);
}

double round12(double x) {
    const double r = std::round(x * 1e12) / 1e12;
    return r == 0.0 ? 0.0 : r;  // fold -0
}

bool lex_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ar = round12(a[i].real()), br = round12(b[i].real());
        if (ar != br) return ar < br;
        const double ai = round12(a[i].imag()), bi = round12(b[i].imag());
        if (ai != bi) return ai < bi;
    }
    return false;
}

}  // namespace

EigenSystem hermitian_eig(const ComplexMatrix& input) {
    if (!input.is_square()) {
        throw NotSquare("hermitian_eig: matrix is " + std::to_string(input.rows()) + "x" +
                        std::to_string(input.cols()));
    }
    const Tolerances& tol = tolerances();
    const double herm = input.hermiticity_residual();
    if (herm > tol.hermitian) {
        std::ostringstream msg;
        msg << "hermitian_eig: max |a - a^dagger| = " << herm;
        throw NotHermitian(msg.str());
    }

    const std::size_t n = input.rows();
    ComplexMatrix a = (input + input.adjoint()) * Complex{0.5, 0.0};
    ComplexMatrix v = ComplexMatrix::identity(n);

    for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
        if (off_diagonal_norm(a) < tol.jacobi_off) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }

    struct Pair {
        double value;
        std::vector<Complex> vec;
    };
    std::vector<Pair> pairs(n);
    for (std::size_t j = 0; j < n; ++j) {
        pairs[j].value = a(j, j).real();
        pairs[j].vec = v.column(j);
        fix_phase(pairs[j].vec);
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const Pair& x, const Pair& y) { return x.value > y.value; });
    // Order degenerate clusters deterministically.
    for (std::size_t start = 0; start < n;) {
        std::size_t end = start + 1;
        while (end < n && pairs[end - 1].value - pairs[end].value <= tol.degenerate_cluster) ++end;
        std::stable_sort(pairs.begin() + static_cast<std::ptrdiff_t>(start),
                         pairs.begin() + static_cast<std::ptrdiff_t>(end),
                         [](const Pair& x, const Pair& y) { return lex_less(y.vec, x.vec); });
        start = end;
    }

    EigenSystem es;
    es.eigenvalues.resize(n);
    es.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        es.eigenvalues[j] = pairs[j].value;
        for (std::size_t i = 0; i < n; ++i) es.eigenvectors(i, j) = pairs[j].vec[i];
    }
    return es;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const Complex x = a(ia, ja);
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    out(ia * b.rows() + ib, ja * b.cols() + jb) = x * b(ib, jb);
        }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& w, std::pair<std::size_t, std::size_t> dims,
                            Subsystem keep) {
    const auto [da, db] = dims;
    if (!w.is_square() || w.rows() != da * db) {
        throw DimensionMismatch("partial_trace: matrix side " + std::to_string(w.rows()) +
                                " does not equal " + std::to_string(da) + " x " +
                                std::to_string(db));
    }
    if (keep == Subsystem::kFirst) {
        ComplexMatrix out(da, da);
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < da; ++j)
                for (std::size_t b = 0; b < db; ++b) out(i, j) += w(i * db + b, j * db + b);
        return out;
    }
    ComplexMatrix out(db, db);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t a = 0; a < da; ++a) out(i, j) += w(a * db + i, a * db + j);
    return out;
}

ComplexMatrix apply_to_subsystem(const MatrixMap& map, const ComplexMatrix& w,
                                 std::pair<std::size_t, std::size_t> dims) {
    const auto [da, db] = dims;
    if (!w.is_square() || w.rows() != da * db) {
        throw DimensionMismatch("apply_to_subsystem: matrix side " + std::to_string(w.rows()) +
                                " does not equal " + std::to_string(da) + " x " +
                                std::to_string(db));
    }
    // w = sum_{b, b'} W_{bb'} (x) |b><b'|; the map acts on each block W_{bb'}.
    ComplexMatrix out;
    std::size_t dout = 0;
    for (std::size_t b = 0; b < db; ++b)
        for (std::size_t bp = 0; bp < db; ++bp) {
            ComplexMatrix block(da, da);
            for (std::size_t i = 0; i < da; ++i)
                for (std::size_t j = 0; j < da; ++j) block(i, j) = w(i * db + b, j * db + bp);
            const ComplexMatrix image = map(block);
            if (!image.is_square()) {
                throw DimensionMismatch("apply_to_subsystem: map output is not square");
            }
            if (dout == 0) {
                dout = image.rows();
                out = ComplexMatrix(dout * db, dout * db);
            } else if (image.rows() != dout) {
                throw DimensionMismatch("apply_to_subsystem: map output size varies");
            }
            for (std::size_t i = 0; i < dout; ++i)
                for (std::size_t j = 0; j < dout; ++j) out(i * db + b, j * db + bp) = image(i, j);
        }
    return out;
}

}  // namespace entrocert
