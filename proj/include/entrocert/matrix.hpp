#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace entrocert {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Sized for desk-scale work (side <= 64).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    /// Row-wise literal, e.g. {{1, 0}, {0, 1}}. All rows must have equal length.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    /// |v><w| for column vectors v, w.
    static ComplexMatrix outer(std::span<const Complex> v, std::span<const Complex> w);
    /// Matrix unit E_ab of the given shape.
    static ComplexMatrix unit(std::size_t rows, std::size_t cols, std::size_t a, std::size_t b);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool is_square() const { return rows_ == cols_; }
    [[nodiscard]] std::span<const Complex> entries() const { return data_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    [[nodiscard]] ComplexMatrix adjoint() const;
    [[nodiscard]] Complex trace() const;
    /// Largest entrywise modulus.
    [[nodiscard]] double max_abs() const;
    /// max |a - a^dagger| entrywise; meaningful for square matrices.
    [[nodiscard]] double hermiticity_residual() const;
    [[nodiscard]] std::vector<Complex> column(std::size_t c) const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// max |a - b| entrywise. Throws DimensionMismatch on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Spectral decomposition of a Hermitian matrix.
struct EigenSystem {
    std::vector<double> eigenvalues;  // nonincreasing
    ComplexMatrix eigenvectors;       // column j pairs with eigenvalues[j]

    /// sum_j s_j |e_j><e_j|
    [[nodiscard]] ComplexMatrix reconstruct() const;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Eigenvalues come back nonincreasing. Each eigenvector is phase-fixed so its
/// first entry of maximal modulus is real and positive; within a cluster of
/// equal eigenvalues, vectors are ordered lexicographically descending on their
/// entries rounded to 12 decimals, so the identity yields the standard basis.
/// Identical inputs give bit-identical outputs.
///
/// Throws NotSquare, or NotHermitian when max |a - a^dagger| exceeds the
/// configured tolerance.
EigenSystem hermitian_eig(const ComplexMatrix& a);

/// Kronecker product; row index of the result is i_a * rows(b) + i_b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { kFirst, kSecond };

/// Partial trace of a bipartite operator on a (dims.first x dims.second) space,
/// keeping the selected factor.
ComplexMatrix partial_trace(const ComplexMatrix& w, std::pair<std::size_t, std::size_t> dims,
                            Subsystem keep);

/// Linear map on matrices, e.g. a channel action.
using MatrixMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// (map (x) Id)(w) for w on a (dims.first x dims.second) space. The map may
/// change the first factor's dimension; the output has side out_dim * dims.second.
ComplexMatrix apply_to_subsystem(const MatrixMap& map, const ComplexMatrix& w,
                                 std::pair<std::size_t, std::size_t> dims);

}  // namespace entrocert
