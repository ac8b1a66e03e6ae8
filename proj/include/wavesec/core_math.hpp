// core_math.hpp - complex linear-algebra and number-theory primitives
//
// Small fixed operator set shared by the waveform, channel and analytics
// code: unitary (I)DFT matrices, chirp and Doppler diagonals, cyclic shifts,
// Kronecker products, divisor enumeration, and matrix-free FFT transforms.
//
// Conventions:
//   * double-precision complex throughout
//   * unitary DFT scaling 1/sqrt(N) in both directions
//   * phases are handled in turns (cycles) and reduced mod 1 before
//     exponentiation, so chirp arguments like c1*(N-1)^2 keep precision
//   * the dense matrices are the test oracles; dft()/idft() are the
//     matrix-free performance path and must match them

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace wavesec {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// exp(2*pi*j*turns) with the argument reduced to [0,1) first
Complex unit_phase(double turns);

// Dense row-major complex matrix. Only the operations the simulator needs.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Complex>& data() { return data_; }
    const std::vector<Complex>& data() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexVector operator*(const ComplexVector& v) const;
    ComplexMatrix operator+(const ComplexMatrix& rhs) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

bool all_finite(const ComplexVector& v);
bool all_finite(const ComplexMatrix& m);
double max_abs_diff(const ComplexVector& a, const ComplexVector& b);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double l2_norm(const ComplexVector& v);

// Unitary DFT F_n: entry (m,k) = exp(-2*pi*j*m*k/n)/sqrt(n). Rejects n = 0.
ComplexMatrix dft_matrix(std::size_t n);

// F_n^H, the conjugate transpose of dft_matrix(n).
ComplexMatrix idft_matrix(std::size_t n);

// diag(exp(2*pi*j*c*k^2)), k = 0..n-1.
ComplexMatrix chirp_diag(double c, std::size_t n);

// Forward cyclic shift Pi^l: (Pi^l v)_k = v_{(k-l) mod n}. l reduced mod n.
ComplexMatrix cyclic_shift_matrix(std::size_t shift, std::size_t n);

// diag(exp(2*pi*j*theta*k/n)), k = 0..n-1.
ComplexMatrix doppler_diag(double theta, std::size_t n);

// All positive divisors of n in ascending order; length = sigma(n). Rejects n = 0.
std::vector<std::uint64_t> divisors(std::uint64_t n);

// Kronecker product, (rows_a*rows_b) x (cols_a*cols_b).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Matrix-free unitary transforms; agree with dft_matrix/idft_matrix products.
// Radix-2 FFT for power-of-two sizes, direct evaluation otherwise.
void dft_inplace(ComplexVector& v);
void idft_inplace(ComplexVector& v);
ComplexVector dft(ComplexVector v);
ComplexVector idft(ComplexVector v);

} // namespace wavesec
