// core_math.cpp - dense oracles and the matrix-free FFT path

#include "wavesec/core_math.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wavesec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Unnormalized in-place radix-2 FFT; sign = -1 forward, +1 inverse.
void fft_radix2(ComplexVector& x, int sign) {
    const std::size_t n = x.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const Complex wlen = unit_phase(static_cast<double>(sign) / static_cast<double>(len));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const Complex u = x[i + j];
                const Complex v = x[i + j + len / 2] * w;
                x[i + j] = u + v;
                x[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Unnormalized direct transform for non-power-of-two sizes. Twiddles are
// indexed by (m*k) mod n so the phase argument stays exact.
void dft_direct(ComplexVector& x, int sign) {
    const std::size_t n = x.size();
    ComplexVector roots(n);
    for (std::size_t k = 0; k < n; ++k) {
        roots[k] = unit_phase(static_cast<double>(sign) * static_cast<double>(k) / static_cast<double>(n));
    }
    ComplexVector out(n);
    for (std::size_t m = 0; m < n; ++m) {
        Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            acc += x[k] * roots[(m * k) % n];
        }
        out[m] = acc;
    }
    x = std::move(out);
}

void transform(ComplexVector& v, int sign) {
    const std::size_t n = v.size();
    if (n <= 1) return;
    if (is_power_of_two(n)) {
        fft_radix2(v, sign);
    } else {
        dft_direct(v, sign);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& e : v) e *= scale;
}

} // namespace

Complex unit_phase(double turns) {
    double t = turns - std::floor(turns);
    const double angle = kTwoPi * t;
    return {std::cos(angle), std::sin(angle)};
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    ComplexMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex a = (*this)(r, k);
            if (a == Complex(0.0, 0.0)) continue;
            const Complex* rhs_row = &rhs.data_[k * rhs.cols_];
            Complex* out_row = &out.data_[r * rhs.cols_];
            for (std::size_t c = 0; c < rhs.cols_; ++c) out_row[c] += a * rhs_row[c];
        }
    }
    return out;
}

ComplexVector ComplexMatrix::operator*(const ComplexVector& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    ComplexVector out(rows_, Complex(0.0, 0.0));
    for (std::size_t r = 0; r < rows_; ++r) {
        Complex acc(0.0, 0.0);
        const Complex* row = &data_[r * cols_];
        for (std::size_t c = 0; c < cols_; ++c) acc += row[c] * v[c];
        out[r] = acc;
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum: dimension mismatch");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
    return out;
}

bool all_finite(const ComplexVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

bool all_finite(const ComplexMatrix& m) { return all_finite(m.data()); }

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
    double mx = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) mx = std::max(mx, std::abs(a[i] - b[i]));
    return mx;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    return max_abs_diff(a.data(), b.data());
}

double l2_norm(const ComplexVector& v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return std::sqrt(acc);
}

ComplexMatrix dft_matrix(std::size_t n) {
    if (n == 0) throw std::invalid_argument("dft_matrix: n must be positive");
    ComplexMatrix f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = 0; k < n; ++k) {
            // (m*k) mod n keeps the phase argument exact for any n
            f(m, k) = scale * unit_phase(-static_cast<double>((m * k) % n) / static_cast<double>(n));
        }
    }
    return f;
}

ComplexMatrix idft_matrix(std::size_t n) {
    if (n == 0) throw std::invalid_argument("idft_matrix: n must be positive");
    return dft_matrix(n).adjoint();
}

ComplexMatrix chirp_diag(double c, std::size_t n) {
    if (n == 0) throw std::invalid_argument("chirp_diag: n must be positive");
    if (!std::isfinite(c)) throw std::invalid_argument("chirp_diag: chirp rate must be finite");
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        m(k, k) = unit_phase(c * static_cast<double>(k) * static_cast<double>(k));
    }
    return m;
}

ComplexMatrix cyclic_shift_matrix(std::size_t shift, std::size_t n) {
    if (n == 0) throw std::invalid_argument("cyclic_shift_matrix: n must be positive");
    const std::size_t l = shift % n;
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        m(k, (k + n - l) % n) = 1.0;
    }
    return m;
}

ComplexMatrix doppler_diag(double theta, std::size_t n) {
    if (n == 0) throw std::invalid_argument("doppler_diag: n must be positive");
    if (!std::isfinite(theta)) throw std::invalid_argument("doppler_diag: theta must be finite");
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        m(k, k) = unit_phase(theta * static_cast<double>(k) / static_cast<double>(n));
    }
    return m;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("divisors: n must be positive");
    std::vector<std::uint64_t> low, high;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            low.push_back(d);
            if (d != n / d) high.push_back(n / d);
        }
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ra = 0; ra < a.rows(); ++ra)
        for (std::size_t ca = 0; ca < a.cols(); ++ca) {
            const Complex f = a(ra, ca);
            if (f == Complex(0.0, 0.0)) continue;
            for (std::size_t rb = 0; rb < b.rows(); ++rb)
                for (std::size_t cb = 0; cb < b.cols(); ++cb)
                    out(ra * b.rows() + rb, ca * b.cols() + cb) = f * b(rb, cb);
        }
    return out;
}

void dft_inplace(ComplexVector& v) { transform(v, -1); }
void idft_inplace(ComplexVector& v) { transform(v, +1); }

ComplexVector dft(ComplexVector v) {
    dft_inplace(v);
    return v;
}

ComplexVector idft(ComplexVector v) {
    idft_inplace(v);
    return v;
}

} // namespace wavesec
