#include "ggmlt/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ggmlt {

double SeededRng::next_normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * next_unit() - 1.0;
        v = 2.0 * next_unit() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
}

std::uint64_t SeededRng::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bound must be positive");
    std::uint64_t threshold = (-bound) % bound;  // = (2^64 - bound) mod bound
    for (;;) {
        std::uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

DenseMatrix::DenseMatrix(int rows_, int cols_) : rows(rows_), cols(cols_) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix shape must be nonnegative");
    entries.assign(std::size_t(rows) * std::size_t(cols), 0.0);
}

DenseMatrix::DenseMatrix(int rows_, int cols_, std::vector<double> values)
    : rows(rows_), cols(cols_), entries(std::move(values)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix shape must be nonnegative");
    if (entries.size() != std::size_t(rows) * std::size_t(cols))
        throw std::invalid_argument("entry count does not match the matrix shape");
    for (double v : entries)
        if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
}

SymMatrix::SymMatrix(int dim_) : dim(dim_) {
    if (dim < 0) throw std::invalid_argument("matrix dimension must be nonnegative");
    entries.assign(std::size_t(dim) * std::size_t(dim), 0.0);
}

SymMatrix SymMatrix::identity(int dim) {
    SymMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

SymMatrix SymMatrix::from_entries(int dim, std::vector<double> values) {
    SymMatrix m(dim);
    if (values.size() != std::size_t(dim) * std::size_t(dim))
        throw std::invalid_argument("entry count does not match the matrix dimension");
    m.entries = std::move(values);
    double scale = 0.0;
    for (double v : m.entries) {
        if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
        scale = std::max(scale, std::abs(v));
    }
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            if (std::abs(m.at(i, j) - m.at(j, i)) > 1e-9 * std::max(scale, 1.0))
                throw std::invalid_argument("matrix is not symmetric");
    return m;
}

DenseMatrix cholesky(const SymMatrix& a) {
    int n = a.dim;
    DenseMatrix l(n, n);
    for (int j = 0; j < n; ++j) {
        double d = a.at(j, j);
        for (int k = 0; k < j; ++k) d -= l.at(j, k) * l.at(j, k);
        if (!(d > 0.0)) throw std::domain_error("matrix is not positive definite");
        l.at(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = a.at(i, j);
            for (int k = 0; k < j; ++k) s -= l.at(i, k) * l.at(j, k);
            l.at(i, j) = s / l.at(j, j);
        }
    }
    return l;
}

SymMatrix spd_inverse(const SymMatrix& a) {
    int n = a.dim;
    DenseMatrix l = cholesky(a);

    // M = L^-1 by forward substitution
    DenseMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
        m.at(j, j) = 1.0 / l.at(j, j);
        for (int i = j + 1; i < n; ++i) {
            double s = 0.0;
            for (int k = j; k < i; ++k) s += l.at(i, k) * m.at(k, j);
            m.at(i, j) = -s / l.at(i, i);
        }
    }

    // A^-1 = M^T M, written symmetrically
    SymMatrix inv(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = j; k < n; ++k) s += m.at(k, i) * m.at(k, j);
            inv.set(i, j, s);
        }
    }
    return inv;
}

double log_det(const SymMatrix& a) {
    DenseMatrix l = cholesky(a);
    double sum = 0.0;
    for (int i = 0; i < a.dim; ++i) sum += std::log(l.at(i, i));
    return 2.0 * sum;
}

std::uint64_t field_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1 % kFieldPrime;
    base %= kFieldPrime;
    while (exp) {
        if (exp & 1) r = field_mul(r, base);
        base = field_mul(base, base);
        exp >>= 1;
    }
    return r;
}

std::uint64_t field_inv(std::uint64_t a) {
    if (a % kFieldPrime == 0) throw std::domain_error("zero has no inverse in the field");
    return field_pow(a, kFieldPrime - 2);
}

PrimeFieldMatrix::PrimeFieldMatrix(int rows_, int cols_) : rows(rows_), cols(cols_) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix shape must be nonnegative");
    entries.assign(std::size_t(rows) * std::size_t(cols), 0);
}

int field_rank(PrimeFieldMatrix m) {
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r) {
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = col; c < m.cols; ++c) std::swap(m.at(pivot, c), m.at(rank, c));
        std::uint64_t inv = field_inv(m.at(rank, col));
        for (int r = rank + 1; r < m.rows; ++r) {
            std::uint64_t head = m.at(r, col);
            if (head == 0) continue;
            std::uint64_t factor = field_mul(head, inv);
            m.at(r, col) = 0;
            for (int c = col + 1; c < m.cols; ++c)
                m.at(r, c) = field_sub(m.at(r, c), field_mul(factor, m.at(rank, c)));
        }
        ++rank;
    }
    return rank;
}

DenseMatrix sample_standard_normal(SeededRng& rng, int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("sample shape must have at least one row and column");
    DenseMatrix x(rows, cols);
    for (double& v : x.entries) v = rng.next_normal();
    return x;
}

PrimeFieldMatrix sample_uniform_field(SeededRng& rng, int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("sample shape must have at least one row and column");
    PrimeFieldMatrix x(rows, cols);
    for (std::uint64_t& v : x.entries) v = rng.next_below(kFieldPrime);
    return x;
}

}  // namespace ggmlt
