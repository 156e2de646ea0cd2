#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ggmlt {

/// splitmix64 finalizer; used to derive independent seeds from composite keys.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic random stream. The integer stream is std::mt19937_64 (fully
/// specified by the C++ standard, so bit-identical across platforms), seeded
/// through splitmix64. Unit doubles use the 53-bit mapping (x >> 11) * 2^-53;
/// standard normals use the Marsaglia polar method, which draws unit pairs,
/// rejects outside the disk, and caches the second variate. Identical seed
/// implies identical stream. Single-owner: callers wanting concurrency derive
/// independent streams via splitmix64 on distinct keys.
class SeededRng {
public:
    static constexpr const char* kAlgorithm = "mt19937_64 + 53-bit unit doubles + Marsaglia polar";

    explicit SeededRng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double next_unit() { return double(engine_() >> 11) * 0x1.0p-53; }

    /// One N(0,1) variate (polar method, pair-cached).
    double next_normal();

    /// Uniform in [0, bound) without modulo bias (rejection).
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Dense real matrix, row-major doubles. Entries are finite by construction.
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> entries;

    DenseMatrix() = default;
    DenseMatrix(int rows, int cols);                              // zero-filled
    DenseMatrix(int rows, int cols, std::vector<double> values);  // validates

    double& at(int r, int c) { return entries[std::size_t(r) * cols + c]; }
    double at(int r, int c) const { return entries[std::size_t(r) * cols + c]; }
};

/// Symmetric real matrix with full row-major storage. Construction from raw
/// entries validates symmetry; mutating code is responsible for writing both
/// triangles (set() does this).
struct SymMatrix {
    int dim = 0;
    std::vector<double> entries;

    SymMatrix() = default;
    explicit SymMatrix(int dim);
    static SymMatrix identity(int dim);
    static SymMatrix from_entries(int dim, std::vector<double> values);

    double& at(int r, int c) { return entries[std::size_t(r) * dim + c]; }
    double at(int r, int c) const { return entries[std::size_t(r) * dim + c]; }
    void set(int r, int c, double v) { at(r, c) = v; at(c, r) = v; }
};

/// Lower-triangular L with L*L^T = A. Throws std::domain_error if a pivot is
/// <= 0 (A not positive definite).
DenseMatrix cholesky(const SymMatrix& a);

/// Inverse of a positive definite matrix via Cholesky; exactly symmetric.
SymMatrix spd_inverse(const SymMatrix& a);

/// log det A = 2 * sum(log L_ii) from the Cholesky factor.
double log_det(const SymMatrix& a);

// ---------------------------------------------------------------------------
// Exact arithmetic over F_q. Generic matrix ranks are computed here instead
// of with floating point: a random specialization over a large prime field
// has rank <= the generic rank always, with equality failing only with
// probability (total degree)/q per sample, and Gaussian elimination mod q
// needs no tolerance.
// ---------------------------------------------------------------------------

/// Largest prime below 2^62.
inline constexpr std::uint64_t kFieldPrime = 4611686018427387847ULL;

inline std::uint64_t field_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;  // no overflow: both < 2^62
    return s >= kFieldPrime ? s - kFieldPrime : s;
}

inline std::uint64_t field_sub(std::uint64_t a, std::uint64_t b) {
    return a >= b ? a - b : a + kFieldPrime - b;
}

inline std::uint64_t field_mul(std::uint64_t a, std::uint64_t b) {
    return std::uint64_t((unsigned __int128)a * b % kFieldPrime);
}

std::uint64_t field_pow(std::uint64_t base, std::uint64_t exp);
std::uint64_t field_inv(std::uint64_t a);  // a != 0

/// Dense matrix over F_q, row-major residues in [0, kFieldPrime).
struct PrimeFieldMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint64_t> entries;

    PrimeFieldMatrix() = default;
    PrimeFieldMatrix(int rows, int cols);

    std::uint64_t& at(int r, int c) { return entries[std::size_t(r) * cols + c]; }
    std::uint64_t at(int r, int c) const { return entries[std::size_t(r) * cols + c]; }
};

/// Exact rank by Gaussian elimination mod q. No tolerance involved.
int field_rank(PrimeFieldMatrix m);

/// rows x cols of i.i.d. N(0,1), filled in row-major order.
DenseMatrix sample_standard_normal(SeededRng& rng, int rows, int cols);

/// rows x cols of i.i.d. uniform residues mod kFieldPrime.
PrimeFieldMatrix sample_uniform_field(SeededRng& rng, int rows, int cols);

}  // namespace ggmlt
