#pragma once

/**
 * Binet-form evaluation through the eigen-decomposition of the key matrices.
 *
 * The characteristic polynomial of K factors as (t - x)(t^(rho-2) + ... + 1),
 * so its eigenvalues are x together with the (rho-1)-th roots of unity other
 * than 1; L adds the eigenvalue 1. All are distinct, so both matrices are
 * diagonalizable and no general eigensolver is needed. K is a companion
 * matrix, so the eigenvector for lambda is the Vandermonde column
 * (lambda^(d-1), ..., lambda, 1); we store it scaled so its largest entry has
 * modulus 1.
 *
 * Terms are then
 *
 *   J_n = e1' V diag(lambda^(n-rho+2)) V^-1 u^{rho-2}
 *   S_n = e1' W diag(mu^(n-rho+2))     W^-1 tau^{rho-2}
 *
 * evaluated in binary floating point. Double precision is used when its error
 * bound certifies the rounded integer; otherwise the evaluation is repeated
 * with MPFR at a precision derived from the term's magnitude and the
 * eigenvector matrix's condition number. The exact channels in sequences.hpp,
 * recurrences.hpp and spectral.hpp remain authoritative.
 */

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "mcs/spectral.hpp"

namespace mcs {

/// Dense complex matrix, row-major.
struct ComplexMatrix {
    std::size_t n = 0;
    std::vector<std::complex<double>> a;

    explicit ComplexMatrix(std::size_t size = 0) : n(size), a(size * size) {}
    std::complex<double>& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
    const std::complex<double>& operator()(std::size_t r, std::size_t c) const {
        return a[r * n + c];
    }
};

struct Eigensystem {
    KeyKind kind;
    /// x first, then exp(2 pi i k/(rho-1)) for k = 1..rho-2, then 1 for L.
    std::vector<std::complex<double>> eigenvalues;
    ComplexMatrix vectors;  // column j belongs to eigenvalues[j]
    ComplexMatrix inverse;
    double condition_estimate;  // ||V||_1 * ||V^-1||_1
};

inline constexpr double kDefaultConditionCeiling = 1e12;

/// Closed-form eigenvalues of K (or L), in the order Eigensystem uses.
std::vector<std::complex<double>> predicted_eigenvalues(const SequenceParams& params, KeyKind kind);

/// Double-precision eigensystem of a K- or L-form key matrix. Throws
/// IllConditioned when the condition estimate exceeds condition_ceiling.
Eigensystem eigensystem(const KeyMatrix& m, double condition_ceiling = kDefaultConditionCeiling);

/// max_j ||M v_j - lambda_j v_j|| / ||v_j||, Euclidean norms.
double eigenpair_residual(const KeyMatrix& m, const Eigensystem& es);
/// ||M - V diag(lambda) V^-1||_max / ||M||_max.
double diagonalization_residual(const KeyMatrix& m, const Eigensystem& es);

struct BinetOptions {
    /// 0 picks automatically (double when certified, otherwise MPFR);
    /// 53 forces double; anything larger forces MPFR at that many bits.
    unsigned precision_bits = 0;
    /// Applies to double-precision evaluation only.
    double condition_ceiling = kDefaultConditionCeiling;
};

struct BinetValue {
    double approximation;  // real part of the floating-point sum
    Term rounded;          // nearest integer to the real part
    double residual;       // |approximation - rounded|, computed at working precision
    unsigned precision_bits;
    /// The a-posteriori error bound is below 1/4, so rounded is the exact term.
    bool certified;
    /// Per-eigenvalue contributions, same order as Eigensystem::eigenvalues.
    std::vector<std::complex<double>> components;
};

/// Evaluator bound to one key matrix and one working precision.
class BinetEvaluator {
public:
    /// kind K evaluates J, kind L evaluates S. Throws ConditionUnsatisfied
    /// when the Fermat condition fails (the terms then do not follow the
    /// recurrence the matrix encodes). At 53 bits the evaluation runs in
    /// double and throws IllConditioned above condition_ceiling.
    BinetEvaluator(const SequenceParams& params, KeyKind kind, unsigned precision_bits = 53,
                   double condition_ceiling = kDefaultConditionCeiling);
    ~BinetEvaluator();
    BinetEvaluator(BinetEvaluator&&) noexcept;
    BinetEvaluator& operator=(BinetEvaluator&&) noexcept;

    /// Throws ParameterError when n < rho - 2.
    BinetValue evaluate(std::uint64_t n) const;

    unsigned precision_bits() const noexcept;
    double condition_estimate() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// J_n through K's eigensystem. See BinetOptions for precision selection.
BinetValue binet_J(const SequenceParams& params, std::uint64_t n, const BinetOptions& options = {});
/// S_n through L's eigensystem.
BinetValue binet_S(const SequenceParams& params, std::uint64_t n, const BinetOptions& options = {});

}  // namespace mcs
