#pragma once

/**
 * Exact key-matrix machinery.
 *
 * K is the (rho-1)x(rho-1) companion-style matrix advancing
 * u^n = (J_n, J_{n-1}, ..., J_{n-rho+2}):
 *
 *     [x-1 x-1 ... x-1  x]
 *     [ 1   0  ...  0   0]
 *     [ 0   1  ...  0   0]
 *     [ ...          ... ]
 *     [ 0   0  ...  1   0]
 *
 * L is rho x rho: K in the top-left block, a 1 in the top-right corner and a 1
 * in the bottom-right corner, advancing tau^n = (S_n, ..., S_{n-rho+2}, pi).
 *
 * Everything here is exact integer arithmetic; see binet.hpp for the
 * floating-point eigen-decomposition channel.
 */

#include <cstdint>
#include <vector>

#include "mcs/sequences.hpp"

namespace mcs {

/// Dense square matrix of exact integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}

    static IntMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    Term& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
    const Term& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

    bool is_zero() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator*(const Term& s, const IntMatrix& m);
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Term> a_;
};

/// M^e by exponentiation by squaring.
IntMatrix matrix_power(const IntMatrix& m, std::uint64_t e);

enum class KeyKind { K, L };

struct KeyMatrix {
    KeyKind kind;
    SequenceParams params;
    IntMatrix entries;
    Term embedded_pi;  // L only; the pi carried by the state vector

    std::size_t dimension() const noexcept { return entries.size(); }
};

/// Newest-first state: (J_n, ..., J_{n-rho+2}) for K,
/// (S_n, ..., S_{n-rho+2}, pi) for L.
struct StateVector {
    std::vector<Term> entries;
    friend bool operator==(const StateVector&, const StateVector&) = default;
};

KeyMatrix build_K(const SequenceParams& params);
KeyMatrix build_L(const SequenceParams& params, const Term& pi);

/// M * s. Throws ParameterError on dimension mismatch.
StateVector advance_state(const KeyMatrix& m, const StateVector& s);

/// u^{rho-2} = (J_{rho-2}, ..., J_0), the base state for K.
StateVector base_state_J(const SequenceParams& params);
/// tau^{rho-2} = (S_{rho-2}, ..., S_0, pi), the base state for L.
StateVector base_state_S(const SequenceParams& params, const Term& pi);

/// First entry of K^(n-rho+2) u^{rho-2}. Equals count_term(params, n) whenever
/// the recurrence holds (Fermat condition); otherwise it continues the
/// recurrence from the floor-formula seeds. Throws ParameterError when n < rho - 2.
Term term_by_matrix_power(const SequenceParams& params, std::uint64_t n);

/// Same via L and tau, giving S_n. Requires the Fermat condition (pi).
Term prefix_by_matrix_power(const SequenceParams& params, std::uint64_t n);

/// Evaluates many indices against one key matrix, caching the repeated
/// squarings M^(2^k) and applying them to the base state as matrix-vector
/// products.
class MatrixPowerEvaluator {
public:
    MatrixPowerEvaluator(KeyMatrix m, StateVector base);

    /// First entry of M^steps * base.
    Term first_entry_after(std::uint64_t steps);
    StateVector state_after(std::uint64_t steps);

private:
    KeyMatrix m_;
    StateVector base_;
    std::vector<IntMatrix> squarings_;  // squarings_[k] = M^(2^k)
};

/// Polynomial with exact integer coefficients, coefficients[k] multiplying t^k.
struct IntPolynomial {
    std::vector<Term> coefficients;

    std::size_t degree() const noexcept {
        return coefficients.empty() ? 0 : coefficients.size() - 1;
    }
    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
};

IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b);

/// p(M) by Horner's rule, exactly.
IntMatrix evaluate_at_matrix(const IntPolynomial& p, const IntMatrix& m);

/// Monic characteristic polynomial of K:
///   t^(rho-1) - (x-1)(t^(rho-2) + ... + t) - x
IntPolynomial char_poly(const SequenceParams& params);

}  // namespace mcs
