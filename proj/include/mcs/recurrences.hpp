#pragma once

/**
 * Linear recurrences satisfied by J and S under the Fermat condition
 * x^(rho-1) == 1 (mod rho).
 *
 * With histories ordered newest first, h = (J_{n+rho-2}, ..., J_n):
 *
 *   form A:  J_{n+rho-1} = (x-1) * (h_0 + ... + h_{rho-3}) + x * h_{rho-2}
 *   form B:  J_{n+rho-1} = (x-1) * (h_0 + ... + h_{rho-2}) + h_{rho-2}
 *
 * S obeys the same shapes plus an additive constant pi. Sums over empty index
 * ranges are zero, which makes rho = 2 an order-1 recurrence J_{n+1} = x J_n.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mcs/sequences.hpp"

namespace mcs {

/// x^e mod m by square-and-multiply; m >= 1.
std::uint64_t modpow(std::uint64_t base, std::uint64_t e, std::uint64_t m);

/// x^(rho-1) == 1 (mod rho). Throws ParameterError for x < 2 or rho < 2.
bool fermat_condition(std::int64_t x, std::int64_t rho);
bool fermat_condition(const SequenceParams& params);

enum class RecurrenceForm { A, B };

/// Coefficients of one recurrence step, applied to a newest-first history.
///
/// next = sum_i coefficients[i] * history[i] + tail_weight * history.back() + constant
///
/// Form A carries its x on the oldest coefficient and tail_weight 0; form B
/// uses (x-1) everywhere and tail_weight 1. constant is set only for S.
struct RecurrenceSpec {
    RecurrenceForm form;
    std::size_t order;
    std::vector<Term> coefficients;
    Term tail_weight;
    std::optional<Term> constant;

    /// Throws ParameterError when history.size() != order.
    Term apply(std::span<const Term> history) const;
};

RecurrenceSpec j_recurrence(const SequenceParams& params, RecurrenceForm form = RecurrenceForm::A);
RecurrenceSpec s_recurrence(const SequenceParams& params, const Term& pi,
                            RecurrenceForm form = RecurrenceForm::A);

/// Form A step. history = (J_{n+rho-2}, ..., J_n), length rho - 1.
Term next_term_A(std::span<const Term> history, const SequenceParams& params);
/// Form B step; equal to next_term_A on every history.
Term next_term_B(std::span<const Term> history, const SequenceParams& params);

/// Seeds J_0 .. J_{rho-2} followed by the recurrence; entries 0..count-1.
/// Matches generate_J exactly when the Fermat condition holds.
std::vector<Term> generate_J_by_recurrence(const SequenceParams& params, std::size_t count);

/// pi from the n = 0 instance of the form-B summation recurrence:
///   pi = S_{rho-1} - (x-1) * (S_{rho-2} + ... + S_0) - S_0
/// No condition check; this is the value verification tests against.
Term pi_from_initial_terms(const SequenceParams& params);

/// pi_from_initial_terms, refusing (ConditionUnsatisfied) when the Fermat
/// condition fails, since pi is only guaranteed constant under it.
Term pi_constant(const SequenceParams& params);

/// Closed form over J seeds:
///   pi = sum_{i=0}^{rho-2} J_i - (x-1) * sum_{i=1}^{rho-1} sum_{j=0}^{i-2} J_j
/// Used to cross-check pi_constant.
Term pi_closed_form(const SequenceParams& params);

struct Witness {
    std::uint64_t n;        // recurrence shift; the mismatching term has index n + rho - 1
    std::uint64_t index;    // n + rho - 1
    Term expected;          // floor-formula value
    Term actual;            // recurrence prediction
};

struct VerificationReport {
    std::uint64_t first;    // smallest shift n checked
    std::uint64_t last;     // largest shift n checked
    bool holds;
    std::optional<Witness> witness;
};

/// Checks form A against floor-generated J_0..J_{n_max} for every shift
/// n in [0, n_max - rho + 1]. Returns the first mismatch as a witness.
/// Throws ParameterError when n_max < rho - 1.
VerificationReport verify_recurrence(const SequenceParams& params, std::uint64_t n_max);

/// Same over S_0..S_{n_max}, checking both the form-A and form-B summation
/// shapes. Without an explicit pi the n = 0 candidate is used.
VerificationReport verify_summation_recurrence(const SequenceParams& params, std::uint64_t n_max,
                                               std::optional<Term> pi = std::nullopt);

}  // namespace mcs
