#pragma once

/**
 * Multiple-counting sequences between consecutive powers of a base.
 *
 * For a base x >= 2 and a modulus rho >= 2:
 *
 *   J_n = floor(x^(n+1) / rho) - floor(x^n / rho)   multiples of rho in (x^n, x^(n+1)]
 *   S_n = floor(x^(n+1) / rho)                      multiples of rho in (0, x^(n+1)]
 *
 * so S is the prefix sum of J. The floor form is the canonical definition.
 * When gcd(x, rho) == 1, rho never divides x^(n+1) and the half-open interval
 * count equals the open-interval count (x^n, x^(n+1)); for non-coprime pairs
 * the two can differ by one and the floor form is what every routine here uses.
 *
 * All terms are exact GMP integers.
 */

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace mcs {

using Term = mpz_class;

/// Base and modulus of a sequence family. Both must be >= 2.
class SequenceParams {
public:
    /// Throws ParameterError when x < 2 or rho < 2.
    SequenceParams(std::int64_t x, std::int64_t rho);

    std::uint64_t x() const noexcept { return x_; }
    std::uint64_t rho() const noexcept { return rho_; }

    /// gcd(x, rho) == 1
    bool coprime() const noexcept;

    /// Order of the J recurrence, rho - 1.
    std::size_t order() const noexcept { return static_cast<std::size_t>(rho_ - 1); }

    friend bool operator==(const SequenceParams&, const SequenceParams&) = default;

private:
    std::uint64_t x_;
    std::uint64_t rho_;
};

/// x^e as an exact integer.
Term power(std::uint64_t x, std::uint64_t e);

Term count_term(const SequenceParams& params, std::uint64_t n);
Term count_prefix(const SequenceParams& params, std::uint64_t n);

/// J_0 .. J_{count-1}.
std::vector<Term> generate_J(const SequenceParams& params, std::size_t count);
/// S_0 .. S_{count-1}.
std::vector<Term> generate_S(const SequenceParams& params, std::size_t count);

/// Default bound on x^(n+1) for brute_force_count.
inline constexpr std::uint64_t kDefaultEnumerationGuard = std::uint64_t{1} << 40;

/// Counts k*rho with x^n < k*rho < x^(n+1) by walking k = 1, 2, ...
///
/// Independent of the floor formula; intended as a test oracle. Refuses
/// (ParameterError) when n > cap or x^(n+1) > guard.
Term brute_force_count(const SequenceParams& params, std::uint64_t n, std::uint64_t cap,
                       std::uint64_t guard = kDefaultEnumerationGuard);

}  // namespace mcs
