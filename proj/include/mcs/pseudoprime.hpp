#pragma once

/**
 * Fermat-condition scanning over a range of moduli.
 *
 * A composite rho coprime to x with x^(rho-1) == 1 (mod rho) is a Fermat
 * pseudoprime to base x (for x = 2: Poulet or Sarrus numbers). Such rho still
 * satisfy the J recurrence; composites failing the condition are where the
 * recurrence breaks, and recurrence_witness harvests the first mismatch.
 */

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mcs/recurrences.hpp"

namespace mcs {

/// Deterministic primality for every 64-bit n >= 2: trial division by the
/// primes below 40, then Miller-Rabin with the first twelve prime bases,
/// which has no strong pseudoprimes below 3.3e24 > 2^64. Throws
/// ParameterError for n < 2. Inputs wider than 64 bits are not accepted.
bool is_prime(std::uint64_t n);

enum class Classification { prime, pseudoprime, ordinary_composite, non_coprime };

std::string_view to_string(Classification c);

/// Classification precedence: non_coprime (gcd(x, rho) > 1, even for prime
/// rho dividing x), then prime, then pseudoprime, then ordinary_composite.
struct ScanResult {
    std::uint64_t x;
    std::uint64_t rho;
    bool is_prime;
    bool condition_holds;
    Classification classification;

    friend bool operator==(const ScanResult&, const ScanResult&) = default;
};

ScanResult classify(std::uint64_t x, std::uint64_t rho);

/// One ScanResult per rho in [lo, hi], ascending, independent of jobs.
/// Throws ParameterError unless x >= 2 and 2 <= lo <= hi.
std::vector<ScanResult> scan(std::uint64_t x, std::uint64_t lo, std::uint64_t hi,
                             unsigned jobs = 1);

/// rho values classified as pseudoprime.
std::vector<std::uint64_t> pseudoprimes(const std::vector<ScanResult>& results);

/// verify_recurrence(params, n_max).witness. Throws ParameterError when
/// gcd(x, rho) > 1.
std::optional<Witness> recurrence_witness(std::int64_t x, std::int64_t rho, std::uint64_t n_max);

}  // namespace mcs
