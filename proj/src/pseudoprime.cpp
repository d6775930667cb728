#include "mcs/pseudoprime.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <thread>

#include "mcs/errors.hpp"

namespace mcs {

namespace {

constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool strong_probable_prime(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
    using u128 = unsigned __int128;
    std::uint64_t y = modpow(a, d, n);
    if (y == 1 || y == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        y = static_cast<std::uint64_t>(u128{y} * y % n);
        if (y == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) throw ParameterError("is_prime: n must be >= 2, got " + std::to_string(n));
    for (std::uint64_t p : kBases) {
        if (n % p == 0) return n == p;
    }
    if (n < 41 * 41) return true;
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    return std::all_of(kBases.begin(), kBases.end(),
                       [&](std::uint64_t a) { return strong_probable_prime(n, a, d, s); });
}

std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::prime: return "prime";
        case Classification::pseudoprime: return "pseudoprime";
        case Classification::ordinary_composite: return "ordinary-composite";
        case Classification::non_coprime: return "non-coprime";
    }
    return "?";
}

ScanResult classify(std::uint64_t x, std::uint64_t rho) {
    const bool prime = is_prime(rho);
    const bool holds = modpow(x, rho - 1, rho) == 1;
    Classification c;
    if (std::gcd(x, rho) != 1) {
        c = Classification::non_coprime;
    } else if (prime) {
        c = Classification::prime;
    } else if (holds) {
        c = Classification::pseudoprime;
    } else {
        c = Classification::ordinary_composite;
    }
    return ScanResult{x, rho, prime, holds, c};
}

std::vector<ScanResult> scan(std::uint64_t x, std::uint64_t lo, std::uint64_t hi, unsigned jobs) {
    if (x < 2) throw ParameterError("scan: base must be >= 2");
    if (lo < 2 || lo > hi) {
        throw ParameterError("scan: need 2 <= lo <= hi, got [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
    }
    const std::uint64_t count = hi - lo + 1;
    std::vector<ScanResult> out(count);
    const std::uint64_t workers = std::clamp<std::uint64_t>(jobs, 1, count);
    // Contiguous blocks; each worker writes only its own slots, so the
    // ascending order is fixed before any thread starts.
    auto work = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) out[i] = classify(x, lo + i);
    };
    if (workers == 1) {
        work(0, count);
        return out;
    }
    std::vector<std::jthread> threads;
    const std::uint64_t block = (count + workers - 1) / workers;
    for (std::uint64_t b = 0; b < count; b += block) {
        threads.emplace_back(work, b, std::min(count, b + block));
    }
    threads.clear();
    return out;
}

std::vector<std::uint64_t> pseudoprimes(const std::vector<ScanResult>& results) {
    std::vector<std::uint64_t> out;
    for (const auto& r : results) {
        if (r.classification == Classification::pseudoprime) out.push_back(r.rho);
    }
    return out;
}

std::optional<Witness> recurrence_witness(std::int64_t x, std::int64_t rho, std::uint64_t n_max) {
    const SequenceParams params(x, rho);
    if (!params.coprime()) {
        throw ParameterError("recurrence_witness: gcd(" + std::to_string(x) + ", " +
                             std::to_string(rho) + ") > 1");
    }
    return verify_recurrence(params, n_max).witness;
}

}  // namespace mcs
