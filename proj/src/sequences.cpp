#include "mcs/sequences.hpp"

#include <numeric>
#include <string>

#include "mcs/errors.hpp"

namespace mcs {

SequenceParams::SequenceParams(std::int64_t x, std::int64_t rho) {
    if (x < 2) throw ParameterError("base x must be >= 2, got " + std::to_string(x));
    if (rho < 2) throw ParameterError("modulus rho must be >= 2, got " + std::to_string(rho));
    x_ = static_cast<std::uint64_t>(x);
    rho_ = static_cast<std::uint64_t>(rho);
}

bool SequenceParams::coprime() const noexcept { return std::gcd(x_, rho_) == 1; }

Term power(std::uint64_t x, std::uint64_t e) {
    Term r;
    mpz_ui_pow_ui(r.get_mpz_t(), x, e);
    return r;
}

namespace {

Term floor_div(const Term& a, std::uint64_t d) {
    Term q;
    mpz_fdiv_q_ui(q.get_mpz_t(), a.get_mpz_t(), d);
    return q;
}

}  // namespace

Term count_term(const SequenceParams& params, std::uint64_t n) {
    Term lo = power(params.x(), n);
    Term hi = lo * params.x();
    return floor_div(hi, params.rho()) - floor_div(lo, params.rho());
}

Term count_prefix(const SequenceParams& params, std::uint64_t n) {
    return floor_div(power(params.x(), n + 1), params.rho());
}

std::vector<Term> generate_J(const SequenceParams& params, std::size_t count) {
    std::vector<Term> out;
    out.reserve(count);
    // Walk the powers incrementally instead of re-exponentiating per index.
    Term p = 1;
    Term prev = 0;  // floor(x^0 / rho), rho >= 2
    for (std::size_t n = 0; n < count; ++n) {
        p *= params.x();
        Term cur = floor_div(p, params.rho());
        out.push_back(cur - prev);
        prev = std::move(cur);
    }
    return out;
}

std::vector<Term> generate_S(const SequenceParams& params, std::size_t count) {
    std::vector<Term> out;
    out.reserve(count);
    Term p = 1;
    for (std::size_t n = 0; n < count; ++n) {
        p *= params.x();
        out.push_back(floor_div(p, params.rho()));
    }
    return out;
}

Term brute_force_count(const SequenceParams& params, std::uint64_t n, std::uint64_t cap,
                       std::uint64_t guard) {
    if (n > cap) {
        throw ParameterError("brute_force_count: n=" + std::to_string(n) + " exceeds cap " +
                             std::to_string(cap));
    }
    // Overflow-checked walk to x^(n+1) against the guard.
    std::uint64_t lo = 1;
    std::uint64_t hi = 1;
    for (std::uint64_t i = 0; i <= n; ++i) {
        if (hi > guard / params.x()) {
            throw ParameterError("brute_force_count: x^(n+1) exceeds enumeration guard " +
                                 std::to_string(guard));
        }
        lo = hi;
        hi *= params.x();
    }
    std::uint64_t count = 0;
    for (std::uint64_t k = 1; k * params.rho() < hi; ++k) {
        if (k * params.rho() > lo) ++count;
    }
    return Term(static_cast<unsigned long>(count));
}

}  // namespace mcs
