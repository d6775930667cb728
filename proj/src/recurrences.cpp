#include "mcs/recurrences.hpp"

#include <string>

#include "mcs/errors.hpp"

namespace mcs {

std::uint64_t modpow(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    if (m == 1) return 0;
    using u128 = unsigned __int128;
    std::uint64_t result = 1;
    base %= m;
    while (e > 0) {
        if (e & 1) result = static_cast<std::uint64_t>(u128{result} * base % m);
        base = static_cast<std::uint64_t>(u128{base} * base % m);
        e >>= 1;
    }
    return result;
}

bool fermat_condition(const SequenceParams& params) {
    return modpow(params.x(), params.rho() - 1, params.rho()) == 1;
}

bool fermat_condition(std::int64_t x, std::int64_t rho) {
    return fermat_condition(SequenceParams(x, rho));
}

namespace {

void require_history(std::span<const Term> history, std::size_t order) {
    if (history.size() != order) {
        throw ParameterError("history length " + std::to_string(history.size()) +
                             " does not match recurrence order " + std::to_string(order));
    }
}

Term sum_of(std::span<const Term> terms) {
    Term s = 0;
    for (const auto& t : terms) s += t;
    return s;
}

}  // namespace

Term RecurrenceSpec::apply(std::span<const Term> history) const {
    require_history(history, order);
    Term next = 0;
    for (std::size_t i = 0; i < order; ++i) next += coefficients[i] * history[i];
    if (tail_weight != 0) next += tail_weight * history.back();
    if (constant) next += *constant;
    return next;
}

RecurrenceSpec j_recurrence(const SequenceParams& params, RecurrenceForm form) {
    RecurrenceSpec spec{form, params.order(), {}, 0, std::nullopt};
    const Term xm1 = params.x() - 1;
    spec.coefficients.assign(spec.order, xm1);
    if (form == RecurrenceForm::A) {
        spec.coefficients.back() = params.x();
    } else {
        spec.tail_weight = 1;
    }
    return spec;
}

RecurrenceSpec s_recurrence(const SequenceParams& params, const Term& pi, RecurrenceForm form) {
    RecurrenceSpec spec = j_recurrence(params, form);
    spec.constant = pi;
    return spec;
}

Term next_term_A(std::span<const Term> history, const SequenceParams& params) {
    require_history(history, params.order());
    const std::size_t k = history.size();
    Term inner = sum_of(history.first(k - 1));
    return (params.x() - 1) * inner + params.x() * history[k - 1];
}

Term next_term_B(std::span<const Term> history, const SequenceParams& params) {
    require_history(history, params.order());
    return (params.x() - 1) * sum_of(history) + history.back();
}

std::vector<Term> generate_J_by_recurrence(const SequenceParams& params, std::size_t count) {
    const std::size_t k = params.order();
    std::vector<Term> out = generate_J(params, std::min(count, k));
    if (count <= k) return out;
    out.reserve(count);
    // Window sum of the k most recent terms gives form B in O(1) big-int ops per step.
    Term window = sum_of(out);
    const Term xm1 = params.x() - 1;
    for (std::size_t i = k; i < count; ++i) {
        const Term& oldest = out[i - k];
        Term next = xm1 * window + oldest;
        window += next - oldest;
        out.push_back(std::move(next));
    }
    return out;
}

Term pi_from_initial_terms(const SequenceParams& params) {
    const std::size_t k = params.order();
    std::vector<Term> s = generate_S(params, k + 1);
    Term inner = 0;
    for (std::size_t i = 0; i < k; ++i) inner += s[i];
    return s[k] - (params.x() - 1) * inner - s[0];
}

Term pi_constant(const SequenceParams& params) {
    if (!fermat_condition(params)) {
        throw ConditionUnsatisfied("pi is undefined: " + std::to_string(params.x()) + "^" +
                                   std::to_string(params.rho() - 1) + " is not 1 mod " +
                                   std::to_string(params.rho()));
    }
    return pi_from_initial_terms(params);
}

Term pi_closed_form(const SequenceParams& params) {
    const std::size_t rho = params.rho();
    std::vector<Term> j = generate_J(params, rho - 1);
    // prefix[m] = J_0 + ... + J_{m-1}
    std::vector<Term> prefix(rho, 0);
    for (std::size_t m = 1; m < rho; ++m) prefix[m] = prefix[m - 1] + j[m - 1];
    Term nested = 0;
    for (std::size_t i = 2; i + 1 <= rho; ++i) nested += prefix[i - 1];
    return prefix[rho - 1] - (params.x() - 1) * nested;
}

namespace {

void require_range(const SequenceParams& params, std::uint64_t n_max) {
    if (n_max + 1 < params.rho()) {
        throw ParameterError("n_max must be >= rho - 1 = " + std::to_string(params.rho() - 1));
    }
}

// history for shift n, newest first: terms[n+k-1], ..., terms[n]
std::vector<Term> history_at(const std::vector<Term>& terms, std::size_t n, std::size_t k) {
    std::vector<Term> h;
    h.reserve(k);
    for (std::size_t i = 0; i < k; ++i) h.push_back(terms[n + k - 1 - i]);
    return h;
}

}  // namespace

VerificationReport verify_recurrence(const SequenceParams& params, std::uint64_t n_max) {
    require_range(params, n_max);
    const std::size_t k = params.order();
    const std::vector<Term> j = generate_J(params, n_max + 1);
    VerificationReport report{0, n_max - k, true, std::nullopt};
    for (std::uint64_t n = 0; n + k <= n_max; ++n) {
        Term predicted = next_term_A(history_at(j, n, k), params);
        if (predicted != j[n + k]) {
            report.holds = false;
            report.witness = Witness{n, n + k, j[n + k], std::move(predicted)};
            break;
        }
    }
    return report;
}

VerificationReport verify_summation_recurrence(const SequenceParams& params, std::uint64_t n_max,
                                               std::optional<Term> pi) {
    require_range(params, n_max);
    const std::size_t k = params.order();
    const Term constant = pi ? *pi : pi_from_initial_terms(params);
    const RecurrenceSpec form_a = s_recurrence(params, constant, RecurrenceForm::A);
    const RecurrenceSpec form_b = s_recurrence(params, constant, RecurrenceForm::B);
    const std::vector<Term> s = generate_S(params, n_max + 1);
    VerificationReport report{0, n_max - k, true, std::nullopt};
    for (std::uint64_t n = 0; n + k <= n_max; ++n) {
        const std::vector<Term> h = history_at(s, n, k);
        Term a = form_a.apply(h);
        Term b = form_b.apply(h);
        if (a != s[n + k] || b != s[n + k]) {
            report.holds = false;
            report.witness = Witness{n, n + k, s[n + k], a != s[n + k] ? std::move(a) : std::move(b)};
            break;
        }
    }
    return report;
}

}  // namespace mcs
