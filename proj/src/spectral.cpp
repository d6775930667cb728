#include "mcs/spectral.hpp"

#include <string>

#include "mcs/errors.hpp"
#include "mcs/recurrences.hpp"

namespace mcs {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const {
    for (const auto& v : a_) {
        if (v != 0) return false;
    }
    return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.n_ != b.n_) throw ParameterError("matrix dimension mismatch");
    const std::size_t n = a.n_;
    IntMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Term& aik = a(i, k);
            if (aik == 0) continue;  // key matrices are sparse
            for (std::size_t j = 0; j < n; ++j) {
                mpz_addmul(c(i, j).get_mpz_t(), aik.get_mpz_t(), b(k, j).get_mpz_t());
            }
        }
    }
    return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.n_ != b.n_) throw ParameterError("matrix dimension mismatch");
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
    return c;
}

IntMatrix operator*(const Term& s, const IntMatrix& m) {
    IntMatrix c = m;
    for (auto& v : c.a_) v *= s;
    return c;
}

IntMatrix matrix_power(const IntMatrix& m, std::uint64_t e) {
    IntMatrix result = IntMatrix::identity(m.size());
    IntMatrix base = m;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

KeyMatrix build_K(const SequenceParams& params) {
    const std::size_t d = params.order();
    IntMatrix k(d);
    for (std::size_t c = 0; c + 1 < d; ++c) k(0, c) = params.x() - 1;
    k(0, d - 1) = params.x();
    for (std::size_t r = 1; r < d; ++r) k(r, r - 1) = 1;
    return KeyMatrix{KeyKind::K, params, std::move(k), 0};
}

KeyMatrix build_L(const SequenceParams& params, const Term& pi) {
    const KeyMatrix k = build_K(params);
    const std::size_t d = k.dimension();
    IntMatrix l(d + 1);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) l(r, c) = k.entries(r, c);
    }
    l(0, d) = 1;
    l(d, d) = 1;
    return KeyMatrix{KeyKind::L, params, std::move(l), pi};
}

StateVector advance_state(const KeyMatrix& m, const StateVector& s) {
    const std::size_t d = m.dimension();
    if (s.entries.size() != d) {
        throw ParameterError("state vector has " + std::to_string(s.entries.size()) +
                             " entries, key matrix expects " + std::to_string(d));
    }
    StateVector out{std::vector<Term>(d, 0)};
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            mpz_addmul(out.entries[r].get_mpz_t(), m.entries(r, c).get_mpz_t(),
                       s.entries[c].get_mpz_t());
        }
    }
    return out;
}

StateVector base_state_J(const SequenceParams& params) {
    std::vector<Term> j = generate_J(params, params.order());
    return StateVector{{j.rbegin(), j.rend()}};
}

StateVector base_state_S(const SequenceParams& params, const Term& pi) {
    std::vector<Term> s = generate_S(params, params.order());
    StateVector tau{{s.rbegin(), s.rend()}};
    tau.entries.push_back(pi);
    return tau;
}

namespace {

std::uint64_t steps_from_base(const SequenceParams& params, std::uint64_t n) {
    const std::uint64_t base_index = params.rho() - 2;
    if (n < base_index) {
        throw ParameterError("index " + std::to_string(n) + " is below the base index rho-2 = " +
                             std::to_string(base_index));
    }
    return n - base_index;
}

}  // namespace

Term term_by_matrix_power(const SequenceParams& params, std::uint64_t n) {
    const std::uint64_t steps = steps_from_base(params, n);
    const KeyMatrix k = build_K(params);
    const StateVector u = base_state_J(params);
    return advance_state(KeyMatrix{k.kind, params, matrix_power(k.entries, steps), 0}, u)
        .entries.front();
}

Term prefix_by_matrix_power(const SequenceParams& params, std::uint64_t n) {
    const std::uint64_t steps = steps_from_base(params, n);
    const Term pi = pi_constant(params);
    const KeyMatrix l = build_L(params, pi);
    const StateVector tau = base_state_S(params, pi);
    return advance_state(KeyMatrix{l.kind, params, matrix_power(l.entries, steps), pi}, tau)
        .entries.front();
}

MatrixPowerEvaluator::MatrixPowerEvaluator(KeyMatrix m, StateVector base)
    : m_(std::move(m)), base_(std::move(base)) {
    if (base_.entries.size() != m_.dimension()) {
        throw ParameterError("base state does not match key matrix dimension");
    }
    squarings_.push_back(m_.entries);
}

StateVector MatrixPowerEvaluator::state_after(std::uint64_t steps) {
    StateVector s = base_;
    for (std::size_t bit = 0; steps > 0; ++bit, steps >>= 1) {
        if (bit == squarings_.size()) squarings_.push_back(squarings_.back() * squarings_.back());
        if (steps & 1) {
            s = advance_state(KeyMatrix{m_.kind, m_.params, squarings_[bit], m_.embedded_pi}, s);
        }
    }
    return s;
}

Term MatrixPowerEvaluator::first_entry_after(std::uint64_t steps) {
    return state_after(steps).entries.front();
}

IntPolynomial multiply(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.coefficients.empty() || b.coefficients.empty()) return {};
    std::vector<Term> c(a.coefficients.size() + b.coefficients.size() - 1, 0);
    for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
        for (std::size_t j = 0; j < b.coefficients.size(); ++j) {
            c[i + j] += a.coefficients[i] * b.coefficients[j];
        }
    }
    return IntPolynomial{std::move(c)};
}

IntMatrix evaluate_at_matrix(const IntPolynomial& p, const IntMatrix& m) {
    const std::size_t n = m.size();
    IntMatrix acc(n);
    const IntMatrix id = IntMatrix::identity(n);
    for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
        acc = acc * m + (*it) * id;
    }
    return acc;
}

IntPolynomial char_poly(const SequenceParams& params) {
    const std::size_t d = params.order();
    std::vector<Term> c(d + 1, 0);
    c[d] = 1;
    for (std::size_t k = 1; k < d; ++k) c[k] = -(Term(params.x()) - 1);
    c[0] -= params.x();
    return IntPolynomial{std::move(c)};
}

}  // namespace mcs
