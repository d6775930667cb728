#include "mcs/binet.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "detail/bigfloat.hpp"
#include "mcs/errors.hpp"
#include "mcs/recurrences.hpp"

namespace mcs {

namespace {

using detail::BigFloat;

// Scalar construction and conversion, specialised for double and BigFloat.
template <class R>
struct Scalars;

template <>
struct Scalars<double> {
    mpfr_prec_t prec = 53;
    double from_long(long v) const { return static_cast<double>(v); }
    // mpz_get_d is undefined past the double range; saturate instead.
    double from_integer(const Term& z) const {
        if (mpz_sizeinbase(z.get_mpz_t(), 2) > 1023) {
            return sgn(z) < 0 ? -HUGE_VAL : HUGE_VAL;
        }
        return z.get_d();
    }
    double cos_turns(long k, long m) const {
        return std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
    }
    double sin_turns(long k, long m) const {
        return std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m));
    }
    static double to_double(double v) { return v; }
    static bool finite(double v) { return std::isfinite(v); }
    static double log2_abs(double v) { return std::log2(std::fabs(v)); }
    static Term round(double v) { return std::isfinite(v) ? Term(std::nearbyint(v)) : Term(0); }
    static double abs(double v) { return std::fabs(v); }
};

template <>
struct Scalars<BigFloat> {
    mpfr_prec_t prec;
    BigFloat from_long(long v) const { return BigFloat(prec, v); }
    BigFloat from_integer(const Term& z) const { return BigFloat(prec, z); }
    BigFloat cos_turns(long k, long m) const { return BigFloat::cos_turns(prec, k, m); }
    BigFloat sin_turns(long k, long m) const { return BigFloat::sin_turns(prec, k, m); }
    static double to_double(const BigFloat& v) { return v.to_double(); }
    static bool finite(const BigFloat& v) { return v.finite(); }
    static double log2_abs(const BigFloat& v) { return v.log2_abs(); }
    static Term round(const BigFloat& v) { return v.round_to_integer(); }
    static BigFloat abs(const BigFloat& v) { return mcs::detail::abs(v); }
};

template <class R>
struct Cx {
    R re;
    R im;
};

template <class R>
Cx<R> operator+(const Cx<R>& a, const Cx<R>& b) { return {a.re + b.re, a.im + b.im}; }
template <class R>
Cx<R> operator-(const Cx<R>& a, const Cx<R>& b) { return {a.re - b.re, a.im - b.im}; }
template <class R>
Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R>
Cx<R> operator/(const Cx<R>& a, const Cx<R>& b) {
    R den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

template <class R>
std::complex<double> to_std(const Cx<R>& z) {
    return {Scalars<R>::to_double(z.re), Scalars<R>::to_double(z.im)};
}

// Eigenvalue descriptor: x, a root of unity exp(2 pi i turn/(rho-1)), or 1.
struct EigenLabel {
    enum class Kind { base, root, one } kind;
    long turn = 0;
};

std::vector<EigenLabel> eigen_labels(const SequenceParams& params, KeyKind kind) {
    std::vector<EigenLabel> labels{{EigenLabel::Kind::base, 0}};
    const long m = static_cast<long>(params.rho()) - 1;
    for (long k = 1; k < m; ++k) labels.push_back({EigenLabel::Kind::root, k});
    if (kind == KeyKind::L) labels.push_back({EigenLabel::Kind::one, 0});
    return labels;
}

template <class R>
using CxMatrix = std::vector<Cx<R>>;  // row-major, dimension known by caller

double norm1(const std::vector<std::complex<double>>& a, std::size_t n) {
    double best = 0;
    for (std::size_t c = 0; c < n; ++c) {
        double s = 0;
        for (std::size_t r = 0; r < n; ++r) s += std::abs(a[r * n + c]);
        best = std::max(best, s);
    }
    return best;
}

// Gauss-Jordan inverse with partial pivoting on |re| + |im|.
template <class R>
CxMatrix<R> invert(CxMatrix<R> a, std::size_t n, const Scalars<R>& s) {
    CxMatrix<R> inv(n * n, Cx<R>{s.from_long(0), s.from_long(0)});
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i].re = s.from_long(1);
    auto mag = [](const Cx<R>& z) { return Scalars<R>::abs(z.re) + Scalars<R>::abs(z.im); };
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (mag(a[piv * n + col]) < mag(a[r * n + col])) piv = r;
        }
        if (Scalars<R>::to_double(mag(a[piv * n + col])) == 0.0) {
            throw IllConditioned("eigenvector matrix is singular", HUGE_VAL);
        }
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a[piv * n + c], a[col * n + c]);
                std::swap(inv[piv * n + c], inv[col * n + c]);
            }
        }
        const Cx<R> p = a[col * n + col];
        for (std::size_t c = 0; c < n; ++c) {
            a[col * n + c] = a[col * n + c] / p;
            inv[col * n + c] = inv[col * n + c] / p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const Cx<R> f = a[r * n + col];
            for (std::size_t c = 0; c < n; ++c) {
                a[r * n + c] = a[r * n + c] - f * a[col * n + c];
                inv[r * n + c] = inv[r * n + c] - f * inv[col * n + c];
            }
        }
    }
    return inv;
}

// Eigen-decomposition of K or L at one working precision, plus the
// coordinates of the base state in the eigenbasis.
template <class R>
class Engine {
public:
    Engine(const SequenceParams& params, KeyKind kind, mpfr_prec_t prec)
        : params_(params), s_{prec}, labels_(eigen_labels(params, kind)) {
        n_ = labels_.size();
        build_vectors();
        inverse_ = invert(vectors_, n_, s_);
        std::vector<std::complex<double>> v(n_ * n_), vi(n_ * n_);
        for (std::size_t i = 0; i < n_ * n_; ++i) {
            v[i] = to_std(vectors_[i]);
            vi[i] = to_std(inverse_[i]);
        }
        condition_ = norm1(v, n_) * norm1(vi, n_);
    }

    std::size_t dimension() const { return n_; }
    double condition() const { return condition_; }
    mpfr_prec_t precision() const { return s_.prec; }
    const std::vector<EigenLabel>& labels() const { return labels_; }
    const CxMatrix<R>& vectors() const { return vectors_; }
    const CxMatrix<R>& inverse() const { return inverse_; }

    void bind_state(const StateVector& base) {
        coords_.clear();
        for (std::size_t i = 0; i < n_; ++i) {
            Cx<R> acc{s_.from_long(0), s_.from_long(0)};
            for (std::size_t j = 0; j < n_; ++j) {
                const Cx<R>& w = inverse_[i * n_ + j];
                R e = s_.from_integer(base.entries[j]);
                acc = acc + Cx<R>{w.re * e, w.im * e};
            }
            coords_.push_back(acc);
        }
    }

    BinetValue evaluate(std::uint64_t n) const {
        const std::uint64_t base_index = params_.rho() - 2;
        if (n < base_index) {
            throw ParameterError("Binet evaluation needs n >= rho - 2 = " +
                                 std::to_string(base_index));
        }
        const std::uint64_t steps = n - base_index;
        BinetValue out{};
        out.precision_bits = static_cast<unsigned>(s_.prec);
        Cx<R> sum{s_.from_long(0), s_.from_long(0)};
        R magnitude = s_.from_long(0);
        for (std::size_t j = 0; j < n_; ++j) {
            Cx<R> comp = vectors_[j] * power(labels_[j], steps) * coords_[j];
            magnitude = magnitude + Scalars<R>::abs(comp.re) + Scalars<R>::abs(comp.im);
            out.components.push_back(to_std(comp));
            sum = sum + comp;
        }
        out.approximation = Scalars<R>::to_double(sum.re);
        out.rounded = Scalars<R>::round(sum.re);
        out.residual = Scalars<R>::to_double(Scalars<R>::abs(sum.re - s_.from_integer(out.rounded)));
        out.certified = Scalars<R>::finite(sum.re) &&
                        error_log2(Scalars<R>::log2_abs(magnitude)) < -2.0;
        return out;
    }

    // log2 of the a-posteriori error bound 4 n^2 cond 2^-prec * sum |components|.
    double error_log2(double log2_magnitude) const {
        return std::log2(4.0 * static_cast<double>(n_ * n_) * condition_) -
               static_cast<double>(s_.prec) + log2_magnitude;
    }

private:
    Cx<R> unit_root(long turn) const {
        const long m = static_cast<long>(params_.rho()) - 1;
        turn %= m;
        return {s_.cos_turns(turn, m), s_.sin_turns(turn, m)};
    }

    // lambda^e with roots of unity reduced by angle arithmetic.
    Cx<R> power(const EigenLabel& label, std::uint64_t e) const {
        switch (label.kind) {
            case EigenLabel::Kind::base:
                return {s_.from_integer(mcs::power(params_.x(), e)), s_.from_long(0)};
            case EigenLabel::Kind::root: {
                const std::uint64_t m = params_.rho() - 1;
                const auto turn = static_cast<long>(
                    (static_cast<unsigned __int128>(label.turn) * (e % m)) % m);
                return unit_root(turn);
            }
            case EigenLabel::Kind::one:
                break;
        }
        return {s_.from_long(1), s_.from_long(0)};
    }

    void build_vectors() {
        const std::size_t d = params_.order();  // Vandermonde height for K
        const R zero = s_.from_long(0);
        vectors_.assign(n_ * n_, Cx<R>{zero, zero});
        for (std::size_t j = 0; j < n_; ++j) {
            const EigenLabel& label = labels_[j];
            if (label.kind == EigenLabel::Kind::base) {
                // (x^(d-1), ..., 1) / x^(d-1) = (1, 1/x, ..., x^-(d-1))
                const R x = s_.from_long(static_cast<long>(params_.x()));
                R entry = s_.from_long(1);
                for (std::size_t r = 0; r < d; ++r) {
                    vectors_[r * n_ + j] = {entry, zero};
                    entry = entry / x;
                }
            } else if (label.kind == EigenLabel::Kind::root) {
                for (std::size_t r = 0; r < d; ++r) {
                    vectors_[r * n_ + j] =
                        unit_root(label.turn * static_cast<long>(d - 1 - r));
                }
            } else {
                // Fixed point of L: (1, ..., 1, -(x-1)(rho-1)), scaled by its last entry.
                const R a = s_.from_long(1) /
                            s_.from_integer(Term(params_.x() - 1) * Term(params_.rho() - 1));
                for (std::size_t r = 0; r < d; ++r) vectors_[r * n_ + j] = {a, zero};
                vectors_[d * n_ + j] = {s_.from_long(-1), zero};
            }
        }
    }

    SequenceParams params_;
    Scalars<R> s_;
    std::vector<EigenLabel> labels_;
    std::size_t n_ = 0;
    CxMatrix<R> vectors_;
    CxMatrix<R> inverse_;
    std::vector<Cx<R>> coords_;
    double condition_ = 0;
};

void require_key_form(const KeyMatrix& m) {
    const KeyMatrix expected =
        m.kind == KeyKind::K ? build_K(m.params) : build_L(m.params, m.embedded_pi);
    if (!(expected.entries == m.entries)) {
        throw ParameterError("matrix is not a K- or L-form key matrix for its parameters");
    }
}

StateVector base_state(const SequenceParams& params, KeyKind kind) {
    if (!fermat_condition(params)) {
        throw ConditionUnsatisfied("Binet evaluation requires x^(rho-1) == 1 (mod rho)");
    }
    return kind == KeyKind::K ? base_state_J(params) : base_state_S(params, pi_constant(params));
}

}  // namespace

std::vector<std::complex<double>> predicted_eigenvalues(const SequenceParams& params,
                                                        KeyKind kind) {
    std::vector<std::complex<double>> out;
    const double m = static_cast<double>(params.rho() - 1);
    for (const EigenLabel& label : eigen_labels(params, kind)) {
        switch (label.kind) {
            case EigenLabel::Kind::base:
                out.emplace_back(static_cast<double>(params.x()), 0.0);
                break;
            case EigenLabel::Kind::root:
                out.push_back(std::polar(1.0, 2.0 * std::numbers::pi * label.turn / m));
                break;
            case EigenLabel::Kind::one:
                out.emplace_back(1.0, 0.0);
                break;
        }
    }
    return out;
}

Eigensystem eigensystem(const KeyMatrix& m, double condition_ceiling) {
    require_key_form(m);
    Engine<double> engine(m.params, m.kind, 53);
    if (engine.condition() > condition_ceiling) {
        throw IllConditioned("eigenvector matrix condition estimate " +
                                 std::to_string(engine.condition()) + " exceeds ceiling",
                             engine.condition());
    }
    const std::size_t n = engine.dimension();
    Eigensystem es{m.kind, predicted_eigenvalues(m.params, m.kind), ComplexMatrix(n),
                   ComplexMatrix(n), engine.condition()};
    for (std::size_t i = 0; i < n * n; ++i) {
        es.vectors.a[i] = to_std(engine.vectors()[i]);
        es.inverse.a[i] = to_std(engine.inverse()[i]);
    }
    return es;
}

double eigenpair_residual(const KeyMatrix& m, const Eigensystem& es) {
    const std::size_t n = m.dimension();
    double worst = 0;
    for (std::size_t j = 0; j < n; ++j) {
        double num = 0;
        double den = 0;
        for (std::size_t r = 0; r < n; ++r) {
            std::complex<double> mv = 0;
            for (std::size_t c = 0; c < n; ++c) mv += m.entries(r, c).get_d() * es.vectors(c, j);
            num += std::norm(mv - es.eigenvalues[j] * es.vectors(r, j));
            den += std::norm(es.vectors(r, j));
        }
        worst = std::max(worst, std::sqrt(num / den));
    }
    return worst;
}

double diagonalization_residual(const KeyMatrix& m, const Eigensystem& es) {
    const std::size_t n = m.dimension();
    double worst = 0;
    double scale = 0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            std::complex<double> acc = 0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += es.vectors(r, k) * es.eigenvalues[k] * es.inverse(k, c);
            }
            worst = std::max(worst, std::abs(acc - m.entries(r, c).get_d()));
            scale = std::max(scale, std::fabs(m.entries(r, c).get_d()));
        }
    }
    return worst / scale;
}

struct BinetEvaluator::Impl {
    std::variant<Engine<double>, Engine<BigFloat>> engine;
};

BinetEvaluator::BinetEvaluator(const SequenceParams& params, KeyKind kind,
                               unsigned precision_bits, double condition_ceiling) {
    if (precision_bits < 53) {
        throw ParameterError("Binet precision must be at least 53 bits");
    }
    const StateVector base = base_state(params, kind);
    if (precision_bits == 53) {
        Engine<double> e(params, kind, 53);
        if (e.condition() > condition_ceiling) {
            throw IllConditioned("eigenvector matrix too ill-conditioned for double precision",
                                 e.condition());
        }
        e.bind_state(base);
        impl_ = std::make_unique<Impl>(Impl{std::move(e)});
    } else {
        Engine<BigFloat> e(params, kind, static_cast<mpfr_prec_t>(precision_bits));
        e.bind_state(base);
        impl_ = std::make_unique<Impl>(Impl{std::move(e)});
    }
}

BinetEvaluator::~BinetEvaluator() = default;
BinetEvaluator::BinetEvaluator(BinetEvaluator&&) noexcept = default;
BinetEvaluator& BinetEvaluator::operator=(BinetEvaluator&&) noexcept = default;

BinetValue BinetEvaluator::evaluate(std::uint64_t n) const {
    return std::visit([n](const auto& e) { return e.evaluate(n); }, impl_->engine);
}

unsigned BinetEvaluator::precision_bits() const noexcept {
    return std::visit([](const auto& e) { return static_cast<unsigned>(e.precision()); },
                      impl_->engine);
}

double BinetEvaluator::condition_estimate() const noexcept {
    return std::visit([](const auto& e) { return e.condition(); }, impl_->engine);
}

namespace {

BinetValue binet(const SequenceParams& params, std::uint64_t n, KeyKind kind,
                 const BinetOptions& options) {
    if (options.precision_bits != 0) {
        return BinetEvaluator(params, kind, options.precision_bits, options.condition_ceiling)
            .evaluate(n);
    }
    std::optional<BinetValue> attempt;
    double condition = 1.0;
    try {
        BinetEvaluator dbl(params, kind, 53, options.condition_ceiling);
        condition = dbl.condition_estimate();
        attempt = dbl.evaluate(n);
        if (attempt->certified) return *attempt;
    } catch (const IllConditioned& e) {
        condition = e.condition();
    }
    // Terms are at most x^(n+1); size the mantissa to cover the magnitude,
    // the conditioning loss, and a guard margin.
    const std::size_t dim = params.order() + (kind == KeyKind::L ? 1 : 0);
    double bits = static_cast<double>(n + 2) * std::log2(static_cast<double>(params.x())) +
                  std::log2(4.0 * static_cast<double>(dim * dim) * std::max(condition, 1.0)) + 64;
    if (!std::isfinite(bits)) bits = 4096;
    for (int tries = 0; tries < 4; ++tries, bits *= 2) {
        attempt = BinetEvaluator(params, kind, static_cast<unsigned>(std::ceil(bits))).evaluate(n);
        if (attempt->certified) break;
    }
    return *attempt;
}

}  // namespace

BinetValue binet_J(const SequenceParams& params, std::uint64_t n, const BinetOptions& options) {
    return binet(params, n, KeyKind::K, options);
}

BinetValue binet_S(const SequenceParams& params, std::uint64_t n, const BinetOptions& options) {
    return binet(params, n, KeyKind::L, options);
}

}  // namespace mcs
