#include "mcs/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ios>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mcs/bfile.hpp"
#include "mcs/binet.hpp"
#include "mcs/errors.hpp"
#include "mcs/pseudoprime.hpp"
#include "mcs/recurrences.hpp"
#include "mcs/report.hpp"
#include "mcs/spectral.hpp"

namespace mcs::cli {

namespace {

using json = nlohmann::ordered_json;

struct Common {
    std::int64_t x = 0;
    std::int64_t rho = 0;
    std::string format = "text";
    bool no_timing = false;
};

void add_params(CLI::App* sub, Common& c) {
    sub->add_option("-x,--x", c.x, "base x >= 2")->required();
    sub->add_option("-r,--rho", c.rho, "modulus rho >= 2")->required();
}

void add_report_format(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
}

void emit(std::ostream& out, const Common& c, RunReport report,
          const std::function<void(std::ostream&)>& text) {
    if (c.no_timing) report.timings_ms.clear();
    if (c.format == "json") {
        out << to_json(report).dump(2) << '\n';
    } else {
        text(out);
    }
}

std::string fixed(double v, int digits) {
    if (std::fabs(v) < 0.5 * std::pow(10.0, -digits)) v = 0.0;  // no "-0.000"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

json witness_json(const VerificationReport& v) {
    if (!v.witness) return nullptr;
    return json{{"n", v.witness->n},
                {"index", v.witness->index},
                {"expected", v.witness->expected.get_str()},
                {"actual", v.witness->actual.get_str()}};
}

// -- gen ---------------------------------------------------------------------

struct GenArgs {
    Common common;
    std::size_t count = 0;
    std::string which = "J";
    std::int64_t offset = 0;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
    const SequenceParams params(a.common.x, a.common.rho);
    const std::vector<Term> terms =
        a.which == "J" ? generate_J(params, a.count) : generate_S(params, a.count);
    if (a.common.format == "bfile") {
        write_bfile(out, BFile::from_terms(terms, a.offset));
    } else if (a.common.format == "plain") {
        for (const auto& t : terms) out << t.get_str() << '\n';
    } else {
        RunReport r{"gen",
                    json{{"x", params.x()},
                         {"rho", params.rho()},
                         {"count", a.count},
                         {"which", a.which},
                         {"offset", a.offset}},
                    "pass"};
        json values = json::array();
        for (const auto& t : terms) values.push_back(t.get_str());
        r.details["terms"] = std::move(values);
        out << to_json(r).dump(2) << '\n';
    }
    return kExitOk;
}

// -- verify ------------------------------------------------------------------

struct VerifyArgs {
    Common common;
    std::uint64_t n_max = 64;
    std::string which = "J";
    std::optional<std::string> pi;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const SequenceParams params(a.common.x, a.common.rho);
    const bool condition = fermat_condition(params);
    VerificationReport v;
    std::optional<Term> pi;
    if (a.which == "J") {
        v = verify_recurrence(params, a.n_max);
    } else {
        pi = a.pi ? Term(*a.pi, 10) : pi_from_initial_terms(params);
        v = verify_summation_recurrence(params, a.n_max, pi);
    }
    RunReport r{"verify",
                json{{"x", params.x()},
                     {"rho", params.rho()},
                     {"n_max", a.n_max},
                     {"which", a.which}},
                v.holds ? "pass" : "witness"};
    r.details["fermat_condition"] = condition;
    r.details["checked"] = json{{"first", v.first}, {"last", v.last}};
    if (pi) r.details["pi"] = pi->get_str();
    r.details["witness"] = witness_json(v);
    emit(out, a.common, r, [&](std::ostream& o) {
        o << "verify " << a.which << " x=" << params.x() << " rho=" << params.rho()
          << " n_max=" << a.n_max;
        if (pi) o << " pi=" << pi->get_str();
        o << ": ";
        if (v.holds) {
            o << "holds for n=" << v.first << ".." << v.last << '\n';
        } else {
            o << "witness at n=" << v.witness->n << " (index " << v.witness->index
              << "): floor=" << v.witness->expected.get_str()
              << " recurrence=" << v.witness->actual.get_str() << '\n';
        }
    });
    return v.holds ? kExitOk : kExitWitness;
}

// -- pi ----------------------------------------------------------------------

int cmd_pi(const Common& c, std::ostream& out) {
    const SequenceParams params(c.x, c.rho);
    const Term pi = pi_constant(params);
    const Term closed = pi_closed_form(params);
    RunReport r{"pi", json{{"x", params.x()}, {"rho", params.rho()}},
                pi == closed ? "pass" : "fail"};
    r.details["pi"] = pi.get_str();
    r.details["closed_form"] = closed.get_str();
    emit(out, c, r, [&](std::ostream& o) { o << pi.get_str() << '\n'; });
    return pi == closed ? kExitOk : kExitWitness;
}

// -- scan --------------------------------------------------------------------

struct ScanArgs {
    Common common;
    std::uint64_t lo = 2;
    std::uint64_t hi = 2;
    unsigned jobs = 1;
    bool all = false;
};

int cmd_scan(const ScanArgs& a, std::ostream& out) {
    if (a.common.x < 2) throw ParameterError("base x must be >= 2");
    const auto x = static_cast<std::uint64_t>(a.common.x);
    const std::vector<ScanResult> results = scan(x, a.lo, a.hi, a.jobs);
    const std::vector<std::uint64_t> pp = pseudoprimes(results);
    RunReport r{"scan", json{{"x", x}, {"lo", a.lo}, {"hi", a.hi}}, "pass"};
    r.details["pseudoprimes"] = pp;
    if (a.all) {
        json rows = json::array();
        for (const auto& s : results) {
            rows.push_back(json{{"rho", s.rho},
                                {"is_prime", s.is_prime},
                                {"condition_holds", s.condition_holds},
                                {"classification", std::string(to_string(s.classification))}});
        }
        r.details["results"] = std::move(rows);
    }
    emit(out, a.common, r, [&](std::ostream& o) {
        if (a.all) {
            for (const auto& s : results) {
                o << s.rho << ' ' << to_string(s.classification) << ' '
                  << (s.condition_holds ? "fermat" : "-") << '\n';
            }
        }
        o << "pseudoprimes base " << x << " in [" << a.lo << ", " << a.hi << "]:";
        for (auto p : pp) o << ' ' << p;
        o << '\n';
    });
    return kExitOk;
}

// -- compare -----------------------------------------------------------------

struct CompareArgs {
    Common common;
    std::string file;
    std::string which = "J";
    std::int64_t offset_shift = 0;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
    const SequenceParams params(a.common.x, a.common.rho);
    const BFile file = read_bfile(a.file);
    // file index i is compared with generated index i + offset_shift
    std::int64_t max_index = -1;
    for (const auto& rec : file.records) {
        const std::int64_t g = rec.index + a.offset_shift;
        if (g < 0) {
            throw ParameterError("file index " + std::to_string(rec.index) +
                                 " maps to negative sequence index");
        }
        max_index = std::max(max_index, g);
    }
    const auto count = static_cast<std::size_t>(max_index + 1);
    const std::vector<Term> terms =
        a.which == "J" ? generate_J(params, count) : generate_S(params, count);
    std::optional<BFileRecord> divergence;
    Term generated;
    std::size_t matched = 0;
    for (const auto& rec : file.records) {
        const Term& g = terms[static_cast<std::size_t>(rec.index + a.offset_shift)];
        if (g != rec.value) {
            divergence = rec;
            generated = g;
            break;
        }
        ++matched;
    }
    RunReport r{"compare",
                json{{"file", a.file},
                     {"x", params.x()},
                     {"rho", params.rho()},
                     {"which", a.which},
                     {"offset_shift", a.offset_shift}},
                divergence ? "divergence" : "match"};
    r.details["records"] = file.records.size();
    r.details["matched"] = matched;
    if (divergence) {
        r.details["divergence"] = json{{"file_index", divergence->index},
                                       {"file_value", divergence->value.get_str()},
                                       {"generated", generated.get_str()}};
    }
    emit(out, a.common, r, [&](std::ostream& o) {
        if (divergence) {
            o << "divergence at file index " << divergence->index << ": file "
              << divergence->value.get_str() << ", generated " << generated.get_str()
              << " (" << matched << " records matched)\n";
        } else {
            o << "match: " << matched << " records\n";
        }
    });
    return divergence ? kExitWitness : kExitOk;
}

// -- bench -------------------------------------------------------------------

struct BenchArgs {
    Common common;
    std::uint64_t n = 0;
    std::vector<std::string> strategies{"floor", "recurrence", "matrix-power", "binet"};
    unsigned repetitions = 5;
    bool print_value = false;
    std::string binet_precision = "auto";
};

template <class F>
double median_ms(unsigned repetitions, F&& f) {
    std::vector<double> samples;
    for (unsigned i = 0; i < repetitions; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t m = samples.size() / 2;
    return samples.size() % 2 ? samples[m] : 0.5 * (samples[m - 1] + samples[m]);
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    const SequenceParams params(a.common.x, a.common.rho);
    if (a.repetitions == 0) throw ParameterError("repetitions must be >= 1");
    const Term reference = count_term(params, a.n);

    struct Row {
        std::string name;
        std::string status;
        std::optional<unsigned> precision_bits;
    };
    std::vector<Row> rows;
    RunReport r{"bench", json{{"x", params.x()}, {"rho", params.rho()}, {"n", a.n}}, "pass"};
    json strategies = json::array();
    for (const auto& s : a.strategies) strategies.push_back(s);
    r.parameters["strategies"] = strategies;
    r.parameters["repetitions"] = a.repetitions;

    bool agree = true;
    for (const auto& name : a.strategies) {
        Row row{name, "ok", std::nullopt};
        std::function<Term()> run;
        if (name == "floor") {
            run = [&] { return count_term(params, a.n); };
        } else if (name == "recurrence") {
            run = [&] { return generate_J_by_recurrence(params, a.n + 1).back(); };
        } else if (name == "matrix-power") {
            run = [&] { return term_by_matrix_power(params, a.n); };
        } else {
            BinetOptions opts;
            if (a.binet_precision == "double") opts.precision_bits = 53;
            if (!fermat_condition(params) || a.n + 2 < params.rho()) {
                rows.push_back({name, "unavailable", std::nullopt});
                continue;
            }
            BinetValue probe;
            try {
                probe = binet_J(params, a.n, opts);
            } catch (const IllConditioned&) {
                rows.push_back({name, "ill-conditioned", std::nullopt});
                continue;
            }
            row.precision_bits = probe.precision_bits;
            if (!probe.certified) {
                row.status = "uncertified";
            } else if (probe.rounded != reference) {
                row.status = "mismatch";
                agree = false;
            }
            r.timings_ms[name] = median_ms(a.repetitions, [&] { (void)binet_J(params, a.n, opts); });
            rows.push_back(row);
            continue;
        }
        if (name == "matrix-power" && a.n + 2 < params.rho()) {
            rows.push_back({name, "unavailable", std::nullopt});
            continue;
        }
        if (run() != reference) {
            row.status = "mismatch";
            agree = false;
        }
        r.timings_ms[name] = median_ms(a.repetitions, [&] { (void)run(); });
        rows.push_back(row);
    }
    if (!agree) r.outcome = "fail";

    const std::size_t digits = reference.get_str().size();
    r.details["value_digits"] = digits;
    if (a.print_value) r.details["value"] = reference.get_str();
    r.details["agree"] = agree;
    json status = json::object();
    for (const auto& row : rows) {
        json s{{"status", row.status}};
        if (row.precision_bits) s["precision_bits"] = *row.precision_bits;
        status[row.name] = s;
    }
    r.details["strategies"] = status;

    Common shown = a.common;
    emit(out, shown, r, [&](std::ostream& o) {
        o << "bench x=" << params.x() << " rho=" << params.rho() << " n=" << a.n << " ("
          << digits << " digits)\n";
        for (const auto& row : rows) {
            o << "  " << row.name << std::string(14 - std::min<std::size_t>(13, row.name.size()), ' ')
              << row.status;
            if (row.precision_bits) o << " [" << *row.precision_bits << " bits]";
            if (!a.common.no_timing && r.timings_ms.count(row.name)) {
                o << "  " << fixed(r.timings_ms.at(row.name), 3) << " ms";
            }
            o << '\n';
        }
        if (a.print_value) o << "value " << reference.get_str() << '\n';
        o << "agreement: " << (agree ? "pass" : "fail") << '\n';
    });
    return agree ? kExitOk : kExitWitness;
}

// -- matrix / eig ------------------------------------------------------------

struct KeyArgs {
    Common common;
    std::string kind = "K";
};

KeyMatrix key_matrix_for(const KeyArgs& a, const SequenceParams& params) {
    return a.kind == "K" ? build_K(params) : build_L(params, pi_constant(params));
}

int cmd_matrix(const KeyArgs& a, std::ostream& out) {
    const SequenceParams params(a.common.x, a.common.rho);
    const KeyMatrix m = key_matrix_for(a, params);
    RunReport r{"matrix", json{{"x", params.x()}, {"rho", params.rho()}, {"kind", a.kind}},
                "pass"};
    json rows = json::array();
    for (std::size_t i = 0; i < m.dimension(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dimension(); ++j) row.push_back(m.entries(i, j).get_str());
        rows.push_back(row);
    }
    r.details["entries"] = rows;
    if (a.kind == "L") r.details["pi"] = m.embedded_pi.get_str();
    emit(out, a.common, r, [&](std::ostream& o) {
        for (std::size_t i = 0; i < m.dimension(); ++i) {
            for (std::size_t j = 0; j < m.dimension(); ++j) {
                o << (j ? " " : "") << m.entries(i, j).get_str();
            }
            o << '\n';
        }
    });
    return kExitOk;
}

int cmd_eig(const KeyArgs& a, double ceiling, std::ostream& out) {
    const SequenceParams params(a.common.x, a.common.rho);
    const KeyMatrix m = key_matrix_for(a, params);
    const Eigensystem es = eigensystem(m, ceiling);
    RunReport r{"eig", json{{"x", params.x()}, {"rho", params.rho()}, {"kind", a.kind}}, "pass"};
    json values = json::array();
    for (const auto& l : es.eigenvalues) values.push_back(json::array({l.real(), l.imag()}));
    r.details["eigenvalues"] = values;
    r.details["condition_estimate"] = es.condition_estimate;
    r.details["eigenpair_residual"] = eigenpair_residual(m, es);
    r.details["diagonalization_residual"] = diagonalization_residual(m, es);
    emit(out, a.common, r, [&](std::ostream& o) {
        for (const auto& l : es.eigenvalues) {
            o << fixed(l.real(), 12) << ' ' << fixed(l.imag(), 12) << '\n';
        }
        o << "condition " << es.condition_estimate << '\n';
    });
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiple-counting sequences: generation, verification, spectra, pseudoprimes",
                 "mcs"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "emit J or S terms");
    add_params(gen_cmd, gen.common);
    gen_cmd->add_option("--count", gen.count, "number of terms")->required();
    gen_cmd->add_option("--which", gen.which)->check(CLI::IsMember({"J", "S"}))->capture_default_str();
    gen_cmd->add_option("--format", gen.common.format)
        ->check(CLI::IsMember({"bfile", "plain", "json"}))
        ->capture_default_str();
    gen_cmd->add_option("--offset", gen.offset, "b-file index of the first term")
        ->capture_default_str();
    gen.common.format = "plain";

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "check a recurrence against the floor formula");
    add_params(verify_cmd, verify.common);
    add_report_format(verify_cmd, verify.common);
    verify_cmd->add_option("--n-max", verify.n_max)->capture_default_str();
    verify_cmd->add_option("--which", verify.which)
        ->check(CLI::IsMember({"J", "S"}))
        ->capture_default_str();
    verify_cmd->add_option("--pi", verify.pi, "override the summation constant (S only)");

    Common pi_args;
    auto* pi_cmd = app.add_subcommand("pi", "summation-recurrence constant");
    add_params(pi_cmd, pi_args);
    add_report_format(pi_cmd, pi_args);

    ScanArgs scan_args;
    auto* scan_cmd = app.add_subcommand("scan", "classify moduli in a range by the Fermat condition");
    scan_cmd->add_option("-x,--x", scan_args.common.x, "base x >= 2")->required();
    scan_cmd->add_option("--lo", scan_args.lo)->required();
    scan_cmd->add_option("--hi", scan_args.hi)->required();
    scan_cmd->add_option("--jobs", scan_args.jobs)->capture_default_str();
    scan_cmd->add_flag("--all", scan_args.all, "list every modulus, not only pseudoprimes");
    add_report_format(scan_cmd, scan_args.common);

    CompareArgs cmp;
    auto* cmp_cmd = app.add_subcommand("compare", "compare a b-file with generated terms");
    add_params(cmp_cmd, cmp.common);
    add_report_format(cmp_cmd, cmp.common);
    cmp_cmd->add_option("--file", cmp.file)->required();
    cmp_cmd->add_option("--which", cmp.which)->check(CLI::IsMember({"J", "S"}))->capture_default_str();
    cmp_cmd->add_option("--offset-shift", cmp.offset_shift,
                        "generated index = file index + shift")
        ->capture_default_str();

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "time J_n by each strategy");
    add_params(bench_cmd, bench.common);
    add_report_format(bench_cmd, bench.common);
    bench_cmd->add_option("-n,--n", bench.n)->required();
    bench_cmd->add_option("--strategies", bench.strategies)
        ->delimiter(',')
        ->check(CLI::IsMember({"floor", "recurrence", "matrix-power", "binet"}));
    bench_cmd->add_option("--repetitions", bench.repetitions)->capture_default_str();
    bench_cmd->add_flag("--print-value", bench.print_value);
    bench_cmd->add_flag("--no-timing", bench.common.no_timing, "omit timings from the output");
    bench_cmd->add_option("--binet-precision", bench.binet_precision)
        ->check(CLI::IsMember({"auto", "double"}))
        ->capture_default_str();

    KeyArgs mat;
    auto* mat_cmd = app.add_subcommand("matrix", "dump the K or L key matrix");
    add_params(mat_cmd, mat.common);
    add_report_format(mat_cmd, mat.common);
    mat_cmd->add_option("--kind", mat.kind)->check(CLI::IsMember({"K", "L"}))->capture_default_str();

    KeyArgs eig;
    double ceiling = kDefaultConditionCeiling;
    auto* eig_cmd = app.add_subcommand("eig", "dump the closed-form eigensystem");
    add_params(eig_cmd, eig.common);
    add_report_format(eig_cmd, eig.common);
    eig_cmd->add_option("--kind", eig.kind)->check(CLI::IsMember({"K", "L"}))->capture_default_str();
    eig_cmd->add_option("--condition-ceiling", ceiling)->capture_default_str();

    for (auto* sub : {verify_cmd, pi_cmd, scan_cmd, cmp_cmd, mat_cmd, eig_cmd, gen_cmd}) {
        sub->add_flag("--no-timing", "accepted for uniformity; only bench reports timings");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, out);
        if (*verify_cmd) return cmd_verify(verify, out);
        if (*pi_cmd) return cmd_pi(pi_args, out);
        if (*scan_cmd) return cmd_scan(scan_args, out);
        if (*cmp_cmd) return cmd_compare(cmp, out);
        if (*bench_cmd) return cmd_bench(bench, out);
        if (*mat_cmd) return cmd_matrix(mat, out);
        if (*eig_cmd) return cmd_eig(eig, ceiling, out);
    } catch (const MalformedInput& e) {
        err << "error: " << cmp.file << ':' << e.line() << ": " << e.what() << '\n';
        return kExitMalformed;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return kExitNoInput;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConditionUnsatisfied& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IllConditioned& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace mcs::cli
