#pragma once

// Command implementations behind the `lerch` executable. Everything writes to
// caller-supplied streams and returns the exit status, so the commands can be
// driven from tests.
//
// Exit status: 0 ok, 1 usage, 2 domain, 3 accuracy.

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lerch/coefficients.hpp"
#include "lerch/engines.hpp"
#include "lerch/factorial_series.hpp"
#include "lerch/oracle.hpp"

namespace lerch::cli {

using json = nlohmann::ordered_json;

enum Exit : int { ok = 0, usage = 1, domain = 2, accuracy = 3 };

inline int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::domain:
    case ErrorKind::pole:
    case ErrorKind::conditioning:
    case ErrorKind::unsupported: return Exit::domain;
    case ErrorKind::accuracy:
    case ErrorKind::cap: return Exit::accuracy;
    case ErrorKind::contract: return Exit::usage;
    }
    return Exit::usage;
}

// ------------------------------------------------------------------ formatting

inline std::string fmt_real(double x, int digits)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    if (x == 0.0)
        x = 0.0;  // drop the sign of zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

inline std::string fmt_complex(ComplexScalar c, int digits = 8)
{
    const double im = c.imag();
    return fmt_real(c.real(), digits) + (im < 0.0 ? " - " : " + ") + fmt_real(std::abs(im), digits) + "i";
}

// Serializes with every float at 17 significant digits; non-finite floats become null.
inline void write_json(std::ostream& os, const json& j)
{
    switch (j.type()) {
    case json::value_t::object: {
        os << '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first)
                os << ',';
            first = false;
            os << json(it.key()).dump() << ':';
            write_json(os, it.value());
        }
        os << '}';
        break;
    }
    case json::value_t::array: {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i)
                os << ',';
            write_json(os, j[i]);
        }
        os << ']';
        break;
    }
    case json::value_t::number_float: {
        const double x = j.get<double>();
        os << (std::isfinite(x) ? fmt_real(x, 17) : "null");
        break;
    }
    default: os << j.dump();
    }
}

inline std::string dump_json(const json& j)
{
    std::ostringstream os;
    write_json(os, j);
    return os.str();
}

inline json complex_json(ComplexScalar c)
{
    return json::array({c.real(), c.imag()});
}

inline ComplexScalar complex_from_json(const json& j)
{
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline json real_json(double x)
{
    return std::isfinite(x) ? json(x) : json(nullptr);
}

inline double real_from_json(const json& j)
{
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

// "re,im" or a bare real.
inline ComplexScalar parse_complex(const std::string& text)
{
    auto number = [&](const std::string& part) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != part.size())
            throw CLI::ValidationError("complex value", "expected re,im but got '" + text + "'");
        return v;
    };
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        return {number(text), 0.0};
    return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

// ------------------------------------------------------------------ records

struct EvalRecord
{
    ComplexScalar z, s, a;
    std::string cut_side = "above";
    std::string engine;
    ComplexScalar value;
    double est_err = 0.0;
    int n_terms = 0;
    int m_terms = 0;
    std::vector<Warning> warnings;
};

inline json to_json(const EvalRecord& r)
{
    json w = json::array();
    for (const auto& x : r.warnings)
        w.push_back({{"tag", x.tag}, {"message", x.message}});
    return {{"z", complex_json(r.z)},
            {"s", complex_json(r.s)},
            {"a", complex_json(r.a)},
            {"cut_side", r.cut_side},
            {"engine", r.engine},
            {"value_re", r.value.real()},
            {"value_im", r.value.imag()},
            {"est_err", real_json(r.est_err)},
            {"n_terms", r.n_terms},
            {"m_terms", r.m_terms},
            {"warnings", w}};
}

inline EvalRecord eval_record_from_json(const json& j)
{
    EvalRecord r;
    r.z = complex_from_json(j.at("z"));
    r.s = complex_from_json(j.at("s"));
    r.a = complex_from_json(j.at("a"));
    r.cut_side = j.at("cut_side").get<std::string>();
    r.engine = j.at("engine").get<std::string>();
    r.value = {j.at("value_re").get<double>(), j.at("value_im").get<double>()};
    r.est_err = real_from_json(j.at("est_err"));
    r.n_terms = j.at("n_terms").get<int>();
    r.m_terms = j.at("m_terms").get<int>();
    for (const auto& w : j.at("warnings"))
        r.warnings.push_back({w.at("tag").get<std::string>(), w.at("message").get<std::string>()});
    return r;
}

inline bool operator==(const Warning& x, const Warning& y)
{
    return x.tag == y.tag && x.message == y.message;
}

inline bool operator==(const EvalRecord& x, const EvalRecord& y)
{
    return x.z == y.z && x.s == y.s && x.a == y.a && x.cut_side == y.cut_side && x.engine == y.engine &&
           x.value == y.value && x.est_err == y.est_err && x.n_terms == y.n_terms && x.m_terms == y.m_terms &&
           x.warnings == y.warnings;
}

struct Table1Row
{
    ComplexScalar z;
    ComplexScalar reference, expected_reference;
    ComplexScalar approx, expected_approx;
    int M_opt = 0, expected_M = 0;
    double scaled = 0.0, expected_scaled = 0.0;
    bool pass = false;
};

inline json to_json(const Table1Row& r)
{
    return {{"z", complex_json(r.z)},
            {"reference", complex_json(r.reference)},
            {"expected_reference", complex_json(r.expected_reference)},
            {"approx", complex_json(r.approx)},
            {"expected_approx", complex_json(r.expected_approx)},
            {"M_opt", r.M_opt},
            {"expected_M", r.expected_M},
            {"scaled_remainder", real_json(r.scaled)},
            {"expected_scaled_remainder", r.expected_scaled},
            {"pass", r.pass}};
}

inline Table1Row table1_row_from_json(const json& j)
{
    Table1Row r;
    r.z = complex_from_json(j.at("z"));
    r.reference = complex_from_json(j.at("reference"));
    r.expected_reference = complex_from_json(j.at("expected_reference"));
    r.approx = complex_from_json(j.at("approx"));
    r.expected_approx = complex_from_json(j.at("expected_approx"));
    r.M_opt = j.at("M_opt").get<int>();
    r.expected_M = j.at("expected_M").get<int>();
    r.scaled = real_from_json(j.at("scaled_remainder"));
    r.expected_scaled = j.at("expected_scaled_remainder").get<double>();
    r.pass = j.at("pass").get<bool>();
    return r;
}

inline bool operator==(const Table1Row& x, const Table1Row& y)
{
    return x.z == y.z && x.reference == y.reference && x.expected_reference == y.expected_reference &&
           x.approx == y.approx && x.expected_approx == y.expected_approx && x.M_opt == y.M_opt &&
           x.expected_M == y.expected_M && x.scaled == y.scaled && x.expected_scaled == y.expected_scaled &&
           x.pass == y.pass;
}

struct SweepRecord
{
    std::string param_name;
    ComplexScalar param_value;
    std::string engine;
    ComplexScalar value;
    std::optional<double> abs_err_vs_reference;
    double est_err = 0.0;
    std::optional<double> term_mag;
    std::optional<double> scaled_err;
    int n_terms = 0;
    int m_terms = 0;
    bool optimal = false;
};

inline json to_json(const SweepRecord& r)
{
    auto opt = [](const std::optional<double>& v) { return v ? real_json(*v) : json(nullptr); };
    return {{"param_name", r.param_name},
            {"param_value", complex_json(r.param_value)},
            {"engine", r.engine},
            {"value_re", r.value.real()},
            {"value_im", r.value.imag()},
            {"abs_err_vs_reference", opt(r.abs_err_vs_reference)},
            {"est_err", real_json(r.est_err)},
            {"term_mag", opt(r.term_mag)},
            {"scaled_err", opt(r.scaled_err)},
            {"n_terms", r.n_terms},
            {"m_terms", r.m_terms},
            {"optimal", r.optimal}};
}

inline SweepRecord sweep_record_from_json(const json& j)
{
    auto opt = [](const json& v) { return v.is_null() ? std::optional<double>() : std::optional<double>(v.get<double>()); };
    SweepRecord r;
    r.param_name = j.at("param_name").get<std::string>();
    r.param_value = complex_from_json(j.at("param_value"));
    r.engine = j.at("engine").get<std::string>();
    r.value = {j.at("value_re").get<double>(), j.at("value_im").get<double>()};
    r.abs_err_vs_reference = opt(j.at("abs_err_vs_reference"));
    r.est_err = real_from_json(j.at("est_err"));
    r.term_mag = opt(j.at("term_mag"));
    r.scaled_err = opt(j.at("scaled_err"));
    r.n_terms = j.at("n_terms").get<int>();
    r.m_terms = j.at("m_terms").get<int>();
    r.optimal = j.at("optimal").get<bool>();
    return r;
}

inline bool operator==(const SweepRecord& x, const SweepRecord& y)
{
    return x.param_name == y.param_name && x.param_value == y.param_value && x.engine == y.engine &&
           x.value == y.value && x.abs_err_vs_reference == y.abs_err_vs_reference && x.est_err == y.est_err &&
           x.term_mag == y.term_mag && x.scaled_err == y.scaled_err && x.n_terms == y.n_terms &&
           x.m_terms == y.m_terms && x.optimal == y.optimal;
}

inline const char* sweep_csv_header()
{
    return "param_name,param_re,param_im,engine,value_re,value_im,abs_err_vs_reference,est_err,term_mag,scaled_err,"
           "n_terms,m_terms,optimal";
}

inline std::string to_csv(const SweepRecord& r)
{
    auto opt = [](const std::optional<double>& v) { return v ? fmt_real(*v, 17) : std::string(); };
    std::ostringstream os;
    os << r.param_name << ',' << fmt_real(r.param_value.real(), 17) << ',' << fmt_real(r.param_value.imag(), 17) << ','
       << r.engine << ',' << fmt_real(r.value.real(), 17) << ',' << fmt_real(r.value.imag(), 17) << ','
       << opt(r.abs_err_vs_reference) << ',' << fmt_real(r.est_err, 17) << ',' << opt(r.term_mag) << ','
       << opt(r.scaled_err) << ',' << r.n_terms << ',' << r.m_terms << ',' << (r.optimal ? 1 : 0);
    return os.str();
}

// ------------------------------------------------------------------ eval

struct EvalOptions
{
    ComplexScalar z, s, a;
    std::string engine = "auto";
    double tol = 1e-12;
    std::optional<int> n;
    std::string cut_side = "above";
    bool json = false;
};

inline EngineReport run_engine(const EvalOptions& o)
{
    const LerchPoint p{o.z, o.s, o.a, o.cut_side == "below" ? CutSide::below : CutSide::above};
    if (o.engine == "auto")
        return eval_auto(p, o.tol);
    const auto kind = parse_engine(o.engine);
    if (!kind)
        throw contract_error("unknown engine '" + o.engine + "'");
    switch (*kind) {
    case EngineKind::direct: return eval_series_direct(p);
    case EngineKind::near_one: return eval_near_one(p, o.n.value_or(200));
    case EngineKind::integer_s: {
        long long S = 0;
        if (!engine_detail::near_integer(p.s, 0.0, &S))
            throw domain_error("engine integer-s needs an integer s");
        return eval_integer_s_large_z(p, S, o.n ? *o.n : integer_s_tail_terms(p, S, o.tol));
    }
    case EngineKind::main_theorem: return eval_main_theorem(p, o.n.value_or(5));
    case EngineKind::symmetric_igamma: return eval_symmetric_igamma(p, o.n.value_or(400), o.tol);
    case EngineKind::fl_expansion: {
        const int n = o.n.value_or(5);
        return eval_fl_expansion(p, n, choose_optimal_M(p, n));
    }
    case EngineKind::factorial: return eval_factorial_B(p, o.tol, o.n.value_or(500));
    case EngineKind::oracle: return oracle_report(p);
    }
    throw contract_error("unknown engine");
}

inline int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err)
{
    EngineReport rep;
    try {
        rep = run_engine(o);
    } catch (const error& e) {
        err << e.what() << '\n';
        return exit_code(e.kind());
    }
    EvalRecord r{o.z, o.s, o.a, o.cut_side, to_string(rep.engine), rep.value, rep.abs_err_estimate,
                 rep.n_terms, rep.m_terms, rep.warnings};
    if (o.json) {
        out << dump_json(to_json(r)) << '\n';
    } else {
        out << "engine    " << r.engine << '\n'
            << "value     " << fmt_complex(r.value) << '\n'
            << "est_err   " << fmt_real(r.est_err, 8) << '\n'
            << "n_terms   " << r.n_terms << '\n'
            << "m_terms   " << r.m_terms << '\n';
        for (const auto& w : r.warnings)
            out << "warning   " << w.tag << ": " << w.message << '\n';
    }
    return rep.has_warning("accuracy") ? Exit::accuracy : Exit::ok;
}

// ------------------------------------------------------------------ table1

struct Table1Expected
{
    ComplexScalar z, reference, approx;
    int M;
    double scaled;
};

inline const std::vector<Table1Expected>& table1_expected()
{
    static const std::vector<Table1Expected> rows = {
        {{-5.0, 0.0}, {1.3421782, 0.0}, {1.3421692, 0.0}, 9, 0.140},
        {{-10.0, 0.0}, {1.0889334, 0.0}, {1.0889332, 0.0}, 13, 0.158},
        {{0.0, 10.0}, {0.98125249, 0.54864116}, {0.98125270, 0.54864133}, 16, 0.269},
        {{10.0, 0.01}, {0.52526675, 1.04285831}, {0.52526654, 1.04285810}, 22, 0.297},
    };
    return rows;
}

inline bool close_components(ComplexScalar x, ComplexScalar y, double tol)
{
    return std::abs(x.real() - y.real()) <= tol && std::abs(x.imag() - y.imag()) <= tol;
}

inline Table1Row compute_table1_row(const Table1Expected& e)
{
    constexpr int N = 5;
    const LerchPoint p{e.z, {0.75, 0.0}, {0.3, 0.0}};
    Table1Row r;
    r.z = e.z;
    r.expected_reference = e.reference;
    r.expected_approx = e.approx;
    r.expected_M = e.M;
    r.expected_scaled = e.scaled;
    r.reference = reference_value(p).value;
    const auto main = eval_main_theorem(p, N);
    r.approx = main.value;
    r.M_opt = main.m_terms;
    r.scaled = std::pow(std::abs(p.z), N + 1) * std::abs(r.reference - r.approx);
    r.pass = close_components(r.reference, e.reference, 5e-8) && close_components(r.approx, e.approx, 5e-8) &&
             r.M_opt == e.M && std::abs(r.scaled - e.scaled) <= 0.01;
    return r;
}

inline std::string fixed3(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

inline int cmd_table1(bool as_json, std::ostream& out, std::ostream& err)
{
    bool all_pass = true;
    if (!as_json)
        out << "a = 0.3, s = 0.75, N = 5\n";
    for (const auto& e : table1_expected()) {
        Table1Row r;
        try {
            r = compute_table1_row(e);
        } catch (const error& ex) {
            err << "z = " << fmt_complex(e.z) << ": " << ex.what() << '\n';
            return Exit::accuracy;
        }
        all_pass = all_pass && r.pass;
        if (as_json) {
            out << dump_json(to_json(r)) << '\n';
            continue;
        }
        auto status = [](bool ok) { return ok ? "PASS" : "FAIL"; };
        char line[256];
        out << "z = " << fmt_complex(r.z) << '\n';
        std::snprintf(line, sizeof line, "  %-10s %-28s expected %-28s %s\n", "reference", fmt_complex(r.reference).c_str(),
                      fmt_complex(r.expected_reference).c_str(),
                      status(close_components(r.reference, r.expected_reference, 5e-8)));
        out << line;
        std::snprintf(line, sizeof line, "  %-10s %-28s expected %-28s %s\n", "approx", fmt_complex(r.approx).c_str(),
                      fmt_complex(r.expected_approx).c_str(), status(close_components(r.approx, r.expected_approx, 5e-8)));
        out << line;
        std::snprintf(line, sizeof line, "  %-10s %-28d expected %-28d %s\n", "M_opt", r.M_opt, r.expected_M,
                      status(r.M_opt == r.expected_M));
        out << line;
        std::snprintf(line, sizeof line, "  %-10s %-28s expected %-28s %s\n", "|z^6 R|", fmt_real(r.scaled, 8).c_str(),
                      fixed3(r.expected_scaled).c_str(), status(std::abs(r.scaled - r.expected_scaled) <= 0.01));
        out << line;
    }
    return all_pass ? Exit::ok : Exit::accuracy;
}

// ------------------------------------------------------------------ sweep

struct SweepOptions
{
    std::string mode;
    std::optional<ComplexScalar> z;
    ComplexScalar s{0.75, 0.0};
    ComplexScalar a{0.3, 0.0};
    int n = 5;
    int count = 40;
    int k_max = 3;
    double tol = 1e-14;
    bool json = false;
};

inline std::vector<SweepRecord> sweep_records(const SweepOptions& o)
{
    std::vector<SweepRecord> out;
    const ComplexScalar z0 = o.z.value_or(o.mode == "m-landscape" ? ComplexScalar(-10.0, 0.0) : ComplexScalar(-5.0, 0.0));
    const LerchPoint p{z0, o.s, o.a};
    if (o.count < 1)
        throw contract_error("sweep: --count must be positive");

    if (o.mode == "terms-vs-error") {
        const ComplexScalar ref = reference_value(p).value;
        const ComplexScalar residue = engine_detail::residue_series(p.z, p.s, p.a).value;
        const auto terms = m_series_terms(p, -1, o.count + 1);
        ComplexScalar partial = residue;
        for (int m = 1; m <= o.count; ++m) {
            partial += terms[m - 1];
            SweepRecord r;
            r.param_name = "M";
            r.param_value = double(m);
            r.engine = "m-series-unsubtracted";
            r.value = partial;
            r.abs_err_vs_reference = std::abs(partial - ref);
            r.est_err = std::abs(terms[m]);
            r.term_mag = std::abs(terms[m - 1]);
            r.m_terms = m;
            out.push_back(r);
        }
    } else if (o.mode == "m-landscape") {
        const ComplexScalar ref = reference_value(p).value;
        const auto base = eval_main_theorem(p, o.n, 0);
        const auto terms = m_series_terms(p, o.n, o.count);
        const int M_opt = choose_optimal_M(p, o.n);
        ComplexScalar partial = base.value;
        for (int M = 1; M <= o.count; ++M) {
            partial += terms[M - 1];
            SweepRecord r;
            r.param_name = "M";
            r.param_value = double(M);
            r.engine = to_string(EngineKind::main_theorem);
            r.value = partial;
            r.abs_err_vs_reference = std::abs(partial - ref);
            r.est_err = remainder_estimate(p, o.n, M);
            r.term_mag = std::abs(terms[M - 1]);
            r.n_terms = o.n;
            r.m_terms = M;
            r.optimal = M == M_opt;
            out.push_back(r);
        }
    } else if (o.mode == "z-scaling") {
        for (int k = 0; k <= o.k_max; ++k) {
            const LerchPoint q{z0 * std::ldexp(1.0, k), o.s, o.a};
            const auto main = eval_main_theorem(q, o.n);
            const ComplexScalar ref = reference_value(q).value;
            SweepRecord r;
            r.param_name = "z";
            r.param_value = q.z;
            r.engine = to_string(main.engine);
            r.value = main.value;
            r.abs_err_vs_reference = std::abs(main.value - ref);
            r.est_err = main.abs_err_estimate;
            r.scaled_err = std::pow(std::abs(q.z), o.n + 1) * *r.abs_err_vs_reference;
            r.n_terms = main.n_terms;
            r.m_terms = main.m_terms;
            out.push_back(r);
        }
    } else if (o.mode == "factorial-trace") {
        std::vector<FactorialTraceRow> trace;
        factorial_series_B(p, o.tol, o.count, &trace);
        const ComplexScalar ref = reference_value(p).value;
        const bool flip = log_neg_z(p.z, p.cut_side).value.imag() > 0.0;
        const LerchPoint summed = flip ? conjugate(p) : p;
        const ComplexScalar residue = engine_detail::residue_series(summed.z, summed.s, summed.a).value;
        for (const auto& t : trace) {
            const ComplexScalar phi = flip ? std::conj(t.partial + residue) : t.partial + residue;
            SweepRecord r;
            r.param_name = "n";
            r.param_value = double(t.n);
            r.engine = to_string(EngineKind::factorial);
            r.value = t.partial;
            r.abs_err_vs_reference = std::abs(phi - ref);
            r.est_err = t.term_mag;
            r.term_mag = t.term_mag;
            r.n_terms = t.n + 1;
            out.push_back(r);
        }
    } else {
        throw contract_error("unsupported sweep mode '" + o.mode + "'");
    }
    return out;
}

inline int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err)
{
    std::vector<SweepRecord> records;
    try {
        records = sweep_records(o);
    } catch (const error& e) {
        err << e.what() << '\n';
        return exit_code(e.kind());
    }
    if (!o.json)
        out << sweep_csv_header() << '\n';
    for (const auto& r : records)
        out << (o.json ? dump_json(to_json(r)) : to_csv(r)) << '\n';
    return Exit::ok;
}

// ------------------------------------------------------------------ coeffs

struct CoeffsOptions
{
    ComplexScalar a;
    int n_max = 10;
    std::optional<int> subtract;
};

inline int cmd_coeffs(const CoeffsOptions& o, std::ostream& out, std::ostream& err)
{
    if (o.n_max < 0) {
        err << "coeffs: --n-max must be non-negative\n";
        return Exit::usage;
    }
    std::vector<CoefficientTable> tables;
    try {
        const int count = std::max(2, o.n_max + 1);
        if (o.subtract) {
            tables.push_back(shifted_coeffs(o.a, *o.subtract, count));
            tables.push_back(shifted_coeffs_direct(o.a, *o.subtract, count));
        } else {
            tables.push_back(taylor_coeffs_g(o.a, count));
        }
    } catch (const error& e) {
        err << e.what() << '\n';
        return exit_code(e.kind());
    }
    out << "n,re,im,method\n";
    for (const auto& t : tables)
        for (int n = 0; n <= o.n_max; ++n)
            out << n << ',' << fmt_real(t[n].real(), 17) << ',' << fmt_real(t[n].imag(), 17) << ','
                << to_string(t.method()) << '\n';
    return Exit::ok;
}

// ------------------------------------------------------------------ driver

// Joins "--flag -5,0" into "--flag=-5,0"; the parser would read "-5,0" as a short option.
inline std::vector<std::string> join_negative_values(const std::vector<std::string>& args)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& cur = args[i];
        const bool long_flag = cur.rfind("--", 0) == 0 && cur.find('=') == std::string::npos;
        if (long_flag && i + 1 < args.size()) {
            const std::string& next = args[i + 1];
            if (next.size() > 1 && next[0] == '-' && (std::isdigit(static_cast<unsigned char>(next[1])) || next[1] == '.')) {
                out.push_back(cur + "=" + next);
                ++i;
                continue;
            }
        }
        out.push_back(cur);
    }
    return out;
}

// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Lerch transcendent Phi(z, s, a): evaluation, coefficient dumps and truncation sweeps", "lerch"};
    app.require_subcommand(1);

    auto complex_option = [](CLI::App* sub, const std::string& name, ComplexScalar& target, const std::string& help) {
        return sub->add_option_function<std::string>(name, [&target](const std::string& v) { target = parse_complex(v); },
                                                      help);
    };

    EvalOptions eo;
    auto* eval = app.add_subcommand("eval", "Evaluate Phi at one point");
    complex_option(eval, "--z", eo.z, "z as re,im")->required();
    complex_option(eval, "--s", eo.s, "s as re,im")->required();
    complex_option(eval, "--a", eo.a, "a as re,im")->required();
    eval->add_option("--engine", eo.engine, "auto|direct|near-one|integer-s|main|symmetric|fl|factorial|oracle")
        ->check(CLI::IsMember({"auto", "direct", "near-one", "integer-s", "main", "symmetric", "fl", "factorial", "oracle"}));
    eval->add_option("--tol", eo.tol, "target tolerance");
    eval->add_option_function<int>("--n", [&eo](const int& n) { eo.n = n; }, "engine truncation parameter");
    eval->add_option("--cut-side", eo.cut_side, "side of the cut [1, inf) for real z >= 1")
        ->check(CLI::IsMember({"above", "below"}));
    eval->add_flag("--json", eo.json, "emit one JSON object");

    bool t1_json = false;
    auto* table1 = app.add_subcommand("table1", "Recompute the a = 0.3, s = 3/4, N = 5 comparison table");
    table1->add_flag("--json", t1_json, "emit one JSON object per row");

    SweepOptions so;
    auto* sweep = app.add_subcommand("sweep", "Error against truncation, as CSV or JSON lines");
    sweep->add_option("--mode", so.mode, "terms-vs-error|m-landscape|z-scaling|factorial-trace")->required();
    sweep->add_option_function<std::string>("--z", [&so](const std::string& v) { so.z = parse_complex(v); },
                                            "z as re,im (default -5, or -10 for m-landscape)");
    complex_option(sweep, "--s", so.s, "s as re,im (default 0.75)");
    complex_option(sweep, "--a", so.a, "a as re,im (default 0.3)");
    sweep->add_option("--n", so.n, "N of the theorem (default 5)");
    sweep->add_option("--count", so.count, "number of records for term sweeps (default 40)");
    sweep->add_option("--k-max", so.k_max, "z-scaling: last k in z * 2^k (default 3)");
    sweep->add_option("--tol", so.tol, "factorial-trace: quiet-window tolerance (default 1e-14)");
    sweep->add_flag("--json", so.json, "emit JSON lines instead of CSV");

    CoeffsOptions co;
    auto* coeffs = app.add_subcommand("coeffs", "Dump Taylor coefficients b_n or shifted b_{n,N} as CSV");
    complex_option(coeffs, "--a", co.a, "a as re,im")->required();
    coeffs->add_option("--n-max", co.n_max, "last index, inclusive (default 10)");
    coeffs->add_option_function<int>("--subtract", [&co](const int& n) { co.subtract = n; },
                                     "N: dump b_{n,N} by both methods");

    std::vector<std::string> rev = join_negative_values(args);
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return Exit::ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return Exit::ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return Exit::usage;
    }

    try {
        if (eval->parsed())
            return cmd_eval(eo, out, err);
        if (table1->parsed())
            return cmd_table1(t1_json, out, err);
        if (sweep->parsed())
            return cmd_sweep(so, out, err);
        return cmd_coeffs(co, out, err);
    } catch (const error& e) {
        err << e.what() << '\n';
        return exit_code(e.kind());
    }
}

} // namespace lerch::cli
