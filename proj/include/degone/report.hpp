#ifndef DEGONE_REPORT_HPP
#define DEGONE_REPORT_HPP

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ellcurve.hpp"

namespace degone {

using Json = nlohmann::ordered_json;

inline constexpr int kReportDigits = 15;

inline std::string fmt_real(const Real& r, int digits = kReportDigits) {
    if (r.is_zero()) return "0";
    return r.str(digits);
}

/// 64-bit FNV-1a, hex.
inline std::string fnv1a_hex(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

namespace detail {

inline Json int_json(const Int& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

inline Json rat_json(const Rat& q) {
    if (q.get_den() == 1) return int_json(q.get_num());
    return q.get_str();
}

}  // namespace detail

/// [{"p","f","e","exp"}] in the factorization's (p, f, e, hnf) order.
inline Json factorization_json(const IdealFactorization& F) {
    Json out = Json::array();
    for (const auto& [P, v] : F.factors())
        out.push_back({{"p", detail::int_json(P.p)}, {"f", P.f}, {"e", P.e}, {"exp", v}});
    return out;
}

inline Json factorization_json(const HalfExponentIdeal& F) {
    Json out = Json::array();
    for (const auto& [P, v] : F.factors())
        out.push_back({{"p", detail::int_json(P.p)}, {"f", P.f}, {"e", P.e}, {"exp", detail::rat_json(v)}});
    return out;
}

/// Resolved configuration plus the numeric settings every output carries.
struct RunHeader {
    std::string command;
    Json config;
    long precision = 192;
    double tolerance = 1e-9;
    std::vector<std::pair<std::string, std::string>> notes;  // e.g. classification

    std::string config_text() const { return config.dump(); }
    std::string hash() const { return fnv1a_hex(command + "\n" + config_text()); }

    Json json() const {
        Json h{{"command", command},       {"config", config},       {"config_hash", hash()},
               {"precision", precision},   {"tolerance", tolerance}};
        for (const auto& [k, v] : notes) h[k] = v;
        return h;
    }
};

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void write_csv_header(std::ostream& os, const RunHeader& h) {
    os << "# command: " << h.command << "\n";
    os << "# config: " << h.config_text() << "\n";
    os << "# config_hash: " << h.hash() << "\n";
    os << "# precision: " << h.precision << "\n";
    std::ostringstream tol;
    tol << h.tolerance;
    os << "# tolerance: " << tol.str() << "\n";
    for (const auto& [k, v] : h.notes) os << "# " << k << ": " << v << "\n";
}

inline const std::vector<std::string>& gm_columns() {
    static const std::vector<std::string> cols{"n",      "u",      "h_u", "h_D",      "h_deg1", "h_deg_gt1",
                                               "norm_I", "norm_J", "c_u", "flag_eps", "skip"};
    return cols;
}

inline const std::vector<std::string>& ell_columns() {
    static const std::vector<std::string> cols = [] {
        auto c = gm_columns();
        for (const char* extra : {"m_witness", "nu_witness", "exceptional", "ratio", "half_integral"})
            c.push_back(extra);
        return c;
    }();
    return cols;
}

/// One row as ordered (column, text) pairs.
inline std::vector<std::pair<std::string, std::string>> row_fields(const ExperimentRow& r, bool elliptic) {
    std::vector<std::pair<std::string, std::string>> f;
    auto put = [&f](const char* k, std::string v) { f.emplace_back(k, std::move(v)); };
    put("n", std::to_string(r.n));
    put("u", r.u);
    if (r.report) {
        const auto& h = *r.report;
        put("h_u", fmt_real(h.h_abs));
        put("h_D", fmt_real(h.h_D));
        put("h_deg1", fmt_real(h.h_deg1));
        put("h_deg_gt1", fmt_real(h.h_deg_gt1));
        put("norm_I", h.norm_I.exp_str());
        put("norm_J", h.norm_J.exp_str());
        put("c_u", fmt_real(exp(h.log_c_u)));
        put("flag_eps", r.flag_eps ? "1" : "0");
    } else {
        for (const char* k : {"h_u", "h_D", "h_deg1", "h_deg_gt1", "norm_I", "norm_J", "c_u", "flag_eps"}) put(k, "");
    }
    put("skip", r.skip);
    if (elliptic) {
        put("m_witness", r.m_witness ? std::to_string(*r.m_witness) : "");
        put("nu_witness", r.nu_witness);
        put("exceptional", r.exceptional ? "1" : "0");
        put("ratio", r.report ? fmt_real(r.report->ratio) : "");
        put("half_integral", r.report ? (r.report->half_integral ? "1" : "0") : "");
    }
    return f;
}

inline void write_csv(std::ostream& os, const RunHeader& h, const std::vector<ExperimentRow>& rows, bool elliptic) {
    write_csv_header(os, h);
    const auto& cols = elliptic ? ell_columns() : gm_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& r : rows) {
        auto f = row_fields(r, elliptic);
        for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << csv_field(f[i].second);
        os << "\n";
    }
}

inline Json rows_json(const RunHeader& h, const std::vector<ExperimentRow>& rows, bool elliptic) {
    Json out{{"header", h.json()}, {"rows", Json::array()}};
    for (const auto& r : rows) {
        Json o = Json::object();
        for (auto& [k, v] : row_fields(r, elliptic)) o[k] = v;
        o["n"] = r.n;
        out["rows"].push_back(std::move(o));
    }
    return out;
}

inline void write_json(std::ostream& os, const RunHeader& h, const std::vector<ExperimentRow>& rows, bool elliptic) {
    os << rows_json(h, rows, elliptic).dump(2) << "\n";
}

}  // namespace degone

#endif
