#pragma once

// Certificate data model and serialized formats. Coefficients are stored as
// decimal strings with 12 significant digits and parsed back as exact
// rationals, so validation is bit-exact across platforms.

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsos/charfn.hpp"
#include "fsos/cnf.hpp"
#include "fsos/common.hpp"
#include "fsos/poly.hpp"

namespace fsos {

constexpr int kCertificateVersion = 1;

struct CertPart {
    std::vector<std::vector<int>> support;  // variable-index lists, canonical term order
    std::vector<std::string> coeffs;        // decimal strings, same length as support
};

struct Certificate {
    int version = kCertificateVersion;
    Mode mode = Mode::MAXSAT;
    long L = 0;
    int n = 0;
    std::string formula_digest;
    std::vector<CertPart> numerators;    // the g_j
    std::vector<CertPart> denominators;  // the h_i; empty means denominator == 1
    // metadata
    int d = 0;
    std::string rho;
    long s_size = 0, t_size = 0;
    double solver_residual = 0;
    std::string exact_residual;
    long build_time_ms = 0;
};

inline CertPart part_from_poly(const MultilinearPoly<double>& p, int digits = kCoeffDigits) {
    CertPart part;
    for (auto& [m, c] : p.terms) {
        part.support.push_back(m.vars());
        part.coeffs.push_back(decimal_string(c, digits));
    }
    return part;
}

inline MultilinearPoly<Rational> poly_from_part(const CertPart& part, int n) {
    if (part.support.size() != part.coeffs.size())
        throw std::invalid_argument("coefficient count differs from support count");
    MultilinearPoly<Rational> p(n);
    for (size_t i = 0; i < part.support.size(); ++i)
        p.add_term(Monomial::of(n, part.support[i]), rational_from_decimal(part.coeffs[i]));
    return p;
}

inline nlohmann::ordered_json part_to_json(const CertPart& p) {
    return nlohmann::ordered_json{{"support", p.support}, {"coeffs", p.coeffs}};
}

inline CertPart part_from_json(const nlohmann::ordered_json& j) {
    CertPart p;
    p.support = j.at("support").get<std::vector<std::vector<int>>>();
    p.coeffs = j.at("coeffs").get<std::vector<std::string>>();
    if (p.support.size() != p.coeffs.size())
        throw std::invalid_argument("coefficient count differs from support count");
    for (const std::string& c : p.coeffs) rational_from_decimal(c);  // malformed decimals fail here
    return p;
}

inline std::string serialize(const Certificate& c) {
    nlohmann::ordered_json j;
    j["version"] = c.version;
    j["mode"] = mode_name(c.mode);
    j["L"] = c.L;
    j["n"] = c.n;
    j["formula_digest"] = c.formula_digest;
    j["numerators"] = nlohmann::ordered_json::array();
    for (const CertPart& p : c.numerators) j["numerators"].push_back(part_to_json(p));
    j["denominators"] = nlohmann::ordered_json::array();
    for (const CertPart& p : c.denominators) j["denominators"].push_back(part_to_json(p));
    j["metadata"] = nlohmann::ordered_json{
        {"d", c.d},           {"rho", c.rho},
        {"S_size", c.s_size}, {"T_size", c.t_size},
        {"solver_residual", c.solver_residual}, {"exact_residual", c.exact_residual},
        {"build_time_ms", c.build_time_ms}};
    return j.dump(2) + "\n";
}

inline Certificate deserialize(const std::string& bytes) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("certificate JSON malformed: ") + e.what());
    }
    Certificate c;
    c.version = j.at("version").get<int>();
    if (c.version != kCertificateVersion)
        throw std::invalid_argument("unsupported certificate version " + std::to_string(c.version));
    c.mode = mode_from_name(j.at("mode").get<std::string>());
    c.L = j.at("L").get<long>();
    c.n = j.at("n").get<int>();
    c.formula_digest = j.at("formula_digest").get<std::string>();
    for (const auto& p : j.at("numerators")) c.numerators.push_back(part_from_json(p));
    for (const auto& p : j.at("denominators")) c.denominators.push_back(part_from_json(p));
    const auto& md = j.at("metadata");
    c.d = md.at("d").get<int>();
    c.rho = md.at("rho").get<std::string>();
    c.s_size = md.at("S_size").get<long>();
    c.t_size = md.at("T_size").get<long>();
    c.solver_residual = md.at("solver_residual").get<double>();
    c.exact_residual = md.at("exact_residual").get<std::string>();
    c.build_time_ms = md.at("build_time_ms").get<long>();
    return c;
}

inline std::string render_poly_human(const CertPart& part) {
    if (part.support.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < part.support.size(); ++i) {
        std::string coeff = trim_decimal(part.coeffs[i]);
        bool neg = !coeff.empty() && coeff[0] == '-';
        std::string mag = neg ? coeff.substr(1) : coeff;
        if (i == 0)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string mono;
        for (int v : part.support[i]) {
            if (!mono.empty()) mono += "*";
            mono += "y" + std::to_string(v);
        }
        if (mono.empty())
            out += mag;
        else if (mag == "1")
            out += mono;
        else
            out += mag + "*" + mono;
    }
    return out;
}

inline std::string render_human(const Certificate& c) {
    std::string out;
    out += "certificate (mode " + mode_name(c.mode) + ", L = " + std::to_string(c.L) + ", n = " +
           std::to_string(c.n) + ")\n";
    out += "formula sha256 " + c.formula_digest + "\n";
    out += "claim: sum_j g_j(y)^2 " +
           std::string(c.denominators.empty() ? "" : "/ sum_i h_i(y)^2 ") +
           "stays within 1/2 of the shifted objective on {-1,1}^n\n\n";
    for (size_t i = 0; i < c.numerators.size(); ++i)
        out += "g_" + std::to_string(i + 1) + "(y) = " + render_poly_human(c.numerators[i]) + "\n";
    if (c.denominators.empty()) {
        out += "\ndenominator = 1 (polynomial certificate)\n";
    } else {
        out += "\n";
        for (size_t i = 0; i < c.denominators.size(); ++i)
            out += "h_" + std::to_string(i + 1) + "(y) = " + render_poly_human(c.denominators[i]) + "\n";
    }
    out += "\nbuilt with d = " + std::to_string(c.d) + ", rho = " + c.rho + ", |S| = " +
           std::to_string(c.s_size) + ", |T| = " + std::to_string(c.t_size) +
           ", exact l1 residual = " + c.exact_residual + "\n";
    return out;
}

// Writes via a temp file + rename: readers never observe a partial artifact.
inline void write_file_atomic(const std::string& path, const std::string& bytes) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out.flush()) throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move " + tmp + " into place");
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

}  // namespace fsos
