#pragma once

#include <complex>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lseries/dirichlet_polynomial.hpp"
#include "lseries/dirichlet_series.hpp"
#include "lseries/errors.hpp"
#include "lseries/measure.hpp"

namespace lseries {

// Coefficient vectors travel as a line-oriented text format
//   n <TAB> re <TAB> im
// 1-indexed, rows in any order, missing n meaning a_n = 0.

inline void write_coefficients(std::ostream& os, const SeriesC& series) {
    os.precision(17);
    for (std::size_t n = 1; n <= series.truncation(); ++n) {
        const auto c = series.a(n);
        if (c == std::complex<double>(0.0, 0.0)) continue;
        os << n << '\t' << c.real() << '\t' << c.imag() << '\n';
    }
}

/// Parse the text format. The truncation is max(max stored index, min_truncation).
inline SeriesC read_coefficients(std::istream& is, std::size_t min_truncation = 1) {
    std::map<std::size_t, std::complex<double>> entries;
    std::size_t max_n = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        long long n = 0;
        double re = 0.0, im = 0.0;
        if (!(row >> n >> re >> im) || n < 1)
            throw Error("coefficient file: bad row at line " +
                        std::to_string(lineno));
        entries[static_cast<std::size_t>(n)] = {re, im};
        max_n = std::max(max_n, static_cast<std::size_t>(n));
    }
    SeriesC series(std::max(max_n, min_truncation));
    for (const auto& [n, c] : entries) series.a(n) = c;
    return series;
}

// JSON formats (machine interfaces; keys are decimal strings where the
// mathematical index is an integer, values are [re, im] pairs).

inline nlohmann::ordered_json to_json(const DirichletPolynomial& poly) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [u, c] : poly.support)
        j[std::to_string(u)] = {c.real(), c.imag()};
    return j;
}

inline DirichletPolynomial polynomial_from_json(const nlohmann::json& j) {
    DirichletPolynomial poly;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto u = std::stoull(it.key());
        const auto& pair = it.value();
        if (!pair.is_array() || pair.size() != 2)
            throw Error("polynomial JSON: values must be [re, im]");
        poly.set(u, {pair[0].get<double>(), pair[1].get<double>()});
    }
    return poly;
}

inline nlohmann::ordered_json to_json(const DiscreteMeasure& mu) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& atom : mu.atoms)
        j.push_back({atom.t, atom.c.real(), atom.c.imag()});
    return j;
}

inline DiscreteMeasure measure_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error("measure JSON: expected a list of [t, re, im]");
    DiscreteMeasure mu;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != 3)
            throw Error("measure JSON: entries must be [t, re, im]");
        mu.atoms.push_back(
            {row[0].get<double>(), {row[1].get<double>(), row[2].get<double>()}});
    }
    mu.validate();
    return mu;
}

inline nlohmann::ordered_json
samples_to_json(const std::map<int, std::complex<double>>& samples) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : samples)
        j[std::to_string(k)] = {v.real(), v.imag()};
    return j;
}

inline std::map<int, std::complex<double>>
samples_from_json(const nlohmann::json& j) {
    std::map<int, std::complex<double>> samples;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& pair = it.value();
        if (!pair.is_array() || pair.size() != 2)
            throw Error("sample JSON: values must be [re, im]");
        samples[std::stoi(it.key())] = {pair[0].get<double>(),
                                        pair[1].get<double>()};
    }
    return samples;
}

} // namespace lseries
