#pragma once

#include <json.hpp>

#include "states.hpp"

namespace qsep {

/// Matrix as nested arrays of [re, im] pairs, row major. nlohmann prints
/// shortest round-trip representations, so to/from is bit exact.
inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.dim(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < m.dim(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() < 2 || j.size() > 4)
        throw std::invalid_argument("matrix_from_json: expected 2 to 4 rows");
    const int dim = static_cast<int>(j.size());
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
        const nlohmann::json& row = j[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw std::invalid_argument("matrix_from_json: ragged rows");
        for (int c = 0; c < dim; ++c) {
            const nlohmann::json& cell = row[static_cast<size_t>(c)];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number())
                throw std::invalid_argument("matrix_from_json: entries must be [re, im]");
            m(r, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    if (!m.is_finite()) throw std::invalid_argument("matrix_from_json: non-finite entry");
    return m;
}

inline nlohmann::json pauli_form_to_json(const PauliForm& f) {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& row : f.t) t.push_back(row);
    return {{"a", f.a}, {"b", f.b}, {"t", t}};
}

inline PauliForm pauli_form_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("t"))
        throw std::invalid_argument("pauli_form_from_json: expected keys a, b, t");
    auto vec3 = [](const nlohmann::json& v, const char* key) {
        if (!v.is_array() || v.size() != 3)
            throw std::invalid_argument(std::string("pauli_form_from_json: ") + key +
                                        " must have 3 entries");
        std::array<double, 3> out{};
        for (size_t i = 0; i < 3; ++i) {
            if (!v[i].is_number())
                throw std::invalid_argument(std::string("pauli_form_from_json: ") + key +
                                            " entries must be numbers");
            out[i] = v[i].get<double>();
        }
        return out;
    };
    PauliForm f{};
    f.a = vec3(j["a"], "a");
    f.b = vec3(j["b"], "b");
    const nlohmann::json& t = j["t"];
    if (!t.is_array() || t.size() != 3)
        throw std::invalid_argument("pauli_form_from_json: t must have 3 rows");
    for (size_t i = 0; i < 3; ++i) f.t[i] = vec3(t[i], "t");
    return f;
}

}  // namespace qsep
