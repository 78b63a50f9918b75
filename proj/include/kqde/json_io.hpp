#pragma once
// JSON encodings of exact and numeric values.

#include "kqde/laurent.hpp"
#include "kqde/matrix.hpp"

#include <json.hpp>

#include <string>

namespace kq {

nlohmann::json to_json(const LaurentQ& f);
LaurentQ laurent_from_json(const nlohmann::json& j);
// shortest decimal string that reads back to the same double
std::string decimal_string(double x);
nlohmann::json cplx_json(cplx z);  // ["re","im"] decimal strings

// Text form of a Laurent polynomial over the given variables, e.g.
// "Z1^-1 + 3/2*X^2*Z2 - (X - Z1)^2"; exponents may be written n, (n) or {n}.
// Negative powers are allowed on monomials only. Throws std::invalid_argument.
LaurentQ parse_laurent(const std::string& text, const VarList& vars);
// "0.3", "-1/4", "0.1+0.2i", "-0.5i": a decimal or rational complex number
cplx parse_complex(const std::string& text);

template <class T, class F>
nlohmann::json matrix_json(const Mat<T>& m, F enc) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json r = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(enc(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

}  // namespace kq
