/*
   Copyright 2026 The dtower Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "dtower/serialize.hpp"

#include <sstream>

#include "dtower/errors.hpp"

namespace dtower {

namespace {

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing JSON member '") + key + "'");
    return j.at(key);
}

}  // namespace

std::string rational_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Json to_json(const FieldElement& a) { return a.to_string(); }

Json to_json(const FieldSpec& F) { return F.to_string(); }

Json to_json(const LinearizedPoly& u) {
    Json coeffs = Json::array();
    for (const auto& c : u.coeffs()) coeffs.push_back(c.to_string());
    return Json{{"q", u.q()}, {"field", u.field().to_string()}, {"tau_degree", u.degree()}, {"coeffs", coeffs}};
}

Json to_json(const DrinfeldModule& M) {
    return Json{{"q", M.q()},
                {"field", M.field().to_string()},
                {"l0", M.l0().to_string()},
                {"g", M.g().to_string()},
                {"delta", M.delta().to_string()}};
}

LinearizedPoly linearized_from_json(const Json& j, std::uint64_t cap) {
    try {
        const FieldSpec F = parse_field(member(j, "field").get<std::string>(), cap);
        std::vector<FieldElement> coeffs;
        for (const auto& c : member(j, "coeffs")) coeffs.push_back(F.parse_element(c.get<std::string>()));
        LinearizedPoly u(member(j, "q").get<std::uint64_t>(), F, std::move(coeffs));
        if (j.contains("tau_degree") && j.at("tau_degree").get<int>() != u.degree()) {
            throw InvalidArgument("tau_degree does not match the coefficient list");
        }
        return u;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed linearized polynomial: ") + e.what());
    }
}

DrinfeldModule module_from_json(const Json& j, std::uint64_t cap) {
    try {
        const FieldSpec F = parse_field(member(j, "field").get<std::string>(), cap);
        return DrinfeldModule(member(j, "q").get<std::uint64_t>(), F.parse_element(member(j, "l0").get<std::string>()),
                              F.parse_element(member(j, "g").get<std::string>()),
                              F.parse_element(member(j, "delta").get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed Drinfeld module: ") + e.what());
    }
}

Json to_json(const ZetaReport& z) {
    Json l = Json::array();
    for (const auto& a : z.l_poly) l.push_back(rational_string(a));
    return Json{{"genus", z.genus},
                {"q1", z.q1},
                {"counts", z.counts},
                {"l_polynomial", l},
                {"integral", z.integral},
                {"functional_equation_residual", rational_string(z.functional_equation_residual)},
                {"count_residual", rational_string(z.count_residual)},
                {"residuals_zero", z.residuals_zero()},
                {"real_weil_roots", z.real_roots},
                {"inverse_root_moduli", z.root_moduli},
                {"weil_deviation", z.weil_deviation}};
}

Json to_json(const CountReport& r) {
    Json ext = Json::array();
    for (const auto& e : r.extensions) {
        Json row{{"m", e.m}, {"field", e.field}, {"field_size", e.field_size}, {"affine_count", e.affine_count}};
        if (r.variant == Variant::x0) row["skipped_minus_one"] = e.skipped_minus_one;
        ext.push_back(std::move(row));
    }
    Json j{{"q", r.q},
           {"n", r.n},
           {"variant", to_string(r.variant)},
           {"affine_only", r.affine_only},
           {"extensions", ext},
           {"supersingular", r.supersingular},
           {"supersingular_expected", r.supersingular_expected}};
    if (r.zeta) j["zeta"] = to_json(*r.zeta);
    return j;
}

Json to_json(const HermitianReport& r) {
    return Json{{"q", r.q},
                {"genus", r.genus},
                {"affine_brute_force", r.affine_brute_force},
                {"affine_by_fibers", r.affine_by_fibers},
                {"projective", r.projective},
                {"hasse_weil_bound", r.hasse_weil_bound},
                {"maximal", r.maximal},
                {"projective_counts", r.projective_counts},
                {"zeta", to_json(r.zeta)}};
}

Json to_json(const PointListing& p) {
    Json meta{{"q", p.q},
              {"n", p.n},
              {"variant", to_string(p.variant)},
              {"field", p.field},
              {"affine_only", p.affine_only},
              {"supersingular_only", p.supersingular_only}};
    if (p.skipped_minus_one) meta["skipped_minus_one"] = *p.skipped_minus_one;
    return Json{{"metadata", meta}, {"columns", p.columns}, {"count", p.rows.size()}, {"points", p.rows}};
}

std::string to_csv(const PointListing& p) {
    std::ostringstream out;
    out << "# q: " << p.q << "\n# n: " << p.n << "\n# variant: " << to_string(p.variant) << "\n# field: " << p.field
        << "\n# affine_only: " << (p.affine_only ? "true" : "false")
        << "\n# supersingular_only: " << (p.supersingular_only ? "true" : "false") << "\n";
    if (p.skipped_minus_one) out << "# skipped_minus_one: " << *p.skipped_minus_one << "\n";
    for (std::size_t i = 0; i < p.columns.size(); ++i) out << (i ? "," : "") << p.columns[i];
    out << "\n";
    for (const auto& row : p.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_quote(row[i]);
        out << "\n";
    }
    return out.str();
}

std::string to_csv(const CountReport& r) {
    std::ostringstream out;
    out << "# q: " << r.q << "\n# n: " << r.n << "\n# variant: " << to_string(r.variant)
        << "\n# affine_only: " << (r.affine_only ? "true" : "false") << "\n# supersingular_expected: "
        << r.supersingular_expected << "\nm,field,N_m,supersingular\n";
    for (const auto& e : r.extensions) {
        out << e.m << "," << csv_quote(e.field) << "," << e.affine_count << ",";
        if (e.m == 1) out << r.supersingular;
        out << "\n";
    }
    return out.str();
}

}  // namespace dtower
