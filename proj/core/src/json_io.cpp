#include "deformkernel/json_io.hpp"

#include <sstream>

#include "deformkernel/errors.hpp"

namespace dk {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw DomainError("complex values serialize as [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Json cvec_to_json(const CVec& v) {
    Json out = Json::array();
    for (const Complex& z : v) out.push_back(complex_to_json(z));
    return out;
}

CVec cvec_from_json(const Json& j) {
    CVec out;
    for (const auto& e : j) out.push_back(complex_from_json(e));
    return out;
}

Json surface_time_to_json(const SurfaceTime& t) {
    return Json{{"r", t.r}, {"theta", t.theta}};
}

SurfaceTime surface_time_from_json(const Json& j) {
    return SurfaceTime(j.at("r").get<double>(), j.at("theta").get<double>());
}

Json potential_to_json(const PotentialMeasure& m) {
    if (m.kind == MeasureKind::Discrete) {
        Json atoms = Json::array();
        for (const Atom& a : m.atoms)
            atoms.push_back(
                Json{{"weight", complex_to_json(a.weight)}, {"xi", cvec_to_json(a.xi)}});
        return Json{{"kind", "discrete"}, {"epsilon", m.epsilon}, {"atoms", atoms}};
    }
    return Json{{"kind", "gaussian"},
                {"epsilon", m.epsilon},
                {"gamma", m.gamma},
                {"nu", m.nu},
                {"alpha", m.alpha}};
}

PotentialMeasure potential_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const double epsilon = j.value("epsilon", 0.0);
    if (kind == "discrete") {
        std::vector<Atom> atoms;
        for (const auto& a : j.at("atoms"))
            atoms.push_back(
                Atom{complex_from_json(a.at("weight")), cvec_from_json(a.at("xi"))});
        return PotentialMeasure::discrete(std::move(atoms), epsilon);
    }
    if (kind == "gaussian") {
        return PotentialMeasure::gaussian(j.at("gamma").get<double>(),
                                          j.at("nu").get<int>(), epsilon,
                                          j.value("alpha", kPi / 8.0));
    }
    throw DomainError("potential kind must be \"discrete\" or \"gaussian\"");
}

Json coefficient_series_to_json(const CoefficientSeries& s, const CVec& x,
                                const CVec& y) {
    Json coeffs = Json::array();
    for (const Complex& c : s.coefficients) coeffs.push_back(complex_to_json(c));
    return Json{{"schema", 1},
                {"x", cvec_to_json(x)},
                {"y", cvec_to_json(y)},
                {"coefficients", coeffs},
                {"exact", s.exact}};
}

CoefficientSeries coefficient_series_from_json(const Json& j) {
    CoefficientSeries s;
    for (const auto& e : j.at("coefficients")) s.coefficients.push_back(complex_from_json(e));
    s.exact = j.value("exact", false);
    return s;
}

namespace {

std::vector<double> split_doubles(const std::string& text, char sep) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos])))
            ++pos;
        if (pos != item.size()) throw DomainError("malformed number: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

Complex parse_complex(const std::string& text) {
    const auto parts = split_doubles(text, ',');
    if (parts.size() == 1) return Complex(parts[0], 0.0);
    if (parts.size() == 2) return Complex(parts[0], parts[1]);
    throw DomainError("complex scalars are written re,im (or a bare real)");
}

SurfaceTime parse_surface_time(const std::string& text) {
    const auto parts = split_doubles(text, ',');
    if (parts.size() == 1) return SurfaceTime(parts[0], 0.0);
    if (parts.size() == 2) return SurfaceTime(parts[0], parts[1]);
    throw DomainError("surface times are written r,theta");
}

CVec parse_cvec(const std::string& text) {
    CVec out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        out.push_back(parse_complex(item));
    }
    if (out.empty()) throw DomainError("empty complex vector");
    return out;
}

}  // namespace dk
