#include "tabor/scenario_io.hpp"

#include <fstream>
#include <sstream>

namespace tabor {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ScenarioError("scenario: " + what); }

Int int_from_string(const std::string& s) {
    if (s.empty()) bad("empty integer string");
    try {
        return Int(s);
    } catch (const std::exception&) {
        bad("invalid integer string '" + s + "'");
    }
}

Box box_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) bad("domain must be a nonempty array of [lo,hi] pairs");
    Box b;
    for (const auto& axis : j) {
        if (!axis.is_array() || axis.size() != 2) bad("domain axis must be [lo,hi]");
        Rational lo = rational_from_json(axis[0]);
        Rational hi = rational_from_json(axis[1]);
        if (hi < lo) bad("domain axis with hi < lo");
        b.bounds.emplace_back(std::move(lo), std::move(hi));
    }
    return b;
}

Json box_to_json(const Box& b) {
    Json j = Json::array();
    for (const auto& [lo, hi] : b.bounds)
        j.push_back(Json::array({rational_to_json(lo), rational_to_json(hi)}));
    return j;
}

NormKind norm_from_string(const std::string& s) {
    if (s == "euclidean") return NormKind::Euclidean;
    if (s == "l1") return NormKind::L1;
    if (s == "linf") return NormKind::Linf;
    bad("unknown norm '" + s + "'");
}

const char* norm_to_string(NormKind n) {
    switch (n) {
        case NormKind::Euclidean: return "euclidean";
        case NormKind::L1: return "l1";
        case NormKind::Linf: return "linf";
    }
    return "?";
}

PhiSpec phi_from_json(const Json& j) {
    std::string form = j.value("form", "power");
    if (form == "power") {
        if (!j.contains("c") || !j.contains("alpha")) bad("power phi needs c and alpha");
        double alpha = j.at("alpha").get<double>();
        NormKind norm = norm_from_string(j.value("norm", "euclidean"));
        return PhiSpec::power(rational_from_json(j.at("c")), alpha, norm);
    }
    if (form == "table") {
        std::vector<double> values = j.at("values").get<std::vector<double>>();
        return PhiSpec::table(std::move(values), j.at("decay_start").get<std::size_t>(),
                              j.at("decay_ratio").get<double>());
    }
    bad("unknown phi form '" + form + "'");
}

Json phi_to_json(const PhiSpec& p) {
    Json j;
    if (p.form == PhiSpec::Form::Power) {
        j["form"] = "power";
        j["c"] = rational_to_json(p.c);
        j["alpha"] = p.alpha;
        j["norm"] = norm_to_string(p.norm);
    } else {
        j["form"] = "table";
        j["values"] = p.values;
        j["decay_start"] = p.decay_start;
        j["decay_ratio"] = p.decay_ratio;
    }
    return j;
}

PiecewisePoly poly_from_json(const Json& j) {
    PiecewisePoly f;
    if (!j.contains("pieces") || !j.at("pieces").is_array() || j.at("pieces").empty())
        bad("piecewise polynomial needs pieces");
    for (const auto& pj : j.at("pieces")) {
        PiecewisePoly::Piece piece;
        piece.lo = rational_from_json(pj.at("lo"));
        piece.hi = rational_from_json(pj.at("hi"));
        for (const auto& c : pj.at("coeffs")) piece.coeffs.push_back(rational_from_json(c));
        f.pieces.push_back(std::move(piece));
    }
    return f;
}

Json poly_to_json(const PiecewisePoly& f) {
    Json pieces = Json::array();
    for (const auto& p : f.pieces) {
        Json pj;
        pj["lo"] = rational_to_json(p.lo);
        pj["hi"] = rational_to_json(p.hi);
        Json coeffs = Json::array();
        for (const auto& c : p.coeffs) coeffs.push_back(rational_to_json(c));
        pj["coeffs"] = coeffs;
        pieces.push_back(pj);
    }
    Json j;
    j["pieces"] = pieces;
    return j;
}

}  // namespace

Json rational_to_json(const Rational& r) {
    return Json::array({r.num().str(), r.den().str()});
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) return Rational::from_double(j.get<double>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(int_from_string(s));
        return Rational(int_from_string(s.substr(0, slash)),
                        int_from_string(s.substr(slash + 1)));
    }
    if (j.is_array() && j.size() == 2) {
        Int num = j[0].is_string() ? int_from_string(j[0].get<std::string>())
                                   : Int(j[0].get<long long>());
        Int den = j[1].is_string() ? int_from_string(j[1].get<std::string>())
                                   : Int(j[1].get<long long>());
        if (den == 0) bad("rational with zero denominator");
        return Rational(num, den);
    }
    bad("expected a rational ([num,den], \"num/den\", or integer)");
}

Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos)
        return Rational(int_from_string(s.substr(0, slash)),
                        int_from_string(s.substr(slash + 1)));
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t places = s.size() - dot - 1;
        Int den = 1;
        for (std::size_t i = 0; i < places; ++i) den *= 10;
        return Rational(int_from_string(digits), den);
    }
    return Rational(int_from_string(s));
}

Json vec_to_json(const RatVec& v) {
    Json j = Json::array();
    for (const auto& c : v) j.push_back(rational_to_json(c));
    return j;
}

RatVec vec_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) bad("vector must be a nonempty array");
    RatVec v;
    for (const auto& c : j) v.push_back(rational_from_json(c));
    return v;
}

namespace {

/// Accepts both a single coordinate pair (1-D shorthand) and an
/// array of coordinates.
RatVec point_from_json(const Json& j, int dim) {
    if (dim == 1 && j.is_array() && j.size() == 2 &&
        (j[0].is_string() || j[0].is_number_integer()) &&
        (j[1].is_string() || j[1].is_number_integer()))
        return {rational_from_json(j)};
    RatVec v = vec_from_json(j);
    if (static_cast<int>(v.size()) != dim) bad("vector dimension mismatch");
    return v;
}

}  // namespace

Json generator_set_to_json(const GeneratorSet& g) {
    Json j;
    j["dim"] = g.dim;
    Json pts = Json::array();
    for (const auto& p : g.points) pts.push_back(vec_to_json(p));
    j["points"] = pts;
    Json rays = Json::array();
    for (const auto& r : g.rays) rays.push_back(vec_to_json(r));
    j["rays"] = rays;
    return j;
}

GeneratorSet generator_set_from_json(const Json& j) {
    if (!j.contains("dim") || !j.contains("points")) bad("generator set needs dim and points");
    int dim = j.at("dim").get<int>();
    std::vector<RatVec> points, rays;
    for (const auto& p : j.at("points")) points.push_back(point_from_json(p, dim));
    if (j.contains("rays"))
        for (const auto& r : j.at("rays")) rays.push_back(point_from_json(r, dim));
    try {
        return GeneratorSet(dim, std::move(points), std::move(rays));
    } catch (const std::invalid_argument& e) {
        bad(e.what());
    }
}

Json cone_to_json(const ConeSpec& k) {
    Json j;
    j["dim"] = k.dim;
    Json rays = Json::array();
    for (const auto& r : k.rays) rays.push_back(vec_to_json(r));
    j["rays"] = rays;
    return j;
}

ConeSpec cone_from_json(const Json& j) {
    if (!j.contains("dim")) bad("cone needs dim");
    int dim = j.at("dim").get<int>();
    std::vector<RatVec> rays;
    if (j.contains("rays"))
        for (const auto& r : j.at("rays")) rays.push_back(point_from_json(r, dim));
    try {
        return ConeSpec(dim, std::move(rays));
    } catch (const std::invalid_argument& e) {
        bad(e.what());
    }
}

Json family_to_json(const SetFamily& f) {
    Json j;
    switch (f.kind()) {
        case SetFamily::Kind::Epigraph1D:
            j["kind"] = "epigraph1d";
            j["f"] = poly_to_json(f.poly());
            j["ray_sign"] = f.ray_sign();
            break;
        case SetFamily::Kind::Template:
            j["kind"] = "template";
            j["phi"] = phi_to_json(f.phi());
            j["s0"] = generator_set_to_json(f.s0());
            j["k"] = cone_to_json(f.cone());
            break;
        case SetFamily::Kind::Constant:
            j["kind"] = "constant";
            j["set"] = generator_set_to_json(f.constant());
            break;
        case SetFamily::Kind::Singleton0:
            j["kind"] = "singleton0";
            j["value_dim"] = f.value_dim();
            break;
    }
    return j;
}

SetFamily family_from_json(const Json& j, const Box& domain) {
    std::string kind = j.value("kind", "");
    try {
        if (kind == "epigraph1d")
            return SetFamily::epigraph(poly_from_json(j.at("f")), domain, j.value("ray_sign", 1));
        if (kind == "template")
            return SetFamily::from_template(phi_from_json(j.at("phi")),
                                            generator_set_from_json(j.at("s0")),
                                            cone_from_json(j.at("k")), domain);
        if (kind == "constant")
            return SetFamily::constant_set(generator_set_from_json(j.at("set")), domain);
        if (kind == "singleton0")
            return SetFamily::singleton_zero(j.value("value_dim", 1), domain);
    } catch (const std::invalid_argument& e) {
        bad(e.what());
    }
    bad("unknown family kind '" + kind + "'");
}

Json scenario_to_json(const Scenario& sc) {
    Json j;
    j["name"] = sc.name;
    j["direction"] = sc.direction == Direction::Convex ? "convex" : "concave";
    j["domain"] = box_to_json(sc.domain);
    j["F"] = family_to_json(sc.F);
    j["A"] = family_to_json(sc.A);
    j["B"] = family_to_json(sc.B);
    j["K"] = cone_to_json(sc.K);
    Json pairs = Json::array();
    for (const auto& [x, y] : sc.sample_pairs)
        pairs.push_back(Json::array({vec_to_json(x), vec_to_json(y)}));
    j["sample_pairs"] = pairs;
    j["dyadic_depth"] = sc.dyadic_depth;
    Json ts = Json::array();
    for (const auto& t : sc.real_t_list) ts.push_back(rational_to_json(t));
    j["real_t_list"] = ts;
    Json tol;
    tol["series_tol"] = sc.tol.series_tol;
    tol["extension_tol"] = rational_to_json(sc.tol.extension_tol);
    tol["dyadic_approx_exponent"] = sc.tol.dyadic_approx_exponent;
    j["tolerances"] = tol;
    j["reading"] = sc.reading == CvnReading::TwoDzBothSides ? "cvn-b" : "cvn-a";
    if (!sc.checks.empty()) j["checks"] = sc.checks;
    return j;
}

Scenario scenario_from_json(const Json& j) {
    for (const char* key : {"domain", "F", "A", "B", "K"})
        if (!j.contains(key)) bad(std::string("missing required field '") + key + "'");

    Box domain = box_from_json(j.at("domain"));
    Box error_domain = domain.minus_self();
    SetFamily f = family_from_json(j.at("F"), domain);
    SetFamily a = family_from_json(j.at("A"), error_domain);
    SetFamily b = family_from_json(j.at("B"), error_domain);
    ConeSpec k = cone_from_json(j.at("K"));
    if (a.value_dim() != b.value_dim() || a.value_dim() != f.value_dim() ||
        k.dim != f.value_dim())
        bad("F, A, B, K must share one value dimension");

    Scenario sc(std::move(domain), std::move(f), std::move(a), std::move(b), std::move(k));
    sc.name = j.value("name", "scenario");
    std::string dir = j.value("direction", "convex");
    if (dir != "convex" && dir != "concave") bad("direction must be convex or concave");
    sc.direction = dir == "convex" ? Direction::Convex : Direction::Concave;

    if (j.contains("sample_pairs")) {
        for (const auto& pj : j.at("sample_pairs")) {
            if (!pj.is_array() || pj.size() != 2) bad("sample pair must be [x, y]");
            RatVec x = point_from_json(pj[0], sc.domain.dim());
            RatVec y = point_from_json(pj[1], sc.domain.dim());
            if (!sc.domain.contains(x) || !sc.domain.contains(y))
                bad("sample pair outside the domain");
            sc.sample_pairs.emplace_back(std::move(x), std::move(y));
        }
    }
    sc.dyadic_depth = j.value("dyadic_depth", 4u);
    if (sc.dyadic_depth > 16) bad("dyadic_depth too large (max 16)");
    if (j.contains("real_t_list"))
        for (const auto& t : j.at("real_t_list")) {
            Rational tr = rational_from_json(t);
            if (tr < Rational(0) || tr > Rational(1)) bad("real_t_list entries must be in [0,1]");
            sc.real_t_list.push_back(std::move(tr));
        }
    if (j.contains("tolerances")) {
        const Json& tol = j.at("tolerances");
        sc.tol.series_tol = tol.value("series_tol", 5e-11);
        if (tol.contains("extension_tol"))
            sc.tol.extension_tol = rational_from_json(tol.at("extension_tol"));
        sc.tol.dyadic_approx_exponent = tol.value("dyadic_approx_exponent", 24u);
    }
    std::string reading = j.value("reading", "cvn-b");
    if (reading != "cvn-a" && reading != "cvn-b") bad("reading must be cvn-a or cvn-b");
    sc.reading = reading == "cvn-b" ? CvnReading::TwoDzBothSides : CvnReading::PrintedHalfB;
    if (j.contains("checks")) {
        for (const auto& c : j.at("checks")) {
            std::string stage = c.get<std::string>();
            if (stage != "hypotheses" && stage != "induction" && stage != "conclusions" &&
                stage != "extensions" && stage != "mutations")
                bad("unknown check stage '" + stage + "'");
            sc.checks.push_back(std::move(stage));
        }
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ScenarioError(std::string("invalid JSON: ") + e.what());
    }
    return scenario_from_json(j);
}

Json report_to_json(const InclusionReport& rep) {
    Json j;
    j["check"] = rep.check_id;
    switch (rep.verdict) {
        case Verdict::Pass: j["verdict"] = "pass"; break;
        case Verdict::Fail: j["verdict"] = "fail"; break;
        case Verdict::Approximate: j["verdict"] = "approximate"; break;
    }
    j["margin"] = rep.margin ? Json(rep.margin->str()) : Json(nullptr);
    j["margin_real"] = rep.margin_real ? Json(*rep.margin_real) : Json(nullptr);
    j["exact"] = rep.exact;
    if (rep.witness) {
        Json w;
        w["generator"] = vec_to_json(rep.witness->generator);
        w["detail"] = rep.witness->detail;
        if (rep.witness->x) w["x"] = vec_to_json(*rep.witness->x);
        if (rep.witness->y) w["y"] = vec_to_json(*rep.witness->y);
        if (rep.witness->t) w["t"] = rep.witness->t->str();
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

std::string report_to_text(const InclusionReport& rep) {
    std::ostringstream os;
    const char* verdict = rep.verdict == Verdict::Pass
                              ? "PASS"
                              : (rep.verdict == Verdict::Fail ? "FAIL" : "APPROX");
    os << verdict << "  " << rep.check_id;
    if (rep.margin) os << "  margin=" << rep.margin->str();
    if (rep.margin_real) os << "  margin_real=" << *rep.margin_real;
    if (!rep.exact) os << "  [approximate arithmetic]";
    if (rep.witness) {
        os << "  witness(" << rep.witness->detail;
        if (rep.witness->t) os << " t=" << rep.witness->t->str();
        os << ")";
    }
    return os.str();
}

}  // namespace tabor
