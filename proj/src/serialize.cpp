#include "latflow/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace latflow {

using nlohmann::json;

namespace {

// Wraps json access so malformed input surfaces as std::invalid_argument.
template <typename F>
auto parsed(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string(what) + ": " + e.what());
    }
}

double finite_number(const json& j, const char* field) {
    if (!j.is_number()) throw std::invalid_argument(std::string(field) + " must be a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(field) + " must be finite");
    return x;
}

std::vector<double> number_list(const json& j, const char* field) {
    if (!j.is_array()) throw std::invalid_argument(std::string(field) + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const json& e : j) out.push_back(finite_number(e, field));
    return out;
}

json vec2_to_json(const Vec2& v) { return json::array({v.x, v.y}); }

Vec2 vec2_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("vertex must be [x, y]");
    return Vec2{finite_number(j[0], "vertex x"), finite_number(j[1], "vertex y")};
}

SeriesClass class_from_name(const std::string& name) {
    if (name == "convergent") return SeriesClass::Convergent;
    if (name == "divergent") return SeriesClass::Divergent;
    if (name == "unknown") return SeriesClass::Unknown;
    throw std::invalid_argument("unknown series classification: " + name);
}

}  // namespace

std::string csv_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

json norm_to_json(const NormDescriptor& norm) {
    json j;
    switch (norm.kind) {
        case NormKind::Sup:
            j["kind"] = "sup";
            j["dim"] = norm.dim;
            break;
        case NormKind::Euclidean:
            j["kind"] = "euclidean";
            j["dim"] = norm.dim;
            break;
        case NormKind::Lp:
            j["kind"] = "lp";
            j["p"] = norm.p;
            break;
        case NormKind::Polygon: {
            j["kind"] = "polygon";
            std::vector<Vec2> half;
            for (const Vec2& v : norm.vertices) {
                const double a = v.angle();
                if (a >= 0.0 && a < 3.14159265358979323846) half.push_back(v);
            }
            std::sort(half.begin(), half.end(),
                      [](const Vec2& a, const Vec2& b) { return a.angle() < b.angle(); });
            json verts = json::array();
            for (const Vec2& v : half) verts.push_back(vec2_to_json(v));
            j["vertices"] = std::move(verts);
            break;
        }
        case NormKind::Radial:
            j["kind"] = "radial";
            j["angles"] = norm.radial_input.angles;
            j["radii"] = norm.radial_input.radii;
            break;
    }
    return j;
}

NormDescriptor norm_from_json(const json& j) {
    return parsed("norm descriptor", [&] {
        if (!j.is_object()) throw std::invalid_argument("norm descriptor must be a JSON object");
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "sup") return NormDescriptor::sup(j.value("dim", 2));
        if (kind == "euclidean") return NormDescriptor::euclidean(j.value("dim", 2));
        if (kind == "lp") return NormDescriptor::lp(finite_number(j.at("p"), "p"));
        if (kind == "polygon") {
            const json& vj = j.at("vertices");
            if (!vj.is_array()) throw std::invalid_argument("vertices must be an array");
            std::vector<Vec2> half;
            half.reserve(vj.size());
            for (const json& e : vj) half.push_back(vec2_from_json(e));
            return NormDescriptor::polygon(half);
        }
        if (kind == "radial") {
            RadialSamples s;
            s.angles = number_list(j.at("angles"), "angles");
            s.radii = number_list(j.at("radii"), "radii");
            return NormDescriptor::radial(s);
        }
        throw std::invalid_argument("unknown norm kind: " + kind);
    });
}

NormDescriptor norm_from_text(const std::string& inline_json_or_path) {
    std::string text = inline_json_or_path;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw std::invalid_argument("empty norm descriptor");
    if (text[first] != '{') {
        std::ifstream in(inline_json_or_path);
        if (!in) throw std::invalid_argument("cannot open norm file: " + inline_json_or_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("norm descriptor is not valid JSON");
    return norm_from_json(j);
}

json basis_to_json(const MatN& basis) {
    json rows = json::array();
    for (int i = 0; i < basis.dim; ++i) {
        json row = json::array();
        for (int k = 0; k < basis.dim; ++k) row.push_back(basis.at(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

MatN basis_from_json(const json& j) {
    return parsed("basis", [&] {
        if (!j.is_array() || j.size() < 2 || j.size() > 4)
            throw std::invalid_argument("basis must be a square array of 2 to 4 rows");
        const int dim = static_cast<int>(j.size());
        MatN g;
        g.dim = dim;
        for (int i = 0; i < dim; ++i) {
            const json& row = j[i];
            if (!row.is_array() || static_cast<int>(row.size()) != dim)
                throw std::invalid_argument("basis rows must all have length equal to the dimension");
            for (int k = 0; k < dim; ++k) g.at(i, k) = finite_number(row[k], "basis entry");
        }
        return g;
    });
}

json psi_to_json(const PsiSpec& psi) {
    json j;
    switch (psi.family) {
        case PsiFamily::Scaled:
            j["family"] = "scaled";
            j["param"] = psi.param;
            break;
        case PsiFamily::PowerGap:
            j["family"] = "powergap";
            j["param"] = psi.param;
            break;
        case PsiFamily::LogGap:
            j["family"] = "loggap";
            j["param"] = psi.param;
            break;
        case PsiFamily::Tabulated:
            j["family"] = "tabulated";
            j["ts"] = psi.ts;
            j["values"] = psi.values;
            break;
    }
    j["m"] = psi.m;
    j["n"] = psi.n;
    j["t_start"] = psi.t_start;
    return j;
}

PsiSpec psi_from_json(const json& j) {
    return parsed("psi spec", [&] {
        if (!j.is_object()) throw std::invalid_argument("psi spec must be a JSON object");
        const std::string family = j.at("family").get<std::string>();
        const int m = j.value("m", 1);
        const int n = j.value("n", 1);
        PsiSpec psi;
        if (family == "scaled")
            psi = PsiSpec::scaled(finite_number(j.at("param"), "param"), m, n);
        else if (family == "powergap")
            psi = PsiSpec::power_gap(finite_number(j.at("param"), "param"), m, n);
        else if (family == "loggap")
            psi = PsiSpec::log_gap(finite_number(j.at("param"), "param"), m, n);
        else if (family == "tabulated")
            psi = PsiSpec::tabulated(number_list(j.at("ts"), "ts"),
                                     number_list(j.at("values"), "values"), m, n);
        else
            throw std::invalid_argument("unknown psi family: " + family);
        if (j.contains("t_start") && psi.family != PsiFamily::Tabulated) {
            const double t0 = finite_number(j.at("t_start"), "t_start");
            if (t0 < psi.t_start)
                throw std::invalid_argument("t_start below the family minimum");
            psi.t_start = t0;
        }
        return psi;
    });
}

std::optional<double> CheckReport::last_hit() const {
    if (hits.empty()) return std::nullopt;
    double last = hits.front().s_hi;
    for (const HitRecord& h : hits) last = std::max(last, h.s_hi);
    return last;
}

bool CheckReport::dirichlet_up_to_smax() const {
    const auto last = last_hit();
    return !last || *last < s_max;
}

json check_to_json(const CheckReport& report) {
    json hits = json::array();
    for (const HitRecord& h : report.hits)
        hits.push_back({{"s_lo", h.s_lo}, {"s_hi", h.s_hi}, {"delta_max", h.delta_max}});
    json j{{"alpha", report.alpha},
           {"psi", psi_to_json(report.psi)},
           {"s_max", report.s_max},
           {"hits", std::move(hits)},
           {"dirichlet_up_to_S", report.dirichlet_up_to_smax()}};
    const auto last = report.last_hit();
    if (last)
        j["last_hit"] = *last;
    else
        j["last_hit"] = nullptr;
    return j;
}

CheckReport check_from_json(const json& j) {
    return parsed("check report", [&] {
        CheckReport r;
        r.alpha = finite_number(j.at("alpha"), "alpha");
        r.psi = psi_from_json(j.at("psi"));
        r.s_max = finite_number(j.at("s_max"), "s_max");
        for (const json& h : j.at("hits")) {
            HitRecord rec;
            rec.s_lo = finite_number(h.at("s_lo"), "s_lo");
            rec.s_hi = finite_number(h.at("s_hi"), "s_hi");
            rec.delta_max = finite_number(h.at("delta_max"), "delta_max");
            r.hits.push_back(rec);
        }
        return r;
    });
}

json certificate_to_json(const CounterexampleCertificate& cert) {
    json stages = json::array();
    for (const CounterexampleStage& st : cert.stages) {
        stages.push_back({{"gamma", {st.gamma[0], st.gamma[1], st.gamma[2], st.gamma[3]}},
                          {"s", st.s_k},
                          {"interval_lo", st.interval_lo},
                          {"interval_hi", st.interval_hi},
                          {"interval_lo_bits", bits_to_hex(st.interval_lo_bits)},
                          {"interval_hi_bits", bits_to_hex(st.interval_hi_bits)},
                          {"achieved_delta", st.achieved_delta},
                          {"r_required", st.r_required}});
    }
    return json{{"alpha", cert.alpha},
                {"alpha_bits", bits_to_hex(cert.alpha_bits)},
                {"depth", cert.depth},
                {"psi", psi_to_json(cert.psi)},
                {"interval_lo", cert.interval_lo},
                {"interval_hi", cert.interval_hi},
                {"complete", cert.complete},
                {"stages", std::move(stages)}};
}

CounterexampleCertificate certificate_from_json(const json& j) {
    return parsed("certificate", [&] {
        CounterexampleCertificate cert;
        cert.alpha = finite_number(j.at("alpha"), "alpha");
        cert.alpha_bits = hex_to_bits(j.at("alpha_bits").get<std::string>());
        cert.depth = j.at("depth").get<int>();
        cert.psi = psi_from_json(j.at("psi"));
        cert.interval_lo = finite_number(j.at("interval_lo"), "interval_lo");
        cert.interval_hi = finite_number(j.at("interval_hi"), "interval_hi");
        cert.complete = j.at("complete").get<bool>();
        for (const json& sj : j.at("stages")) {
            CounterexampleStage st;
            const json& g = sj.at("gamma");
            if (!g.is_array() || g.size() != 4)
                throw std::invalid_argument("stage gamma must have 4 integer entries");
            for (int i = 0; i < 4; ++i) st.gamma[i] = g[i].get<long long>();
            st.s_k = finite_number(sj.at("s"), "s");
            st.interval_lo = finite_number(sj.at("interval_lo"), "interval_lo");
            st.interval_hi = finite_number(sj.at("interval_hi"), "interval_hi");
            st.interval_lo_bits = hex_to_bits(sj.at("interval_lo_bits").get<std::string>());
            st.interval_hi_bits = hex_to_bits(sj.at("interval_hi_bits").get<std::string>());
            st.achieved_delta = finite_number(sj.at("achieved_delta"), "achieved_delta");
            st.r_required = finite_number(sj.at("r_required"), "r_required");
            cert.stages.push_back(st);
        }
        return cert;
    });
}

json zeroone_to_json(const ZeroOneReport& report) {
    json windows = json::array();
    for (const ZeroOneWindow& w : report.windows)
        windows.push_back({{"s_lo", w.s_lo},
                           {"s_hi", w.s_hi},
                           {"hits", w.hits},
                           {"hit_fraction", w.hit_fraction}});
    return json{{"psi", psi_to_json(report.psi)},
                {"n_samples", report.n_samples},
                {"seed", report.seed},
                {"classification", series_class_name(report.classification)},
                {"windows", std::move(windows)}};
}

ZeroOneReport zeroone_from_json(const json& j) {
    return parsed("zero-one report", [&] {
        ZeroOneReport r;
        r.psi = psi_from_json(j.at("psi"));
        r.n_samples = j.at("n_samples").get<int>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.classification = class_from_name(j.at("classification").get<std::string>());
        for (const json& wj : j.at("windows")) {
            ZeroOneWindow w;
            w.s_lo = finite_number(wj.at("s_lo"), "s_lo");
            w.s_hi = finite_number(wj.at("s_hi"), "s_hi");
            w.hits = wj.at("hits").get<int>();
            w.hit_fraction = finite_number(wj.at("hit_fraction"), "hit_fraction");
            r.windows.push_back(w);
        }
        return r;
    });
}

std::string zeroone_to_csv(const ZeroOneReport& report) {
    std::ostringstream out;
    out << "window_lo,window_hi,hit_fraction,n,psi_id,classification\n";
    const std::string psi_id = psi_to_string(report.psi);
    const std::string cls = series_class_name(report.classification);
    for (const ZeroOneWindow& w : report.windows)
        out << csv_double(w.s_lo) << ',' << csv_double(w.s_hi) << ','
            << csv_double(w.hit_fraction) << ',' << report.n_samples << ',' << psi_id << ','
            << cls << '\n';
    return out.str();
}

std::string condition_table_to_csv(const std::vector<ConditionRow>& rows) {
    std::ostringstream out;
    out << "psi_id,K,euclidean_sum,supnorm_sum,classification\n";
    for (const ConditionRow& row : rows)
        out << psi_to_string(row.psi) << ',' << row.K << ',' << csv_double(row.sums.euclidean_sum)
            << ',' << csv_double(row.sums.supnorm_sum) << ','
            << series_class_name(row.classification) << '\n';
    return out.str();
}

std::string locus_to_csv(const std::vector<LocusPoint>& points) {
    std::ostringstream out;
    out << "t0,px,py,qx,qy,det,is_critical\n";
    for (const LocusPoint& pt : points)
        out << csv_double(pt.config.t0) << ',' << csv_double(pt.config.p.x) << ','
            << csv_double(pt.config.p.y) << ',' << csv_double(pt.config.q.x) << ','
            << csv_double(pt.config.q.y) << ',' << csv_double(pt.config.det) << ','
            << (pt.is_critical ? 1 : 0) << '\n';
    return out.str();
}

}  // namespace latflow
