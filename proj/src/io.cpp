#include "maslov/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace maslov {

namespace {

std::string format_double(double v) {
    if (!std::isfinite(v))
        return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    // Keep doubles recognisable as floating point after a round trip.
    if (s.find_first_of(".eEn") == std::string::npos)
        s += ".0";
    return s;
}

void emit(const Json& j, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first)
                out += ",\n";
            first = false;
            out += pad + Json(key).dump() + ": ";
            emit(value, out, depth + 1);
        }
        out += "\n" + close_pad + "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // Numeric arrays stay on one line so sample matrices remain readable.
        const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
        out += flat ? "[" : "[\n";
        bool first = true;
        for (const auto& e : j) {
            if (!first)
                out += flat ? ", " : ",\n";
            first = false;
            if (!flat)
                out += pad;
            emit(e, out, depth + 1);
        }
        out += flat ? "]" : "\n" + close_pad + "]";
        return;
    }
    case Json::value_t::number_float:
        out += format_double(j.get<double>());
        return;
    default:
        out += j.dump();
        return;
    }
}

[[noreturn]] void schema_error(const std::string& what) {
    throw Error(ErrorCode::InvalidArgument, "path file: " + what);
}

double number_at(const Json& j, const char* what) {
    if (!j.is_number())
        schema_error(std::string(what) + " must be a number");
    return j.get<double>();
}

} // namespace

std::string to_canonical_json(const Json& j) {
    std::string out;
    emit(j, out, 0);
    out += "\n";
    return out;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, path.string() + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text, std::ostream& stdout_stream) {
    if (path == "-") {
        stdout_stream << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out << text;
}

Json path_to_json(const CoverElement& g) {
    Json j;
    j["n"] = g.n();
    j["times"] = g.times();
    Json samples = Json::array();
    for (const auto& s : g.samples())
        samples.push_back(std::vector<double>(s.data().begin(), s.data().end()));
    j["samples"] = std::move(samples);
    Json meta;
    meta["generator"] = g.meta().generator ? Json(*g.meta().generator) : Json(nullptr);
    meta["expected_angle"] = g.meta().expected_angle ? Json(*g.meta().expected_angle) : Json(nullptr);
    j["meta"] = std::move(meta);
    return j;
}

CoverElement path_from_json(const Json& j) {
    if (!j.is_object())
        schema_error("top level must be an object");
    for (const char* key : {"n", "times", "samples"})
        if (!j.contains(key))
            schema_error(std::string("missing \"") + key + "\"");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
        schema_error("n must be a positive integer");
    if (!j["times"].is_array() || !j["samples"].is_array())
        schema_error("times and samples must be arrays");

    SpPath path;
    path.n = j["n"].get<std::size_t>();
    const std::size_t dim = 2 * path.n;
    for (const auto& t : j["times"])
        path.times.push_back(number_at(t, "times entry"));
    for (const auto& s : j["samples"]) {
        if (!s.is_array() || s.size() != dim * dim)
            schema_error("each sample must hold (2n)^2 numbers");
        RealMatrix m(dim);
        for (std::size_t k = 0; k < dim * dim; ++k)
            m.data()[k] = number_at(s[k], "sample entry");
        path.samples.push_back(std::move(m));
    }

    PathMeta meta;
    if (j.contains("meta")) {
        const Json& mj = j["meta"];
        if (!mj.is_object())
            schema_error("meta must be an object");
        if (mj.contains("generator") && !mj["generator"].is_null()) {
            if (!mj["generator"].is_string())
                schema_error("meta.generator must be a string or null");
            meta.generator = mj["generator"].get<std::string>();
        }
        if (mj.contains("expected_angle") && !mj["expected_angle"].is_null())
            meta.expected_angle = number_at(mj["expected_angle"], "meta.expected_angle");
    }
    return CoverElement::make(std::move(path), std::move(meta));
}

Json mu_to_json(const MuValue& v) {
    Json j;
    j["value"] = v.value;
    j["m_used"] = v.m_used;
    j["err_bound"] = v.err_bound;
    j["converged"] = v.converged;
    return j;
}

Json record_to_json(const PropertyRecord& r) {
    Json j;
    j["name"] = r.name;
    j["samples"] = r.samples;
    j["max_violation"] = r.max_violation;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    return j;
}

Json corpus_to_json(const CorpusConfig& c) {
    Json j;
    j["n"] = c.n;
    j["seed"] = c.seed;
    j["scale"] = c.scale;
    j["steps"] = c.steps;
    j["kind"] = std::string(to_string(c.kind));
    return j;
}

Json defect_to_json(const CorpusConfig& c, const DefectScan& scan) {
    Json j;
    j["corpus"] = corpus_to_json(c);
    j["count"] = scan.samples.size();
    j["max_defect"] = scan.max_defect;
    j["max_mu_defect"] = scan.max_mu_defect ? Json(*scan.max_mu_defect) : Json(nullptr);
    Json samples = Json::array();
    for (const auto& s : scan.samples) {
        Json e;
        e["g_seed"] = s.g_seed;
        e["h_seed"] = s.h_seed;
        e["defect"] = s.defect;
        e["mu_defect"] = s.mu_defect ? Json(*s.mu_defect) : Json(nullptr);
        samples.push_back(std::move(e));
    }
    j["samples"] = std::move(samples);
    return j;
}

std::string defect_to_csv(const DefectScan& scan) {
    std::ostringstream out;
    out << "g_seed,h_seed,defect,mu_defect\n";
    for (const auto& s : scan.samples) {
        out << s.g_seed << ',' << s.h_seed << ',' << format_double(s.defect) << ',';
        if (s.mu_defect)
            out << format_double(*s.mu_defect);
        out << '\n';
    }
    return out.str();
}

} // namespace maslov
