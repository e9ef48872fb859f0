#include "kerr/emit.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "kerr/errors.hpp"

namespace kerr {

EmitFormat format_from_string(const std::string& s) {
    if (s == "csv") return EmitFormat::Csv;
    if (s == "json") return EmitFormat::Json;
    throw ValidationError("unknown output format '" + s + "' (expected csv or json)");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

using ordered_json = nlohmann::ordered_json;

const char* norm_name(Normalization n) {
    return n == Normalization::PeakUnit ? "peak_unit" : "raw";
}

void emit_profile_csv(const Profile& p, std::ostream& os) {
    os << "x";
    for (Stage s : p.stages) os << ',' << stage_column(s);
    os << '\n';
    for (size_t i = 0; i < p.x.size(); ++i) {
        os << format_double(p.x[i]);
        for (Stage s : p.stages) os << ',' << format_double(p.values.at(s)[i]);
        os << '\n';
    }
}

void emit_profile_json(const Profile& p, std::ostream& os) {
    ordered_json j;
    j["scenario"] = p.scenario;
    j["label"] = p.label;
    j["normalization"] = norm_name(p.normalization);
    ordered_json peaks = ordered_json::object();
    for (Stage s : p.stages) peaks[stage_column(s)] = p.raw_peak.at(s);
    j["raw_peak"] = peaks;
    j["x"] = p.x;
    ordered_json vals = ordered_json::object();
    for (Stage s : p.stages) vals[stage_column(s)] = p.values.at(s);
    j["values"] = vals;
    os << j.dump(2) << '\n';
}

void emit_peaks_csv(const PeakSet& p, std::ostream& os) {
    os << "radius,height,fwhm\n";
    for (const Peak& pk : p.peaks)
        os << format_double(pk.radius) << ',' << format_double(pk.height) << ','
           << format_double(pk.fwhm) << '\n';
}

void emit_peaks_json(const PeakSet& p, std::ostream& os) {
    ordered_json arr = ordered_json::array();
    for (const Peak& pk : p.peaks) {
        ordered_json j;
        j["radius"] = pk.radius;
        j["height"] = pk.height;
        j["fwhm"] = pk.fwhm;
        arr.push_back(j);
    }
    ordered_json root;
    root["peaks"] = arr;
    os << root.dump(2) << '\n';
}

void emit_report_csv(const DiscrepancyReport& r, std::ostream& os) {
    os << "record,stage_a,stage_b,value\n";
    for (const StagePairDeviation& d : r.pairs)
        os << "pair_max_dev," << stage_column(d.a) << ',' << stage_column(d.b)
           << ',' << format_double(d.max_dev) << '\n';
    static const Stage all[4] = {Stage::S1, Stage::S2, Stage::S3Printed,
                                 Stage::S3Reduced};
    for (int i = 0; i < 4; ++i)
        os << "argmax_x," << stage_column(all[i]) << ",,"
           << format_double(r.argmax_x[i]) << '\n';
    os << "printed_R0sq,,," << format_double(r.printed_R0sq) << '\n';
    os << "reduced_peak_x2,,," << format_double(r.reduced_peak_x2) << '\n';
    os << "argmax_disagrees," << stage_column(Stage::S3Printed) << ','
       << stage_column(Stage::S3Reduced) << ',' << (r.argmax_disagrees ? 1 : 0)
       << '\n';
}

void emit_report_json(const DiscrepancyReport& r, std::ostream& os) {
    ordered_json root;
    ordered_json pairs = ordered_json::array();
    for (const StagePairDeviation& d : r.pairs) {
        ordered_json j;
        j["stage_a"] = stage_column(d.a);
        j["stage_b"] = stage_column(d.b);
        j["max_dev"] = d.max_dev;
        pairs.push_back(j);
    }
    root["pair_max_dev"] = pairs;
    ordered_json am = ordered_json::object();
    static const Stage all[4] = {Stage::S1, Stage::S2, Stage::S3Printed,
                                 Stage::S3Reduced};
    for (int i = 0; i < 4; ++i) am[stage_column(all[i])] = r.argmax_x[i];
    root["argmax_x"] = am;
    root["printed_R0sq"] = r.printed_R0sq;
    root["reduced_peak_x2"] = r.reduced_peak_x2;
    root["argmax_disagrees"] = r.argmax_disagrees;
    root["grid_points"] = r.grid.size();
    os << root.dump(2) << '\n';
}

template <typename T>
void write_file(const T& obj, const std::string& path, EmitFormat fmt) {
    const std::filesystem::path fp(path);
    if (fp.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(fp.parent_path(), ec);
        if (ec)
            throw ValidationError("emit_file: cannot create directory '" +
                                  fp.parent_path().string() + "': " + ec.message());
    }
    std::ofstream out(fp, std::ios::binary);
    if (!out) throw ValidationError("emit_file: cannot open '" + path + "'");
    emit(obj, out, fmt);
    out.flush();
    if (!out) throw NumericalError("emit_file: write failed for '" + path + "'");
}

}  // namespace

void emit(const Profile& p, std::ostream& os, EmitFormat fmt) {
    if (fmt == EmitFormat::Csv)
        emit_profile_csv(p, os);
    else
        emit_profile_json(p, os);
}

void emit(const PeakSet& p, std::ostream& os, EmitFormat fmt) {
    if (fmt == EmitFormat::Csv)
        emit_peaks_csv(p, os);
    else
        emit_peaks_json(p, os);
}

void emit(const DiscrepancyReport& r, std::ostream& os, EmitFormat fmt) {
    if (fmt == EmitFormat::Csv)
        emit_report_csv(r, os);
    else
        emit_report_json(r, os);
}

void emit_file(const Profile& p, const std::string& path, EmitFormat fmt) {
    write_file(p, path, fmt);
}

void emit_file(const PeakSet& p, const std::string& path, EmitFormat fmt) {
    write_file(p, path, fmt);
}

void emit_file(const DiscrepancyReport& r, const std::string& path, EmitFormat fmt) {
    write_file(r, path, fmt);
}

}  // namespace kerr
