#include "gdfractal/report.hpp"

#include <array>
#include <cstdint>
#include <cstring>

#include <json.hpp>

namespace gdfractal {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// compact SHA-256 (FIPS 180-4), enough for spec fingerprints
// ---------------------------------------------------------------------------

constexpr std::array<std::uint32_t, 64> kSha256K = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
    0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
    0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
    0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
    0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
    0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
    0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
    0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
    0xc67178f2};

inline std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

}  // namespace

std::string sha256_hex(std::string_view data) {
    std::array<std::uint32_t, 8> h = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                      0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    std::vector<std::uint8_t> msg(data.begin(), data.end());
    const std::uint64_t bitlen = std::uint64_t(msg.size()) * 8;
    msg.push_back(0x80);
    while (msg.size() % 64 != 56) msg.push_back(0);
    for (int i = 7; i >= 0; --i) msg.push_back(std::uint8_t(bitlen >> (8 * i)));

    for (size_t off = 0; off < msg.size(); off += 64) {
        std::array<std::uint32_t, 64> w{};
        for (int i = 0; i < 16; ++i)
            w[size_t(i)] = (std::uint32_t(msg[off + 4 * i]) << 24) |
                           (std::uint32_t(msg[off + 4 * i + 1]) << 16) |
                           (std::uint32_t(msg[off + 4 * i + 2]) << 8) |
                           std::uint32_t(msg[off + 4 * i + 3]);
        for (int i = 16; i < 64; ++i) {
            std::uint32_t s0 = rotr(w[size_t(i - 15)], 7) ^ rotr(w[size_t(i - 15)], 18) ^
                               (w[size_t(i - 15)] >> 3);
            std::uint32_t s1 = rotr(w[size_t(i - 2)], 17) ^ rotr(w[size_t(i - 2)], 19) ^
                               (w[size_t(i - 2)] >> 10);
            w[size_t(i)] = w[size_t(i - 16)] + s0 + w[size_t(i - 7)] + s1;
        }
        auto [a, b, c, d, e, f, g, hh] = h;
        for (int i = 0; i < 64; ++i) {
            std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            std::uint32_t ch = (e & f) ^ (~e & g);
            std::uint32_t t1 = hh + s1 + ch + kSha256K[size_t(i)] + w[size_t(i)];
            std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            std::uint32_t t2 = s0 + maj;
            hh = g;
            g = f;
            f = e;
            e = d + t1;
            d = c;
            c = b;
            b = a;
            a = t1 + t2;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
        h[5] += f;
        h[6] += g;
        h[7] += hh;
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (std::uint32_t v : h)
        for (int i = 7; i >= 0; --i) out += hex[(v >> (4 * i)) & 0xf];
    return out;
}

namespace {

json base_report(const char* command, const ProblemSpec& spec, const ReportMeta& meta) {
    json doc;
    doc["schema"] = "gdfractal-report/1";
    doc["command"] = command;
    doc["tool_version"] = meta.tool_version;
    doc["spec_sha256"] = sha256_hex(meta.spec_bytes);
    doc["spec"] = json::parse(serialize_spec(spec));
    if (meta.timing_seconds) doc["timing_seconds"] = *meta.timing_seconds;
    return doc;
}

json path_json(const Digraph& g, const Path& p) { return path_label(g, p); }

json separation_json(const ProblemSpec& spec, const SeparationReport& rep) {
    json out;
    out["status"] = separation_status_name(rep.status);
    out["used_enclosures"] = rep.used_enclosures;
    json gaps = json::object();
    json lambdas = json::object();
    for (size_t v = 0; v < rep.basic_gaps.size(); ++v) {
        json arr = json::array();
        for (const auto& gap : rep.basic_gaps[v]) {
            json jg;
            jg["length"] = gap.length.to_string();
            jg["left"] = gap.left.to_string();
            jg["right"] = gap.right.to_string();
            jg["sign"] = gap.sign == Sign::positive   ? "positive"
                         : gap.sign == Sign::zero     ? "zero"
                         : gap.sign == Sign::negative ? "negative"
                                                      : "indeterminate";
            arr.push_back(jg);
        }
        gaps[spec.vertices[v]] = arr;
        json lam = json::array();
        for (const auto& m : rep.positive_lengths[v]) lam.push_back(m.to_string());
        lambdas[spec.vertices[v]] = lam;
    }
    out["basic_gaps"] = gaps;
    out["positive_gap_lengths"] = lambdas;
    json overlaps = json::array();
    for (const auto& o : rep.overlaps) {
        json jo;
        jo["vertex"] = spec.vertices[size_t(o.vertex)];
        jo["index"] = o.index;
        jo["detail"] = o.detail;
        overlaps.push_back(jo);
    }
    out["overlaps"] = overlaps;
    out["notes"] = rep.notes;
    return out;
}

json system_json(const ProblemSpec& spec, const GdIfs& f) {
    json out;
    json maps = json::array();
    for (const auto& e : f.graph.edges()) {
        json jm;
        jm["edge"] = f.graph.edge_label(e.id);
        jm["from"] = spec.vertices[size_t(e.from)];
        jm["to"] = spec.vertices[size_t(e.to)];
        jm["ratio"] = f.maps[size_t(e.id)].ratio.to_string();
        jm["translation"] = f.maps[size_t(e.id)].translation.to_string();
        maps.push_back(jm);
    }
    out["maps"] = maps;
    json lengths = json::object();
    json anchors = json::object();
    json hulls = json::object();
    for (VertexId v = 0; v < f.graph.vertex_count(); ++v) {
        lengths[spec.vertices[size_t(v)]] = f.lengths[size_t(v)].to_string();
        json arr = json::array();
        for (const auto& b : f.anchors[size_t(v)]) arr.push_back(b.to_string());
        anchors[spec.vertices[size_t(v)]] = arr;
        hulls[spec.vertices[size_t(v)]] =
            json::array({f.hull(v).left.to_string(), f.hull(v).right.to_string()});
    }
    out["lengths"] = lengths;
    out["anchors"] = anchors;
    out["hulls"] = hulls;
    if (f.equal_gap_delta) out["equal_gap_delta"] = to_string(*f.equal_gap_delta);
    return out;
}

json check_json(const CheckRecord& rec) {
    json out;
    out["kind"] = rec.kind;
    out["description"] = rec.description;
    out["answer"] = rec.answer;
    if (!rec.base1.empty()) {
        json arr = json::array();
        for (const auto& m : rec.base1) arr.push_back(m.to_string());
        out["base1"] = arr;
    }
    if (!rec.base2.empty()) {
        json arr = json::array();
        for (const auto& m : rec.base2) arr.push_back(m.to_string());
        out["base2"] = arr;
    }
    if (rec.target) out["target"] = rec.target->to_string();
    if (rec.cone) out["cone"] = cone_name(*rec.cone);
    if (!rec.witness1.empty()) {
        json arr = json::array();
        for (const auto& w : rec.witness1) arr.push_back(to_string(w));
        out["witness1"] = arr;
    }
    if (!rec.witness2.empty()) {
        json arr = json::array();
        for (const auto& w : rec.witness2) arr.push_back(to_string(w));
        out["witness2"] = arr;
    }
    return out;
}

json verdict_json(const ProblemSpec& spec, const GdIfs& f, const Verdict& verdict) {
    json out;
    out["vertex"] = spec.vertices[size_t(verdict.vertex)];
    out["outcome"] = outcome_name(verdict.outcome);
    const Certificate& cert = verdict.certificate;
    json jc;
    jc["route"] = cert.route;
    jc["strongly_connected"] = cert.graph_strongly_connected;
    if (cert.circuit) jc["circuit"] = path_json(f.graph, *cert.circuit);
    if (cert.via_vertex) jc["via_vertex"] = spec.vertices[size_t(*cert.via_vertex)];
    if (cert.connecting_path) jc["connecting_path"] = path_json(f.graph, *cert.connecting_path);
    if (cert.theta_growth) jc["theta_growth"] = cert.theta_growth->to_string();
    if (cert.theta_isolated) jc["theta_isolated"] = cert.theta_isolated->to_string();
    if (cert.circuit_ratio) jc["circuit_ratio"] = cert.circuit_ratio->to_string();
    json checks = json::array();
    for (const auto& rec : cert.checks) checks.push_back(check_json(rec));
    jc["checks"] = checks;
    jc["assumptions"] = cert.assumptions;
    jc["notes"] = cert.notes;
    out["certificate"] = jc;
    if (verdict.extracted) {
        json maps = json::array();
        for (const auto& m : verdict.extracted->maps) {
            json jm;
            jm["ratio"] = m.ratio.to_string();
            jm["translation"] = m.translation.to_string();
            jm["circuit"] = path_json(f.graph, m.circuit);
            maps.push_back(jm);
        }
        out["extracted"] = {{"vertex", spec.vertices[size_t(verdict.extracted->vertex)]},
                            {"maps", maps}};
    }
    return out;
}

}  // namespace

std::string report_validate(const ProblemSpec& spec, const ReportMeta& meta,
                            const std::vector<std::string>& violations) {
    json doc = base_report("validate", spec, meta);
    doc["violations"] = violations;
    doc["ok"] = violations.empty();
    return doc.dump(2) + "\n";
}

std::string report_construct(const ProblemSpec& spec, const ReportMeta& meta, const GdIfs* f,
                             const SeparationReport* separation,
                             const std::vector<std::pair<std::string, std::string>>*
                                 numeric_lengths) {
    json doc = base_report("construct", spec, meta);
    if (f) doc["system"] = system_json(spec, *f);
    if (separation) doc["separation"] = separation_json(spec, *separation);
    if (numeric_lengths) {
        json jn = json::object();
        for (const auto& [name, enc] : *numeric_lengths) jn[name] = enc;
        doc["numeric_lengths"] = jn;
        doc["exact"] = false;
    } else {
        doc["exact"] = true;
    }
    return doc.dump(2) + "\n";
}

std::string report_classify(const ProblemSpec& spec, const ReportMeta& meta, const GdIfs& f,
                            const SeparationReport& separation,
                            const std::vector<Verdict>& verdicts) {
    json doc = base_report("classify", spec, meta);
    doc["system"] = system_json(spec, f);
    doc["separation"] = separation_json(spec, separation);
    json arr = json::array();
    for (const auto& v : verdicts) arr.push_back(verdict_json(spec, f, v));
    doc["verdicts"] = arr;
    return doc.dump(2) + "\n";
}

std::string report_gaps(const ProblemSpec& spec, const ReportMeta& meta, const GdIfs& f,
                        const std::string& vertex_name, const GapCatalog& catalog) {
    json doc = base_report("gaps", spec, meta);
    json jc;
    jc["vertex"] = vertex_name;
    jc["max_depth"] = catalog.max_depth;
    json entries = json::array();
    for (const auto& e : catalog.entries) {
        json je;
        je["length"] = e.length.to_string();
        je["depth"] = e.depth;
        if (!e.path.empty()) je["path"] = path_label(f.graph, e.path);
        if (e.gap_index >= 0) je["gap_index"] = e.gap_index + 1;
        entries.push_back(je);
    }
    jc["entries"] = entries;
    json distinct = json::array();
    for (const auto& m : catalog.distinct_values()) distinct.push_back(m.to_string());
    jc["distinct_values"] = distinct;
    doc["catalog"] = jc;
    return doc.dump(2) + "\n";
}

std::string report_extract(const ProblemSpec& spec, const ReportMeta& meta, const GdIfs& f,
                           const std::string& vertex_name, const StandardIfs& phi) {
    json doc = base_report("extract", spec, meta);
    json maps = json::array();
    for (const auto& m : phi.maps) {
        json jm;
        jm["ratio"] = m.ratio.to_string();
        jm["translation"] = m.translation.to_string();
        jm["circuit"] = path_label(f.graph, m.circuit);
        maps.push_back(jm);
    }
    doc["standard_ifs"] = {{"vertex", vertex_name}, {"maps", maps}};
    return doc.dump(2) + "\n";
}

std::string error_json(const std::string& type, const std::string& message) {
    json doc;
    doc["error"] = {{"type", type}, {"message", message}};
    return doc.dump() + "\n";
}

}  // namespace gdfractal
