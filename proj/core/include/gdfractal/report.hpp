#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdfractal/classify.hpp"
#include "gdfractal/gaps.hpp"
#include "gdfractal/spec_io.hpp"

namespace gdfractal {

std::string sha256_hex(std::string_view data);

/// Report assembly. Serialization is canonical: sorted keys, rationals in
/// lowest terms, monomials as sorted factor strings. Timing is injected only
/// on request so that default reports are byte-stable across runs.
struct ReportMeta {
    std::string tool_version;
    std::string spec_bytes;  // raw input, hashed into the report
    std::optional<double> timing_seconds;
};

std::string report_validate(const ProblemSpec& spec, const ReportMeta& meta,
                            const std::vector<std::string>& violations);

std::string report_construct(const ProblemSpec& spec, const ReportMeta& meta, const GdIfs* f,
                             const SeparationReport* separation,
                             const std::vector<std::pair<std::string, std::string>>*
                                 numeric_lengths /* vertex -> enclosure */);

std::string report_classify(const ProblemSpec& spec, const ReportMeta& meta, const GdIfs& f,
                            const SeparationReport& separation,
                            const std::vector<Verdict>& verdicts);

std::string report_gaps(const ProblemSpec& spec, const ReportMeta& meta, const GdIfs& f,
                        const std::string& vertex_name, const GapCatalog& catalog);

std::string report_extract(const ProblemSpec& spec, const ReportMeta& meta, const GdIfs& f,
                           const std::string& vertex_name, const StandardIfs& phi);

std::string error_json(const std::string& type, const std::string& message);

}  // namespace gdfractal
