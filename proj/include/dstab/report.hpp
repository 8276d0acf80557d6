#pragma once

#include <string>

#include "dstab/problem.hpp"
#include "dstab/sweep.hpp"

namespace dstab {

/// Echo of the inputs that shaped a run, stored alongside the results so a
/// report is self-describing.
struct RunEcho {
    std::string problem_name;
    std::size_t parameter_count = 0;
    Vec q0_used;
    bool q0_from_file = false;
    SweepConfig cfg;

    friend bool operator==(const RunEcho&, const RunEcho&) = default;
};

struct MarginReportDoc {
    RunEcho echo;
    SweepReport sweep;
};

/// Deterministic JSON: fixed field order, numbers at 17 significant digits,
/// infinities as the strings "inf"/"-inf". Wall time is intentionally not
/// serialized so identical runs produce byte-identical report files.
std::string serialize_margin_report(const MarginReportDoc& doc);
MarginReportDoc parse_margin_report(const std::string& text);

struct ClassicReportDoc {
    RunEcho echo;
    double eps_r = 0.0;
    ClassicReport report;
};

std::string serialize_classic_report(const ClassicReportDoc& doc);

std::string serialize_compare_report(const RunEcho& echo, double eps_r, const CompareReport& cmp);

/// "inf"-aware %.17g formatting shared by the JSON and CSV emitters.
std::string format_number(double v);

}  // namespace dstab
